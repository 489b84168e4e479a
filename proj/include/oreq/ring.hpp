#pragma once

/**
 * @file ring.hpp
 * @brief Exact arithmetic in small finite commutative rings.
 *
 * Every ring is stored as a set of Cayley tables over the indices
 * 0..size()-1. Index 0 is always the zero element. Supported constructions:
 *
 * - Z/m for 2 <= m <= 256 (index = residue)
 * - GF(p^k) = F_p[w]/(f) for a monic irreducible f (index = sum c_i p^i)
 * - finite products R_1 x ... x R_t (mixed radix, first factor most significant)
 * - quotients R/K by an ideal K (used to realize localizations)
 *
 * Tables make equality syntactic: two elements are equal iff their indices are.
 */

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "oreq/errors.hpp"

namespace oreq {

using Elem = std::uint16_t;

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

inline constexpr std::size_t kMaxRingSize = 256;

enum class RingKind { zmod, galois, product, quotient };

class Ring {
  struct Passkey {};

 public:
  // -- construction ---------------------------------------------------------

  static RingPtr zmod(int m) {
    if (m < 2 || static_cast<std::size_t>(m) > kMaxRingSize) {
      throw InputError("Z/m requires 2 <= m <= " + std::to_string(kMaxRingSize) + ", got m = " +
                       std::to_string(m));
    }
    auto r = std::make_shared<Ring>(Passkey{}, RingKind::zmod, static_cast<std::size_t>(m));
    r->modulus_ = m;
    r->key_ = "Z/" + std::to_string(m);
    for (std::size_t a = 0; a < r->n_; ++a) {
      for (std::size_t b = 0; b < r->n_; ++b) {
        r->add_[a * r->n_ + b] = static_cast<Elem>((a + b) % r->n_);
        r->mul_[a * r->n_ + b] = static_cast<Elem>((a * b) % r->n_);
      }
      r->names_[a] = std::to_string(a);
    }
    r->one_ = 1;
    r->finish();
    return r;
  }

  /// GF(p^k) as F_p[w]/(minpoly); minpoly lists coefficients from degree 0 up and must be monic of degree k.
  static RingPtr galois(int p, int k, std::vector<int> minpoly) {
    if (p < 2 || !is_prime(p)) throw InputError("galois: p = " + std::to_string(p) + " is not prime");
    if (k < 1) throw InputError("galois: k must be >= 1");
    std::size_t n = 1;
    for (int i = 0; i < k; ++i) {
      n *= static_cast<std::size_t>(p);
      if (n > kMaxRingSize) throw InputError("galois: p^k exceeds " + std::to_string(kMaxRingSize));
    }
    if (minpoly.size() != static_cast<std::size_t>(k) + 1) {
      throw InputError("galois: minimal polynomial must have k+1 = " + std::to_string(k + 1) + " coefficients");
    }
    for (auto& c : minpoly) c = ((c % p) + p) % p;
    if (minpoly.back() != 1) throw InputError("galois: minimal polynomial must be monic");

    auto r = std::make_shared<Ring>(Passkey{}, RingKind::galois, n);
    r->modulus_ = p;
    r->degree_ = k;
    r->minpoly_ = minpoly;
    r->key_ = "GF(" + std::to_string(p) + "^" + std::to_string(k) + ";";
    for (std::size_t i = 0; i < minpoly.size(); ++i) r->key_ += (i ? "," : "") + std::to_string(minpoly[i]);
    r->key_ += ")";

    auto digits = [&](std::size_t x) {
      std::vector<int> d(static_cast<std::size_t>(k));
      for (int i = 0; i < k; ++i) {
        d[static_cast<std::size_t>(i)] = static_cast<int>(x % static_cast<std::size_t>(p));
        x /= static_cast<std::size_t>(p);
      }
      return d;
    };
    auto index = [&](const std::vector<int>& d) {
      std::size_t x = 0;
      for (int i = k - 1; i >= 0; --i) x = x * static_cast<std::size_t>(p) + static_cast<std::size_t>(d[static_cast<std::size_t>(i)]);
      return static_cast<Elem>(x);
    };
    for (std::size_t a = 0; a < n; ++a) {
      auto da = digits(a);
      for (std::size_t b = 0; b < n; ++b) {
        auto db = digits(b);
        std::vector<int> s(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) s[static_cast<std::size_t>(i)] = (da[static_cast<std::size_t>(i)] + db[static_cast<std::size_t>(i)]) % p;
        r->add_[a * n + b] = index(s);

        std::vector<int> prod(static_cast<std::size_t>(2 * k), 0);
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j)
            prod[static_cast<std::size_t>(i + j)] =
                (prod[static_cast<std::size_t>(i + j)] + da[static_cast<std::size_t>(i)] * db[static_cast<std::size_t>(j)]) % p;
        // reduce w^t for t >= k using w^k = -(m_0 + ... + m_{k-1} w^{k-1})
        for (int t = 2 * k - 1; t >= k; --t) {
          int c = prod[static_cast<std::size_t>(t)];
          if (c == 0) continue;
          prod[static_cast<std::size_t>(t)] = 0;
          for (int i = 0; i < k; ++i) {
            auto& slot = prod[static_cast<std::size_t>(t - k + i)];
            slot = ((slot - c * minpoly[static_cast<std::size_t>(i)]) % p + p) % p;
          }
        }
        prod.resize(static_cast<std::size_t>(k));
        r->mul_[a * n + b] = index(prod);
      }
      r->names_[a] = galois_name(da);
    }
    r->one_ = 1;
    r->finish();
    for (std::size_t a = 1; a < n; ++a) {
      if (!r->is_unit(static_cast<Elem>(a))) {
        throw InputError("galois: minimal polynomial is reducible over F_" + std::to_string(p));
      }
    }
    return r;
  }

  static RingPtr product(std::vector<RingPtr> factors) {
    if (factors.size() < 2) throw InputError("product: need at least two factors");
    std::size_t n = 1;
    for (const auto& f : factors) {
      if (!f) throw InputError("product: null factor");
      n *= f->size();
      if (n > kMaxRingSize) throw InputError("product: ring size exceeds " + std::to_string(kMaxRingSize));
    }
    auto r = std::make_shared<Ring>(Passkey{}, RingKind::product, n);
    r->factors_ = factors;
    r->key_ = "(";
    for (std::size_t i = 0; i < factors.size(); ++i) r->key_ += (i ? " x " : "") + factors[i]->key();
    r->key_ += ")";
    for (std::size_t a = 0; a < n; ++a) {
      auto ca = r->components(static_cast<Elem>(a));
      for (std::size_t b = 0; b < n; ++b) {
        auto cb = r->components(static_cast<Elem>(b));
        std::vector<Elem> s(factors.size()), m(factors.size());
        for (std::size_t i = 0; i < factors.size(); ++i) {
          s[i] = factors[i]->add(ca[i], cb[i]);
          m[i] = factors[i]->mul(ca[i], cb[i]);
        }
        r->add_[a * n + b] = r->from_components(s);
        r->mul_[a * n + b] = r->from_components(m);
      }
      std::string name = "[";
      for (std::size_t i = 0; i < factors.size(); ++i) name += (i ? "," : "") + factors[i]->name(ca[i]);
      r->names_[a] = name + "]";
    }
    std::vector<Elem> ones;
    for (const auto& f : factors) ones.push_back(f->one());
    r->one_ = r->from_components(ones);
    r->finish();
    return r;
  }

  /// R/K for an ideal K given by its element list. Class indices follow the
  /// order of their smallest representative, so the class of 0 is index 0.
  static RingPtr quotient(const RingPtr& base, const std::vector<Elem>& ideal) {
    if (!base) throw InputError("quotient: null base ring");
    if (!base->is_ideal(ideal)) throw InputError("quotient: element list is not an ideal");
    const std::size_t bn = base->size();
    std::vector<int> cls(bn, -1);
    std::vector<Elem> reps;
    for (std::size_t a = 0; a < bn; ++a) {
      if (cls[a] >= 0) continue;
      int id = static_cast<int>(reps.size());
      reps.push_back(static_cast<Elem>(a));
      for (Elem k : ideal) cls[base->add(static_cast<Elem>(a), k)] = id;
    }
    const std::size_t n = reps.size();
    auto r = std::make_shared<Ring>(Passkey{}, RingKind::quotient, n);
    r->base_ = base;
    r->class_of_.assign(cls.begin(), cls.end());
    r->reps_ = reps;
    std::vector<Elem> sorted = ideal;
    std::sort(sorted.begin(), sorted.end());
    r->key_ = base->key() + "/{";
    for (std::size_t i = 0; i < sorted.size(); ++i) r->key_ += (i ? "," : "") + base->name(sorted[i]);
    r->key_ += "}";
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        r->add_[a * n + b] = r->class_of_[base->add(reps[a], reps[b])];
        r->mul_[a * n + b] = r->class_of_[base->mul(reps[a], reps[b])];
      }
      r->names_[a] = base->name(reps[a]);
    }
    r->one_ = r->class_of_[base->one()];
    if (n == 1) throw InputError("quotient: ideal is the whole ring");
    r->finish();
    return r;
  }

  Ring(Passkey, RingKind kind, std::size_t n)
      : kind_(kind), n_(n), add_(n * n), mul_(n * n), neg_(n), inv_(n, kNone), div_(n * n, kNone), names_(n) {}

  // -- descriptors ------------------------------------------------------------

  RingKind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return n_; }
  /// Structural identity; rings with equal keys have identical tables.
  const std::string& key() const noexcept { return key_; }
  int modulus() const noexcept { return modulus_; }
  int extension_degree() const noexcept { return degree_; }
  const std::vector<int>& minimal_polynomial() const noexcept { return minpoly_; }
  const std::vector<RingPtr>& factors() const noexcept { return factors_; }
  const RingPtr& quotient_base() const noexcept { return base_; }
  Elem class_of(Elem base_element) const { return class_of_.at(base_element); }
  Elem representative(Elem x) const { return reps_.at(x); }
  int characteristic() const noexcept { return characteristic_; }
  bool is_field() const noexcept { return units_ == n_ - 1; }

  // -- arithmetic -------------------------------------------------------------

  static constexpr Elem zero() noexcept { return 0; }
  Elem one() const noexcept { return one_; }
  Elem add(Elem a, Elem b) const { return add_[a * n_ + b]; }
  Elem mul(Elem a, Elem b) const { return mul_[a * n_ + b]; }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  bool is_unit(Elem a) const { return inv_[a] != kNone; }
  Elem inv(Elem a) const {
    if (!is_unit(a)) throw PreconditionError("inversion of non-unit " + name(a) + " in " + key_);
    return inv_[a];
  }
  bool is_idempotent(Elem a) const { return mul(a, a) == a; }

  /// Some c with a*c == b, if one exists.
  std::optional<Elem> divide(Elem b, Elem a) const {
    Elem c = div_[a * n_ + b];
    if (c == kNone) return std::nullopt;
    return c;
  }
  bool divides(Elem a, Elem b) const { return div_[a * n_ + b] != kNone; }
  /// |aR|; in a chain ring a larger principal ideal means a smaller valuation.
  std::size_t principal_ideal_size(Elem a) const { return ideal_size_[a]; }

  Elem pow(Elem a, unsigned long long e) const {
    Elem result = one_, base = a;
    while (e) {
      if (e & 1ULL) result = mul(result, base);
      base = mul(base, base);
      e >>= 1ULL;
    }
    return result;
  }

  /// Image of the integer z under Z -> R.
  Elem from_int(long long z) const {
    long long c = characteristic_;
    long long r = ((z % c) + c) % c;
    Elem acc = 0;
    for (long long i = 0; i < r; ++i) acc = add(acc, one_);
    return acc;
  }

  // -- structure used by the linear-algebra kernel ---------------------------

  /// Primitive orthogonal idempotents e_1..e_t with R = e_1 R x ... x e_t R (each factor local).
  const std::vector<Elem>& local_idempotents() const noexcept { return local_idempotents_; }

  bool is_ideal(const std::vector<Elem>& set) const {
    std::vector<char> in(n_, 0);
    for (Elem x : set) {
      if (x >= n_) return false;
      in[x] = 1;
    }
    if (!in[0]) return false;
    for (Elem a : set) {
      for (Elem b : set)
        if (!in[add(a, b)]) return false;
      for (std::size_t r = 0; r < n_; ++r)
        if (!in[mul(static_cast<Elem>(r), a)]) return false;
    }
    return true;
  }

  // -- product components -------------------------------------------------------

  std::vector<Elem> components(Elem x) const {
    std::vector<Elem> out(factors_.size());
    std::size_t v = x;
    for (std::size_t i = factors_.size(); i-- > 0;) {
      out[i] = static_cast<Elem>(v % factors_[i]->size());
      v /= factors_[i]->size();
    }
    return out;
  }
  Elem from_components(const std::vector<Elem>& c) const {
    if (c.size() != factors_.size()) throw InputError("product literal has wrong arity");
    std::size_t v = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) v = v * factors_[i]->size() + c[i];
    return static_cast<Elem>(v);
  }

  // -- text -------------------------------------------------------------------

  const std::string& name(Elem x) const { return names_.at(x); }

  /// Parses a literal of this ring: an integer, a GF literal such as "w^2+w+1",
  /// or a product tuple "[a,b]". Surrounding parentheses are allowed.
  Elem parse(std::string_view text) const {
    std::size_t pos = 0;
    Elem v = parse_literal(text, pos);
    skip_ws(text, pos);
    if (pos != text.size()) throw ParseError("unexpected character '" + std::string(1, text[pos]) + "' in literal", pos);
    return v;
  }

  /// Parses a literal starting at pos, advancing pos past it.
  Elem parse_literal(std::string_view text, std::size_t& pos) const {
    skip_ws(text, pos);
    if (pos < text.size() && text[pos] == '(') {
      ++pos;
      Elem v = parse_literal(text, pos);
      skip_ws(text, pos);
      if (pos >= text.size() || text[pos] != ')') throw ParseError("expected ')'", pos);
      ++pos;
      return v;
    }
    switch (kind_) {
      case RingKind::product: return parse_tuple(text, pos);
      case RingKind::galois: return parse_galois(text, pos);
      case RingKind::quotient: return class_of_[base_->parse_literal(text, pos)];
      case RingKind::zmod: break;
    }
    return parse_signed_integer(text, pos);
  }

 private:
  static constexpr Elem kNone = 0xFFFF;

  static bool is_prime(int p) {
    for (int d = 2; d * d <= p; ++d)
      if (p % d == 0) return false;
    return p >= 2;
  }

  static std::string galois_name(const std::vector<int>& d) {
    std::string out;
    for (std::size_t i = d.size(); i-- > 0;) {
      if (d[i] == 0) continue;
      if (!out.empty()) out += "+";
      if (i == 0) {
        out += std::to_string(d[i]);
      } else {
        if (d[i] != 1) out += std::to_string(d[i]) + "*";
        out += "w";
        if (i > 1) out += "^" + std::to_string(i);
      }
    }
    return out.empty() ? "0" : out;
  }

  static void skip_ws(std::string_view t, std::size_t& pos) {
    while (pos < t.size() && std::isspace(static_cast<unsigned char>(t[pos]))) ++pos;
  }

  static long long parse_unsigned(std::string_view t, std::size_t& pos) {
    skip_ws(t, pos);
    std::size_t start = pos;
    while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) ++pos;
    if (start == pos) throw ParseError("expected integer", start);
    long long v = 0;
    auto [ptr, ec] = std::from_chars(t.data() + start, t.data() + pos, v);
    if (ec != std::errc{}) throw ParseError("integer literal out of range", start);
    return v;
  }

  Elem parse_signed_integer(std::string_view t, std::size_t& pos) const {
    skip_ws(t, pos);
    bool negative = false;
    if (pos < t.size() && t[pos] == '-') {
      negative = true;
      ++pos;
    }
    long long v = parse_unsigned(t, pos);
    return from_int(negative ? -v : v);
  }

  Elem parse_tuple(std::string_view t, std::size_t& pos) const {
    skip_ws(t, pos);
    if (pos < t.size() && (std::isdigit(static_cast<unsigned char>(t[pos])) || t[pos] == '-')) {
      return parse_signed_integer(t, pos);
    }
    if (pos >= t.size() || t[pos] != '[') throw ParseError("expected '[' to start a product literal", pos);
    ++pos;
    std::vector<Elem> comps;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (i > 0) {
        skip_ws(t, pos);
        if (pos >= t.size() || t[pos] != ',') throw ParseError("expected ',' in product literal", pos);
        ++pos;
      }
      comps.push_back(factors_[i]->parse_literal(t, pos));
    }
    skip_ws(t, pos);
    if (pos >= t.size() || t[pos] != ']') throw ParseError("expected ']' closing product literal", pos);
    ++pos;
    return from_components(comps);
  }

  // gf-literal := gf-term {'+' gf-term};  gf-term := [int ['*']] 'w' ['^' int] | int
  // A '+' only continues the literal when it is followed by another gf-term, so
  // "w + x1" inside a polynomial stops after "w".
  Elem parse_galois(std::string_view t, std::size_t& pos) const {
    Elem acc = parse_galois_term(t, pos);
    for (;;) {
      std::size_t save = pos;
      skip_ws(t, pos);
      if (pos >= t.size() || t[pos] != '+') {
        pos = save;
        break;
      }
      std::size_t after = pos + 1;
      skip_ws(t, after);
      if (after >= t.size() || !(std::isdigit(static_cast<unsigned char>(t[after])) || t[after] == 'w')) {
        pos = save;
        break;
      }
      std::size_t probe = after;
      Elem term;
      try {
        term = parse_galois_term(t, probe);
      } catch (const ParseError&) {
        pos = save;
        break;
      }
      // a bare integer followed by '*x' belongs to the polynomial, not to us
      std::size_t look = probe;
      skip_ws(t, look);
      if (look < t.size() && t[look] == '*') {
        pos = save;
        break;
      }
      acc = add(acc, term);
      pos = probe;
    }
    return acc;
  }

  Elem parse_galois_term(std::string_view t, std::size_t& pos) const {
    skip_ws(t, pos);
    Elem coeff = one_;
    bool have_coeff = false;
    if (pos < t.size() && (std::isdigit(static_cast<unsigned char>(t[pos])) || t[pos] == '-')) {
      coeff = parse_signed_integer(t, pos);
      have_coeff = true;
      std::size_t look = pos;
      skip_ws(t, look);
      if (look + 1 < t.size() && t[look] == '*') {
        std::size_t after = look + 1;
        skip_ws(t, after);
        if (after < t.size() && t[after] == 'w') pos = after;
      } else if (look < t.size() && t[look] == 'w') {
        pos = look;
      }
    }
    skip_ws(t, pos);
    if (pos < t.size() && t[pos] == 'w') {
      ++pos;
      unsigned long long e = 1;
      std::size_t look = pos;
      skip_ws(t, look);
      if (look < t.size() && t[look] == '^') {
        pos = look + 1;
        e = static_cast<unsigned long long>(parse_unsigned(t, pos));
      }
      Elem w = degree_ >= 2 ? static_cast<Elem>(modulus_) : static_cast<Elem>(0);
      if (degree_ < 2) {
        // GF(p^1): w is the root of a linear minimal polynomial, i.e. -m_0
        w = from_int(-minpoly_[0]);
      }
      return mul(coeff, pow(w, e));
    }
    if (!have_coeff) throw ParseError("expected field literal", pos);
    return coeff;
  }

  void finish() {
    for (std::size_t a = 0; a < n_; ++a) {
      neg_[a] = kNone;
      for (std::size_t b = 0; b < n_; ++b) {
        if (add(static_cast<Elem>(a), static_cast<Elem>(b)) == 0) {
          neg_[a] = static_cast<Elem>(b);
          break;
        }
      }
      for (std::size_t c = 0; c < n_; ++c) {
        Elem prod = mul(static_cast<Elem>(a), static_cast<Elem>(c));
        if (div_[a * n_ + prod] == kNone) div_[a * n_ + prod] = static_cast<Elem>(c);
        if (prod == one_ && inv_[a] == kNone) inv_[a] = static_cast<Elem>(c);
      }
    }
    ideal_size_.assign(n_, 0);
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = 0; b < n_; ++b)
        if (div_[a * n_ + b] != kNone) ++ideal_size_[a];
    units_ = static_cast<std::size_t>(std::count_if(inv_.begin(), inv_.end(), [](Elem e) { return e != kNone; }));
    characteristic_ = 1;
    for (Elem acc = one_; acc != 0; acc = add(acc, one_)) ++characteristic_;

    std::vector<Elem> idem;
    for (std::size_t a = 1; a < n_; ++a)
      if (is_idempotent(static_cast<Elem>(a))) idem.push_back(static_cast<Elem>(a));
    for (Elem e : idem) {
      bool primitive = true;
      for (Elem f : idem) {
        Elem fe = mul(f, e);
        if (fe != 0 && fe != e) {
          primitive = false;
          break;
        }
      }
      if (primitive) local_idempotents_.push_back(e);
    }
  }

  RingKind kind_;
  std::size_t n_;
  std::vector<Elem> add_, mul_, neg_, inv_, div_;
  std::vector<std::string> names_;
  std::vector<Elem> local_idempotents_;
  std::vector<std::size_t> ideal_size_;
  std::string key_;
  Elem one_ = 1;
  std::size_t units_ = 0;
  int characteristic_ = 0;
  int modulus_ = 0;
  int degree_ = 0;
  std::vector<int> minpoly_;
  std::vector<RingPtr> factors_;
  RingPtr base_;
  std::vector<Elem> class_of_;
  std::vector<Elem> reps_;
};

inline bool same_ring(const Ring& a, const Ring& b) { return &a == &b || a.key() == b.key(); }
inline bool same_ring(const RingPtr& a, const RingPtr& b) { return a && b && same_ring(*a, *b); }

/// An element bound to its ring. Arithmetic between elements of different rings throws.
class RingElement {
 public:
  RingElement(RingPtr ring, Elem value) : ring_(std::move(ring)), value_(value) {
    if (!ring_ || value_ >= ring_->size()) throw InputError("ring element out of range");
  }
  static RingElement parse(const RingPtr& ring, std::string_view text) { return {ring, ring->parse(text)}; }

  const RingPtr& ring() const noexcept { return ring_; }
  Elem value() const noexcept { return value_; }
  std::string to_string() const { return ring_->name(value_); }

  bool is_unit() const { return ring_->is_unit(value_); }
  RingElement inverse() const { return {ring_, ring_->inv(value_)}; }
  RingElement operator-() const { return {ring_, ring_->neg(value_)}; }

  friend RingElement operator+(const RingElement& a, const RingElement& b) {
    check(a, b);
    return {a.ring_, a.ring_->add(a.value_, b.value_)};
  }
  friend RingElement operator-(const RingElement& a, const RingElement& b) {
    check(a, b);
    return {a.ring_, a.ring_->sub(a.value_, b.value_)};
  }
  friend RingElement operator*(const RingElement& a, const RingElement& b) {
    check(a, b);
    return {a.ring_, a.ring_->mul(a.value_, b.value_)};
  }
  friend bool operator==(const RingElement& a, const RingElement& b) {
    return same_ring(a.ring_, b.ring_) && a.value_ == b.value_;
  }

 private:
  static void check(const RingElement& a, const RingElement& b) {
    if (!same_ring(a.ring_, b.ring_)) {
      throw InputError("descriptor mismatch: " + a.ring_->key() + " vs " + b.ring_->key());
    }
  }

  RingPtr ring_;
  Elem value_;
};

}  // namespace oreq
