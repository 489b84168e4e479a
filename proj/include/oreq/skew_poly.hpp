#pragma once

/**
 * @file skew_poly.hpp
 * @brief Elements of A = R[x_1,...,x_n; sigma] in left normal form.
 *
 * The variables commute with each other and satisfy x_i r = sigma(r) x_i, so
 * every element has a unique expression sum_alpha c_alpha x^alpha with the
 * coefficients on the left, and
 *
 *     (a x^alpha)(b x^beta) = a sigma^{|alpha|}(b) x^{alpha+beta}.
 *
 * Terms are kept sorted by graded-lexicographic monomial order with zero
 * coefficients dropped, so equality of SkewPoly is equality of term lists.
 */

#include <algorithm>
#include <compare>
#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "oreq/automorphism.hpp"
#include "oreq/errors.hpp"
#include "oreq/localization.hpp"
#include "oreq/ring.hpp"

namespace oreq {

/// Degree of the zero polynomial.
inline constexpr int kNegInfDegree = std::numeric_limits<int>::min();

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {
    degree_ = std::accumulate(exps_.begin(), exps_.end(), 0U);
  }

  static Monomial variable(std::size_t nvars, std::size_t i, std::uint32_t power = 1) {
    Monomial m(nvars);
    m.exps_.at(i) = power;
    m.degree_ = power;
    return m;
  }

  std::size_t size() const noexcept { return exps_.size(); }
  std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
  const std::vector<std::uint32_t>& exponents() const noexcept { return exps_; }
  /// |alpha|, the total degree.
  std::uint32_t degree() const noexcept { return degree_; }
  bool is_one() const noexcept { return degree_ == 0; }

  friend Monomial operator+(const Monomial& a, const Monomial& b) {
    if (a.size() != b.size()) throw InputError("monomials over different variable counts");
    Monomial m(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) m.exps_[i] = a.exps_[i] + b.exps_[i];
    m.degree_ = a.degree_ + b.degree_;
    return m;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }

  /// Graded lexicographic: total degree first, then x_1 > x_2 > ... .
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    if (auto c = a.degree_ <=> b.degree_; c != 0) return c;
    return a.exps_ <=> b.exps_;
  }

 private:
  std::vector<std::uint32_t> exps_;
  std::uint32_t degree_ = 0;
};

/// All monomials in n variables with total degree <= d, in increasing grlex order.
inline std::vector<Monomial> monomials_up_to(std::size_t nvars, int max_degree) {
  std::vector<Monomial> out;
  if (max_degree < 0) return out;
  std::vector<std::uint32_t> e(nvars, 0);
  for (int d = 0; d <= max_degree; ++d) {
    std::vector<Monomial> layer;
    // enumerate compositions of d into nvars parts
    auto rec = [&](auto&& self, std::size_t i, std::uint32_t left) -> void {
      if (i + 1 == nvars || nvars == 0) {
        if (nvars > 0) e[i] = left;
        if (nvars > 0 || left == 0) layer.emplace_back(e);
        return;
      }
      for (std::uint32_t k = 0; k <= left; ++k) {
        e[i] = k;
        self(self, i + 1, left - k);
      }
    };
    rec(rec, 0, static_cast<std::uint32_t>(d));
    std::sort(layer.begin(), layer.end());
    for (auto& m : layer) out.push_back(std::move(m));
  }
  return out;
}

/// The ring A = R[x_1..x_n; sigma]: coefficient ring, automorphism, variable count.
struct Ambient {
  Automorphism sigma;
  std::size_t nvars;

  const RingPtr& ring() const noexcept { return sigma.ring(); }

  friend bool operator==(const Ambient& a, const Ambient& b) { return a.nvars == b.nvars && a.sigma == b.sigma; }
};

using AmbientPtr = std::shared_ptr<const Ambient>;

inline AmbientPtr make_ambient(const Automorphism& sigma, std::size_t nvars) {
  return std::make_shared<const Ambient>(Ambient{sigma, nvars});
}

inline bool same_ambient(const AmbientPtr& a, const AmbientPtr& b) { return a == b || (a && b && *a == *b); }

class SkewPoly {
 public:
  using Term = std::pair<Monomial, Elem>;

  explicit SkewPoly(AmbientPtr ambient) : ambient_(std::move(ambient)) {
    if (!ambient_) throw InputError("null ambient");
  }

  static SkewPoly constant(const AmbientPtr& ambient, Elem c) {
    SkewPoly p(ambient);
    if (c != 0) p.terms_.emplace_back(Monomial(ambient->nvars), c);
    return p;
  }
  static SkewPoly one(const AmbientPtr& ambient) { return constant(ambient, ambient->ring()->one()); }
  static SkewPoly term(const AmbientPtr& ambient, Elem c, Monomial m) {
    if (m.size() != ambient->nvars) throw InputError("monomial has wrong variable count");
    SkewPoly p(ambient);
    if (c != 0) p.terms_.emplace_back(std::move(m), c);
    return p;
  }
  /// x_i (0-based index).
  static SkewPoly variable(const AmbientPtr& ambient, std::size_t i) {
    if (i >= ambient->nvars) throw InputError("variable index out of range");
    return term(ambient, ambient->ring()->one(), Monomial::variable(ambient->nvars, i));
  }
  /// Normalizes an arbitrary term list: sorts, merges equal monomials, drops zeros.
  static SkewPoly from_terms(const AmbientPtr& ambient, std::vector<Term> terms) {
    SkewPoly p(ambient);
    for (const auto& t : terms)
      if (t.first.size() != ambient->nvars) throw InputError("monomial has wrong variable count");
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
    const Ring& R = *ambient->ring();
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().first == t.first) {
        p.terms_.back().second = R.add(p.terms_.back().second, t.second);
      } else {
        p.terms_.push_back(std::move(t));
      }
    }
    std::erase_if(p.terms_, [](const Term& t) { return t.second == 0; });
    return p;
  }

  const AmbientPtr& ambient() const noexcept { return ambient_; }
  const Ring& ring() const noexcept { return *ambient_->ring(); }
  const Automorphism& sigma() const noexcept { return ambient_->sigma; }
  std::size_t nvars() const noexcept { return ambient_->nvars; }
  /// Terms in increasing grlex order, all coefficients nonzero.
  const std::vector<Term>& terms() const noexcept { return terms_; }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }
  int degree() const noexcept { return terms_.empty() ? kNegInfDegree : static_cast<int>(terms_.back().first.degree()); }

  /// Left coefficient of x^alpha.
  Elem coefficient(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [](const Term& t, const Monomial& k) { return t.first < k; });
    return (it != terms_.end() && it->first == m) ? it->second : Elem{0};
  }
  /// Right coefficient c of x^alpha in the form x^alpha c, i.e. sigma^{-|alpha|}(left coefficient).
  Elem right_coefficient(const Monomial& m) const { return sigma().apply(coefficient(m), -static_cast<long long>(m.degree())); }

  SkewPoly operator-() const {
    SkewPoly p = *this;
    for (auto& t : p.terms_) t.second = ring().neg(t.second);
    return p;
  }

  friend SkewPoly operator+(const SkewPoly& p, const SkewPoly& q) { return p.merge(q, false); }
  friend SkewPoly operator-(const SkewPoly& p, const SkewPoly& q) { return p.merge(q, true); }
  friend SkewPoly operator*(const SkewPoly& p, const SkewPoly& q) { return twisted_mul(p, q); }
  SkewPoly& operator+=(const SkewPoly& q) { return *this = *this + q; }
  SkewPoly& operator-=(const SkewPoly& q) { return *this = *this - q; }
  SkewPoly& operator*=(const SkewPoly& q) { return *this = twisted_mul(*this, q); }

  friend bool operator==(const SkewPoly& p, const SkewPoly& q) {
    return same_ambient(p.ambient_, q.ambient_) && p.terms_ == q.terms_;
  }

  /// c * p for a constant c (multiplication on the left needs no twist).
  SkewPoly left_scale(Elem c) const {
    SkewPoly p(ambient_);
    for (const auto& t : terms_) {
      Elem v = ring().mul(c, t.second);
      if (v != 0) p.terms_.emplace_back(t.first, v);
    }
    return p;
  }

  friend SkewPoly twisted_mul(const SkewPoly& p, const SkewPoly& q) {
    check_ambient(p, q);
    if (p.is_zero() || q.is_zero()) return SkewPoly(p.ambient_);
    const Ring& R = p.ring();
    const Automorphism& s = p.sigma();
    std::vector<Term> raw;
    raw.reserve(p.terms_.size() * q.terms_.size());
    for (const auto& [ma, a] : p.terms_) {
      for (const auto& [mb, b] : q.terms_) {
        Elem c = R.mul(a, s.apply(b, ma.degree()));
        if (c != 0) raw.emplace_back(ma + mb, c);
      }
    }
    return from_terms(p.ambient_, std::move(raw));
  }

 private:
  static void check_ambient(const SkewPoly& p, const SkewPoly& q) {
    if (!same_ambient(p.ambient_, q.ambient_)) throw InputError("skew polynomials over different ambient rings");
  }

  SkewPoly merge(const SkewPoly& q, bool subtract) const {
    check_ambient(*this, q);
    const Ring& R = ring();
    SkewPoly out(ambient_);
    out.terms_.reserve(terms_.size() + q.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < q.terms_.size()) {
      if (j == q.terms_.size() || (i < terms_.size() && terms_[i].first < q.terms_[j].first)) {
        out.terms_.push_back(terms_[i++]);
      } else if (i == terms_.size() || q.terms_[j].first < terms_[i].first) {
        Elem c = subtract ? R.neg(q.terms_[j].second) : q.terms_[j].second;
        out.terms_.emplace_back(q.terms_[j++].first, c);
      } else {
        Elem c = subtract ? R.sub(terms_[i].second, q.terms_[j].second) : R.add(terms_[i].second, q.terms_[j].second);
        if (c != 0) out.terms_.emplace_back(terms_[i].first, c);
        ++i;
        ++j;
      }
    }
    return out;
  }

  AmbientPtr ambient_;
  std::vector<Term> terms_;
};

/// p(0): the coefficient of the zero monomial.
inline Elem const_term(const SkewPoly& p) {
  if (p.is_zero() || !p.terms().front().first.is_one()) return 0;
  return p.terms().front().second;
}

/// s sigma(s) ... sigma^{k-1}(s); the scalar picked up by (s x)^alpha with |alpha| = k.
inline Elem twisted_norm(const Automorphism& sigma, Elem s, std::uint32_t k) {
  const Ring& R = *sigma.ring();
  Elem acc = R.one();
  for (std::uint32_t j = 0; j < k; ++j) acc = R.mul(acc, sigma.apply(s, j));
  return acc;
}

/// p(s x_1, ..., s x_n): a x^alpha -> a s sigma(s) ... sigma^{|alpha|-1}(s) x^alpha.
inline SkewPoly scale_subst(const SkewPoly& p, Elem s) {
  const Ring& R = p.ring();
  std::vector<SkewPoly::Term> out;
  for (const auto& [m, a] : p.terms()) out.emplace_back(m, R.mul(a, twisted_norm(p.sigma(), s, m.degree())));
  return SkewPoly::from_terms(p.ambient(), std::move(out));
}

/// Ambient for shift_subst: same R and sigma, 2n variables x_1..x_n, y_1..y_n = x_{n+1}..x_{2n}.
inline AmbientPtr shifted_ambient(const AmbientPtr& a) { return make_ambient(a->sigma, 2 * a->nvars); }

/// Embeds p over n variables into the ambient with more variables (x_i -> x_i).
inline SkewPoly extend_variables(const SkewPoly& p, const AmbientPtr& target) {
  if (target->nvars < p.nvars() || !(target->sigma == p.sigma())) throw InputError("incompatible target ambient");
  std::vector<SkewPoly::Term> out;
  for (const auto& [m, a] : p.terms()) {
    auto e = m.exponents();
    e.resize(target->nvars, 0);
    out.emplace_back(Monomial(std::move(e)), a);
  }
  return SkewPoly::from_terms(target, std::move(out));
}

/// p(x_1 + y_1, ..., x_n + y_n) in R[x_1..x_n, y_1..y_n; sigma].
inline SkewPoly shift_subst(const SkewPoly& p) {
  const std::size_t n = p.nvars();
  auto target = shifted_ambient(p.ambient());
  std::vector<SkewPoly> shifted;
  for (std::size_t i = 0; i < n; ++i)
    shifted.push_back(SkewPoly::variable(target, i) + SkewPoly::variable(target, n + i));
  SkewPoly result(target);
  for (const auto& [m, a] : p.terms()) {
    SkewPoly t = SkewPoly::constant(target, a);
    for (std::size_t i = 0; i < n; ++i)
      for (std::uint32_t k = 0; k < m[i]; ++k) t = t * shifted[i];
    result += t;
  }
  return result;
}

/// Sets the trailing variables of a 2n-variable polynomial to zero, returning a polynomial in the first n.
inline SkewPoly restrict_to_leading(const SkewPoly& p, const AmbientPtr& target) {
  std::vector<SkewPoly::Term> out;
  for (const auto& [m, a] : p.terms()) {
    bool killed = false;
    for (std::size_t i = target->nvars; i < m.size(); ++i) killed = killed || m[i] != 0;
    if (killed) continue;
    std::vector<std::uint32_t> e(m.exponents().begin(), m.exponents().begin() + static_cast<std::ptrdiff_t>(target->nvars));
    out.emplace_back(Monomial(std::move(e)), a);
  }
  return SkewPoly::from_terms(target, std::move(out));
}

/// Termwise image under a coefficient homomorphism h with h o sigma = sigma' o h.
inline SkewPoly map_coeffs(const SkewPoly& p, const RingHom& h, const AmbientPtr& target) {
  if (!same_ring(h.source(), p.ambient()->ring()) || !same_ring(h.target(), target->ring())) {
    throw InputError("homomorphism does not match the coefficient rings");
  }
  if (target->nvars != p.nvars()) throw InputError("target ambient has a different variable count");
  if (!h.compatible(p.sigma(), target->sigma)) {
    throw PreconditionError("coefficient homomorphism is not compatible with the automorphisms");
  }
  std::vector<SkewPoly::Term> out;
  for (const auto& [m, a] : p.terms()) out.emplace_back(m, h(a));
  return SkewPoly::from_terms(target, std::move(out));
}

/// Substitutes sigma-fixed constants f_i for x_i. Evaluation at 0 agrees with
/// const_term. The result is multiplicative in p only when each f_i also
/// satisfies f_i (r - sigma(r)) = 0 for all r; see evaluation_is_multiplicative.
inline Elem eval_central(const SkewPoly& p, const std::vector<Elem>& point) {
  const Ring& R = p.ring();
  if (point.size() != p.nvars()) throw InputError("evaluation point has wrong length");
  for (Elem f : point) {
    if (f >= R.size()) throw InputError("evaluation value out of range");
    if (p.sigma().apply(f) != f) throw PreconditionError("substitution value " + R.name(f) + " is not sigma-fixed");
  }
  Elem acc = 0;
  for (const auto& [m, a] : p.terms()) {
    Elem v = a;
    for (std::size_t i = 0; i < m.size(); ++i) v = R.mul(v, R.pow(point[i], m[i]));
    acc = R.add(acc, v);
  }
  return acc;
}

/// True when x_i -> f_i respects x_i r = sigma(r) x_i, i.e. f_i r = sigma(r) f_i for every r.
inline bool evaluation_is_multiplicative(const Automorphism& sigma, const std::vector<Elem>& point) {
  const Ring& R = *sigma.ring();
  for (Elem f : point)
    for (std::size_t r = 0; r < R.size(); ++r) {
      Elem e = static_cast<Elem>(r);
      if (R.mul(f, e) != R.mul(sigma.apply(e), f)) return false;
    }
  return true;
}

}  // namespace oreq
