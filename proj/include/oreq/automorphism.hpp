#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "oreq/errors.hpp"
#include "oreq/ring.hpp"

namespace oreq {

/// A ring automorphism sigma of a finite ring, stored as a permutation of element indices.
///
/// Construction verifies bijectivity and the homomorphism laws on every pair,
/// so the order is always known exactly (lcm of the cycle lengths). All powers
/// sigma^k, 0 <= k < order, are tabulated up front.
class Automorphism {
 public:
  static Automorphism identity(const RingPtr& ring) {
    std::vector<Elem> map(ring->size());
    std::iota(map.begin(), map.end(), Elem{0});
    return Automorphism(ring, std::move(map), "identity");
  }

  /// a -> a^(p^e) where p is the characteristic. Requires a field or a ring
  /// in which this map is an automorphism (checked).
  static Automorphism frobenius(const RingPtr& ring, int e) {
    if (e < 0) throw InputError("frobenius exponent must be >= 0");
    unsigned long long q = 1;
    for (int i = 0; i < e; ++i) q *= static_cast<unsigned long long>(ring->characteristic());
    std::vector<Elem> map(ring->size());
    for (std::size_t a = 0; a < ring->size(); ++a) map[a] = ring->pow(static_cast<Elem>(a), q);
    return Automorphism(ring, std::move(map), "frobenius^" + std::to_string(e));
  }

  /// Componentwise automorphism of a product ring, with optional factor permutation:
  /// sigma(r)_i = components[i](r_{perm[i]}). Factors i and perm[i] must coincide.
  static Automorphism product(const RingPtr& ring, const std::vector<Automorphism>& components,
                              std::vector<int> perm = {}) {
    const auto& factors = ring->factors();
    if (ring->kind() != RingKind::product) throw InputError("product automorphism on a non-product ring");
    if (components.size() != factors.size()) throw InputError("need one component automorphism per factor");
    if (perm.empty()) {
      perm.resize(factors.size());
      std::iota(perm.begin(), perm.end(), 0);
    }
    if (perm.size() != factors.size()) throw InputError("swap permutation has wrong length");
    std::vector<char> seen(perm.size(), 0);
    for (std::size_t i = 0; i < perm.size(); ++i) {
      if (perm[i] < 0 || static_cast<std::size_t>(perm[i]) >= perm.size() || seen[static_cast<std::size_t>(perm[i])]) {
        throw InputError("swap is not a permutation");
      }
      seen[static_cast<std::size_t>(perm[i])] = 1;
      if (!same_ring(factors[i], factors[static_cast<std::size_t>(perm[i])])) {
        throw InputError("swap exchanges non-isomorphic factors");
      }
      if (!same_ring(components[i].ring(), factors[i])) throw InputError("component automorphism on wrong factor");
    }
    std::vector<Elem> map(ring->size());
    std::string label = "swap[";
    for (std::size_t i = 0; i < perm.size(); ++i) label += (i ? "," : "") + std::to_string(perm[i]);
    label += "]+(";
    for (std::size_t i = 0; i < components.size(); ++i) label += (i ? "," : "") + components[i].label();
    label += ")";
    for (std::size_t a = 0; a < ring->size(); ++a) {
      auto c = ring->components(static_cast<Elem>(a));
      std::vector<Elem> out(c.size());
      for (std::size_t i = 0; i < c.size(); ++i) out[i] = components[i].apply(c[static_cast<std::size_t>(perm[i])]);
      map[a] = ring->from_components(out);
    }
    return Automorphism(ring, std::move(map), label);
  }

  /// Arbitrary permutation table; rejected unless it is a ring automorphism.
  static Automorphism from_table(const RingPtr& ring, std::vector<Elem> map, std::string label = "table") {
    return Automorphism(ring, std::move(map), std::move(label));
  }

  const RingPtr& ring() const noexcept { return ring_; }
  int order() const noexcept { return order_; }
  const std::string& label() const noexcept { return label_; }
  bool is_identity() const noexcept { return order_ == 1; }

  /// sigma^k(x); negative k applies the inverse.
  Elem apply(Elem x, long long k = 1) const {
    long long r = k % order_;
    if (r < 0) r += order_;
    return powers_[static_cast<std::size_t>(r) * ring_->size() + x];
  }

  const std::vector<Elem>& table() const noexcept { return powers_; }

  friend bool operator==(const Automorphism& a, const Automorphism& b) {
    if (!same_ring(a.ring_, b.ring_)) return false;
    return a.order_ == b.order_ && a.powers_ == b.powers_;
  }

 private:
  Automorphism(RingPtr ring, std::vector<Elem> map, std::string label)
      : ring_(std::move(ring)), label_(std::move(label)) {
    const std::size_t n = ring_->size();
    if (map.size() != n) throw InputError("automorphism table has wrong size");
    std::vector<char> hit(n, 0);
    for (Elem y : map) {
      if (y >= n || hit[y]) throw PreconditionError("automorphism '" + label_ + "' is not bijective on " + ring_->key());
      hit[y] = 1;
    }
    if (map[ring_->one()] != ring_->one()) throw PreconditionError("automorphism '" + label_ + "' does not fix 1");
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        Elem ea = static_cast<Elem>(a), eb = static_cast<Elem>(b);
        if (map[ring_->add(ea, eb)] != ring_->add(map[a], map[b]) ||
            map[ring_->mul(ea, eb)] != ring_->mul(map[a], map[b])) {
          throw PreconditionError("map '" + label_ + "' is not a ring homomorphism of " + ring_->key());
        }
      }
    }
    long long order = 1;
    std::vector<char> done(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
      if (done[a]) continue;
      long long len = 0;
      for (std::size_t x = a; !done[x]; x = map[x]) {
        done[x] = 1;
        ++len;
      }
      order = std::lcm(order, len);
    }
    if (order * static_cast<long long>(n) > (1LL << 22)) {
      throw UnsupportedError("automorphism order " + std::to_string(order) + " too large to tabulate");
    }
    order_ = static_cast<int>(order);
    powers_.resize(static_cast<std::size_t>(order_) * n);
    for (std::size_t a = 0; a < n; ++a) powers_[a] = static_cast<Elem>(a);
    for (int k = 1; k < order_; ++k)
      for (std::size_t a = 0; a < n; ++a)
        powers_[static_cast<std::size_t>(k) * n + a] = map[powers_[static_cast<std::size_t>(k - 1) * n + a]];
  }

  RingPtr ring_;
  std::string label_;
  int order_ = 1;
  std::vector<Elem> powers_;  // order_ blocks of size n: powers_[k*n + x] = sigma^k(x)
};

}  // namespace oreq
