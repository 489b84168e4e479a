#pragma once

#include <string>
#include <utility>
#include <vector>

#include "oreq/automorphism.hpp"
#include "oreq/errors.hpp"
#include "oreq/ideals.hpp"
#include "oreq/ring.hpp"

namespace oreq {

/// A unital ring homomorphism between finite rings, stored as a table.
class RingHom {
 public:
  RingHom(RingPtr source, RingPtr target, std::vector<Elem> table)
      : source_(std::move(source)), target_(std::move(target)), table_(std::move(table)) {
    const std::size_t n = source_->size();
    if (table_.size() != n) throw InputError("homomorphism table has wrong size");
    for (Elem y : table_)
      if (y >= target_->size()) throw InputError("homomorphism image out of range");
    if (table_[source_->one()] != target_->one()) throw PreconditionError("homomorphism does not send 1 to 1");
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        Elem ea = static_cast<Elem>(a), eb = static_cast<Elem>(b);
        if (table_[source_->add(ea, eb)] != target_->add(table_[a], table_[b]) ||
            table_[source_->mul(ea, eb)] != target_->mul(table_[a], table_[b])) {
          throw PreconditionError("map " + source_->key() + " -> " + target_->key() + " is not a ring homomorphism");
        }
      }
  }

  static RingHom identity(const RingPtr& ring) {
    std::vector<Elem> t(ring->size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<Elem>(i);
    return RingHom(ring, ring, std::move(t));
  }

  /// Z/m -> Z/d for d | m.
  static RingHom residue(const RingPtr& source, const RingPtr& target) {
    if (source->kind() != RingKind::zmod || target->kind() != RingKind::zmod ||
        source->modulus() % target->modulus() != 0) {
      throw InputError("residue map needs Z/m -> Z/d with d | m");
    }
    std::vector<Elem> t(source->size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<Elem>(i % target->size());
    return RingHom(source, target, std::move(t));
  }

  const RingPtr& source() const noexcept { return source_; }
  const RingPtr& target() const noexcept { return target_; }
  Elem operator()(Elem x) const { return table_.at(x); }

  /// h(sigma(r)) == sigma'(h(r)) for every r.
  bool compatible(const Automorphism& sigma_source, const Automorphism& sigma_target) const {
    if (!same_ring(sigma_source.ring(), source_) || !same_ring(sigma_target.ring(), target_)) return false;
    for (std::size_t r = 0; r < source_->size(); ++r) {
      Elem e = static_cast<Elem>(r);
      if (table_[sigma_source.apply(e)] != sigma_target.apply(table_[e])) return false;
    }
    return true;
  }

 private:
  RingPtr source_, target_;
  std::vector<Elem> table_;
};

/// r/s with s in the multiplicative set.
struct Fraction {
  Elem numerator;
  Elem denominator;
};

/// S^{-1}R with its induced automorphism sigma-bar(r/s) = sigma(r)/sigma(s).
///
/// Fractions are handled directly, and also realized as the quotient R/K where
/// K = {r : t r = 0 for some t in S}; every s in S is a unit there, so R/K is
/// canonically isomorphic to S^{-1}R for finite R.
class LocalizedRing {
 public:
  LocalizedRing(const Automorphism& sigma, MultiplicativeSet S)
      : base_(sigma.ring()), sigma_base_(sigma), S_(std::move(S)), ring_(base_), sigma_bar_(sigma),
        canonical_(RingHom::identity(base_)) {
    if (!same_ring(S_.ring(), base_)) throw InputError("multiplicative set over a different ring");
    if (!S_.is_sigma_stable(sigma)) {
      throw PreconditionError("multiplicative set " + S_.to_string() + " is not sigma-stable");
    }
    for (std::size_t r = 0; r < base_->size(); ++r) {
      Elem e = static_cast<Elem>(r);
      for (Elem t : S_.elements()) {
        if (base_->mul(t, e) == 0) {
          torsion_.push_back(e);
          break;
        }
      }
    }
    if (torsion_.size() == base_->size()) throw PreconditionError("localization is the zero ring (0 in S)");
    if (torsion_.size() > 1) {
      ring_ = Ring::quotient(base_, torsion_);
      std::vector<Elem> proj(base_->size()), bar(ring_->size());
      for (std::size_t r = 0; r < base_->size(); ++r) proj[r] = ring_->class_of(static_cast<Elem>(r));
      for (std::size_t c = 0; c < ring_->size(); ++c)
        bar[c] = ring_->class_of(sigma.apply(ring_->representative(static_cast<Elem>(c))));
      canonical_ = RingHom(base_, ring_, std::move(proj));
      sigma_bar_ = Automorphism::from_table(ring_, std::move(bar), "bar(" + sigma.label() + ")");
    }
    for (Elem s : S_.elements()) {
      if (!ring_->is_unit(canonical_(s))) throw Error("internal: denominator not invertible in R/K");
    }
  }

  const RingPtr& base() const noexcept { return base_; }
  const MultiplicativeSet& multiplicative_set() const noexcept { return S_; }
  /// S-torsion ideal K, the kernel of r -> r/1.
  const std::vector<Elem>& torsion() const noexcept { return torsion_; }
  /// The realized ring R/K and its automorphism.
  const RingPtr& ring() const noexcept { return ring_; }
  const Automorphism& sigma() const noexcept { return sigma_bar_; }
  const RingHom& canonical() const noexcept { return canonical_; }

  Fraction make(Elem r, Elem s) const {
    if (!S_.contains(s)) throw InputError("denominator " + base_->name(s) + " not in S");
    return {r, s};
  }
  Fraction add(Fraction a, Fraction b) const {
    const auto& R = *base_;
    return {R.add(R.mul(a.numerator, b.denominator), R.mul(b.numerator, a.denominator)),
            R.mul(a.denominator, b.denominator)};
  }
  Fraction mul(Fraction a, Fraction b) const {
    const auto& R = *base_;
    return {R.mul(a.numerator, b.numerator), R.mul(a.denominator, b.denominator)};
  }
  Fraction neg(Fraction a) const { return {base_->neg(a.numerator), a.denominator}; }

  /// r1/s1 == r2/s2 iff t (r1 s2 - r2 s1) = 0 for some t in S.
  bool equal(Fraction a, Fraction b) const {
    const auto& R = *base_;
    Elem d = R.sub(R.mul(a.numerator, b.denominator), R.mul(b.numerator, a.denominator));
    for (Elem t : S_.elements())
      if (R.mul(t, d) == 0) return true;
    return false;
  }

  Fraction sigma_bar(Fraction a) const { return {sigma_base_.apply(a.numerator), sigma_base_.apply(a.denominator)}; }

  Elem to_ring(Fraction a) const {
    return ring_->mul(canonical_(a.numerator), ring_->inv(canonical_(a.denominator)));
  }

  std::string to_string(Fraction a) const { return base_->name(a.numerator) + "/" + base_->name(a.denominator); }

 private:
  RingPtr base_;
  Automorphism sigma_base_;
  MultiplicativeSet S_;
  std::vector<Elem> torsion_;
  RingPtr ring_;
  Automorphism sigma_bar_;
  RingHom canonical_;
};

}  // namespace oreq
