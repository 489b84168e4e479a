#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "oreq/skew_poly.hpp"

namespace oreq {

/// Seeded generator with a portable bounded draw (std distributions differ between standard libraries).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform-ish integer in [0, n).
  std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(engine_() % n); }
  bool chance(unsigned percent) { return below(100) < percent; }

  Elem element(const Ring& R) { return static_cast<Elem>(below(R.size())); }
  Elem nonzero_element(const Ring& R) { return static_cast<Elem>(1 + below(R.size() - 1)); }
  Elem unit(const Ring& R) {
    for (;;) {
      Elem e = element(R);
      if (R.is_unit(e)) return e;
    }
  }

 private:
  std::mt19937_64 engine_;
};

/// Random polynomial with total degree <= max_degree; each monomial present with the given probability.
inline SkewPoly random_poly(const AmbientPtr& ambient, int max_degree, Rng& rng, unsigned density_percent = 50) {
  std::vector<SkewPoly::Term> terms;
  for (auto& m : monomials_up_to(ambient->nvars, max_degree)) {
    if (rng.chance(density_percent)) terms.emplace_back(m, rng.element(*ambient->ring()));
  }
  return SkewPoly::from_terms(ambient, std::move(terms));
}

/// Random polynomial whose coefficients are drawn from a given pool.
inline SkewPoly random_poly_from(const AmbientPtr& ambient, int min_degree, int max_degree,
                                 const std::vector<Elem>& pool, Rng& rng, unsigned density_percent = 50) {
  std::vector<SkewPoly::Term> terms;
  for (auto& m : monomials_up_to(ambient->nvars, max_degree)) {
    if (static_cast<int>(m.degree()) < min_degree) continue;
    if (rng.chance(density_percent)) terms.emplace_back(m, pool[rng.below(pool.size())]);
  }
  return SkewPoly::from_terms(ambient, std::move(terms));
}

}  // namespace oreq
