#pragma once

/**
 * @file patching.hpp
 * @brief Localization at maximal ideals, denominator clearing, and the
 * local-global suites for matrix equivalence and extendedness.
 */

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oreq/certificates.hpp"
#include "oreq/errors.hpp"
#include "oreq/ideals.hpp"
#include "oreq/localization.hpp"
#include "oreq/skew_matrix.hpp"

namespace oreq {

/// A_m for a maximal ideal m: coefficients in (R \ m)^-1 R, realized as R/K.
class LocalizedContext {
 public:
  LocalizedContext(const AmbientPtr& ambient, MaximalIdeal ideal)
      : global_(ambient), ideal_(std::move(ideal)), S_(MultiplicativeSet::complement_of(ideal_)),
        local_(checked(ambient->sigma, S_, ideal_)), ambient_(make_ambient(local_.sigma(), ambient->nvars)) {}

  const MaximalIdeal& ideal() const noexcept { return ideal_; }
  const MultiplicativeSet& multiplicative_set() const noexcept { return S_; }
  const LocalizedRing& localized() const noexcept { return local_; }
  const AmbientPtr& global_ambient() const noexcept { return global_; }
  const AmbientPtr& ambient() const noexcept { return ambient_; }
  /// Always true for a constructed context; construction fails otherwise.
  bool clubsuit_verified() const noexcept { return true; }

 private:
  static LocalizedRing checked(const Automorphism& sigma, const MultiplicativeSet& S, const MaximalIdeal& m) {
    for (Elem s : S.elements()) {
      Elem image = sigma.apply(s);
      if (!S.contains(image)) {
        throw PreconditionError("clubsuit fails: " + ClubsuitWitness{m, s, image}.to_string());
      }
    }
    return LocalizedRing(sigma, S);
  }

  AmbientPtr global_;
  MaximalIdeal ideal_;
  MultiplicativeSet S_;
  LocalizedRing local_;
  AmbientPtr ambient_;
};

inline std::vector<LocalizedContext> localized_contexts(const AmbientPtr& ambient) {
  std::vector<LocalizedContext> out;
  for (auto& m : enumerate_maximal_ideals(ambient->ring())) out.emplace_back(ambient, std::move(m));
  return out;
}

inline SkewPoly localize_poly(const SkewPoly& p, const LocalizedContext& ctx) {
  return map_coeffs(p, ctx.localized().canonical(), ctx.ambient());
}

inline SkewMatrix localize(const SkewMatrix& F, const LocalizedContext& ctx) {
  return map_coeffs(F, ctx.localized().canonical(), ctx.ambient());
}

inline GLCertificate localize(const GLCertificate& c, const LocalizedContext& ctx) {
  return {localize(c.P, ctx), localize(c.Pinv, ctx)};
}

inline EquivalenceWitness localize(const EquivalenceWitness& w, const LocalizedContext& ctx) {
  return {localize(w.left, ctx), localize(w.right, ctx)};
}

// -- denominator clearing -------------------------------------------------------------

/// s in S with F(sX) G(sX) = H(sX), given F(0) G(0) = H(0) and F G = H after localizing at S.
inline Elem clear_denominators(const SkewMatrix& F, const SkewMatrix& G, const SkewMatrix& H,
                               const MultiplicativeSet& S) {
  const auto& A = F.ambient();
  const Ring& R = *A->ring();
  if (!same_ring(S.ring(), A->ring())) throw InputError("multiplicative set over a different ring");
  if (!S.is_sigma_stable(A->sigma)) throw PreconditionError("multiplicative set " + S.to_string() + " is not sigma-stable");
  if (F.cols() != G.rows() || H.rows() != F.rows() || H.cols() != G.cols()) throw InputError("shapes do not fit F G = H");
  SkewMatrix D = F * G - H;
  SkewMatrix D0 = eval_zero(D);
  for (std::size_t i = 0; i < D.rows(); ++i)
    for (std::size_t j = 0; j < D.cols(); ++j)
      if (!D0(i, j).is_zero()) {
        throw PreconditionError("F(0) G(0) != H(0) at entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                ")");
      }
  Elem s = R.one();
  for (std::size_t i = 0; i < D.rows(); ++i)
    for (std::size_t j = 0; j < D.cols(); ++j)
      for (const auto& [m, d] : D(i, j).terms()) {
        std::optional<Elem> ann;
        for (Elem t : S.elements())
          if (R.mul(t, d) == 0) {
            ann = t;
            break;
          }
        if (!ann) {
          throw PreconditionError("coefficient " + R.name(d) + " of " + monomial_text(m) + " at entry (" +
                                  std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                  ") is not killed by S; F G != H locally");
        }
        s = R.mul(s, *ann);
      }
  if (scale_subst(F, s) * scale_subst(G, s) != scale_subst(H, s)) throw Error("internal: cleared identity fails");
  return s;
}

/// Equivalence F ~ G (default G = F(0)) over A_m.
inline SearchResult<EquivalenceWitness> local_equivalence(const SkewMatrix& F, const LocalizedContext& ctx,
                                                          const SearchBounds& bounds, std::uint64_t seed,
                                                          const std::optional<SkewMatrix>& G = std::nullopt) {
  return equivalence_certificate(localize(F, ctx), localize(G ? *G : eval_zero(F), ctx), bounds, seed);
}

// -- suites -------------------------------------------------------------------------

enum class LocalStatus { witness, localized_global, not_found };

inline std::string status_name(LocalStatus s) {
  switch (s) {
    case LocalStatus::witness: return "witness";
    case LocalStatus::localized_global: return "localized-global-witness";
    case LocalStatus::not_found: return "not-found-within-bound";
  }
  return "?";
}

struct LocalOutcome {
  MaximalIdeal ideal;
  LocalStatus status = LocalStatus::not_found;
  std::optional<EquivalenceWitness> witness;  ///< over A_m
  AmbientPtr ambient;                         ///< A_m
  bool verified = false;
};

struct SuiteReport {
  SkewMatrix F;
  SkewMatrix G;
  SearchBounds bounds;
  std::uint64_t seed = 0;
  std::optional<EquivalenceWitness> global;
  std::vector<LocalOutcome> locals;
  /// False only if a global witness exists and some localization of it fails to verify.
  bool consistent = true;
};

/// Global search for F ~ G, plus a local outcome at every maximal ideal.
inline SuiteReport vaserstein_suite(const SkewMatrix& F, const SearchBounds& bounds, std::uint64_t seed,
                                    const std::optional<SkewMatrix>& target = std::nullopt) {
  const auto& A = F.ambient();
  if (auto w = clubsuit_check(A->sigma)) throw PreconditionError("clubsuit fails: " + w->to_string());
  SkewMatrix G = target ? *target : eval_zero(F);
  SuiteReport report{F, G, bounds, seed, std::nullopt, {}, true};
  auto global = equivalence_certificate(F, G, bounds, seed);
  report.global = global.value;
  for (const auto& ctx : localized_contexts(A)) {
    LocalOutcome out{ctx.ideal(), LocalStatus::not_found, std::nullopt, ctx.ambient(), false};
    SkewMatrix Fm = localize(F, ctx), Gm = localize(G, ctx);
    if (report.global) {
      auto w = localize(*report.global, ctx);
      out.status = LocalStatus::localized_global;
      out.verified = w.left.valid() && w.right.valid() && w.left.P * Gm * w.right.P == Fm;
      out.witness = std::move(w);
      if (!out.verified) report.consistent = false;
    } else {
      auto local = equivalence_certificate(Fm, Gm, bounds, seed);
      if (local.found()) {
        out.status = LocalStatus::witness;
        out.verified = true;
        out.witness = local.value;
      }
    }
    report.locals.push_back(std::move(out));
  }
  return report;
}

struct PatchingReport {
  PatchingBlocks blocks;
  PermutationPair permutation;  ///< row_matrix * G * col_matrix == F(0)
  SuiteReport suite;
  bool extended() const { return suite.global.has_value(); }
};

/// Block construction for a presentation matrix B, then the local-global suite on F against F(0).
inline PatchingReport patching_suite(const SkewMatrix& B, const SearchBounds& bounds, std::uint64_t seed) {
  auto blocks = block_build_patching(B);
  SkewMatrix F0 = eval_zero(blocks.F);
  auto perm = permutation_reduce(blocks.G, F0);
  if (!perm) throw Error("internal: block matrix G is not a permutation of F(0)");
  auto suite = vaserstein_suite(blocks.F, bounds, seed, F0);
  return {std::move(blocks), std::move(*perm), std::move(suite)};
}

}  // namespace oreq
