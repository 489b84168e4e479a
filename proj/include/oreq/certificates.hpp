#pragma once

/**
 * @file certificates.hpp
 * @brief Similarity, intertwiner, equivalence and freeness certificates.
 *
 * Matrix equations are turned into linear systems over R by probing the
 * map with basis matrices x^alpha E_ij. A map X -> X M is left-linear in the
 * left coefficients of X; a map X -> M X is right-linear in its right
 * coefficients (x^alpha c has left coefficient sigma^|alpha|(c)), and its
 * output is read in right coefficients as well.
 */

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "oreq/errors.hpp"
#include "oreq/linalg.hpp"
#include "oreq/skew_matrix.hpp"

namespace oreq {

enum class Side { left, right };

/// Unknown matrix with entries of degree <= degree, parametrized by left or right coefficients.
struct Unknown {
  std::size_t rows;
  std::size_t cols;
  int degree;
  Side side;
};

/// Solution set of L(X) = target as matrices.
struct MatrixSolutionSpace {
  std::optional<SkewMatrix> particular;
  std::vector<SkewMatrix> kernel;
  std::vector<Elem> kernel_component;
  LinearSolution raw;
};

namespace detail {

struct Probe {
  AmbientPtr ambient;
  Unknown shape;
  std::vector<Monomial> monos;

  std::size_t size() const { return shape.rows * shape.cols * monos.size(); }
  std::tuple<std::size_t, std::size_t, std::size_t> index(std::size_t k) const {
    std::size_t m = k % monos.size(), ij = k / monos.size();
    return {ij / shape.cols, ij % shape.cols, m};
  }
  SkewMatrix basis(std::size_t k) const {
    auto [i, j, m] = index(k);
    SkewMatrix B(ambient, shape.rows, shape.cols);
    B(i, j) = SkewPoly::term(ambient, ambient->ring()->one(), monos[m]);
    return B;
  }
  SkewMatrix assemble(const Vec& v) const {
    const auto& sigma = ambient->sigma;
    std::vector<std::vector<SkewPoly::Term>> terms(shape.rows * shape.cols);
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (v[k] == 0) continue;
      auto [i, j, m] = index(k);
      Elem c = shape.side == Side::left ? v[k] : sigma.apply(v[k], monos[m].degree());
      terms[i * shape.cols + j].emplace_back(monos[m], c);
    }
    SkewMatrix X(ambient, shape.rows, shape.cols);
    for (std::size_t i = 0; i < shape.rows; ++i)
      for (std::size_t j = 0; j < shape.cols; ++j)
        X(i, j) = SkewPoly::from_terms(ambient, std::move(terms[i * shape.cols + j]));
    return X;
  }
};

using OutKey = std::tuple<std::size_t, std::size_t, Monomial>;

inline Elem read_coefficient(const Automorphism& sigma, Side side, const Monomial& m, Elem c) {
  return side == Side::left ? c : sigma.apply(c, -static_cast<long long>(m.degree()));
}

}  // namespace detail

/// Solves L(X) = target (or L(X) = 0) for X of the given shape.
/// L must be left-linear for Side::left and right-linear for Side::right.
inline MatrixSolutionSpace solve_matrix_equation(const AmbientPtr& ambient, const Unknown& shape,
                                                 const std::function<SkewMatrix(const SkewMatrix&)>& map,
                                                 const SkewMatrix* target = nullptr) {
  const Ring& R = *ambient->ring();
  const auto& sigma = ambient->sigma;
  detail::Probe probe{ambient, shape, monomials_up_to(ambient->nvars, std::max(shape.degree, 0))};
  std::vector<SkewMatrix> images;
  images.reserve(probe.size());
  std::map<detail::OutKey, std::size_t> rows;
  auto collect = [&](const SkewMatrix& M) {
    for (std::size_t i = 0; i < M.rows(); ++i)
      for (std::size_t j = 0; j < M.cols(); ++j)
        for (const auto& t : M(i, j).terms()) rows.try_emplace({i, j, t.first}, 0);
  };
  for (std::size_t k = 0; k < probe.size(); ++k) {
    images.push_back(map(probe.basis(k)));
    collect(images.back());
  }
  if (target) collect(*target);
  std::size_t r = 0;
  for (auto& [key, idx] : rows) idx = r++;

  DenseMatrix A(rows.size(), probe.size());
  for (std::size_t k = 0; k < images.size(); ++k) {
    const auto& M = images[k];
    for (std::size_t i = 0; i < M.rows(); ++i)
      for (std::size_t j = 0; j < M.cols(); ++j)
        for (const auto& [m, c] : M(i, j).terms())
          A.at(rows.at({i, j, m}), k) = detail::read_coefficient(sigma, shape.side, m, c);
  }
  Vec b(rows.size(), 0);
  if (target) {
    for (std::size_t i = 0; i < target->rows(); ++i)
      for (std::size_t j = 0; j < target->cols(); ++j)
        for (const auto& [m, c] : (*target)(i, j).terms())
          b[rows.at({i, j, m})] = detail::read_coefficient(sigma, shape.side, m, c);
  }
  MatrixSolutionSpace out;
  out.raw = solve_linear_system(R, A, &b);
  if (out.raw.particular) out.particular = probe.assemble(*out.raw.particular);
  for (const auto& v : out.raw.kernel) out.kernel.push_back(probe.assemble(v));
  out.kernel_component = out.raw.kernel_component;
  return out;
}

/// Visits particular + combinations of kernel elements (see enumerate_combinations).
inline std::size_t enumerate_solutions(const AmbientPtr& ambient, const Unknown& shape,
                                       const MatrixSolutionSpace& space, std::size_t budget,
                                       const std::function<bool(const SkewMatrix&)>& visit,
                                       std::size_t max_weight = 3) {
  const Ring& R = *ambient->ring();
  detail::Probe probe{ambient, shape, monomials_up_to(ambient->nvars, std::max(shape.degree, 0))};
  Vec base = space.raw.particular ? *space.raw.particular : Vec(probe.size(), 0);
  return enumerate_combinations(
      R, space.raw, base, budget, [&](const Vec& v) { return visit(probe.assemble(v)); },
      space.raw.particular.has_value(), max_weight);
}

/// Two-sided inverse of a square P with degree <= bound, if one exists.
inline std::optional<SkewMatrix> solve_inverse(const SkewMatrix& P, int bound) {
  if (!P.is_square()) throw InputError("only square matrices can be inverted");
  const auto& A = P.ambient();
  const std::size_t s = P.rows();
  auto I = SkewMatrix::identity(A, s);
  auto space = solve_matrix_equation(A, {s, s, bound, Side::left}, [&](const SkewMatrix& Y) { return Y * P; }, &I);
  if (!space.particular) return std::nullopt;
  // left inverses form particular + left annihilator; a two-sided one is unique when it exists
  std::optional<SkewMatrix> found;
  enumerate_solutions(A, {s, s, bound, Side::left}, space, 64, [&](const SkewMatrix& Y) {
    if (P * Y == I) found = Y;
    return found.has_value();
  });
  return found;
}

// -- results ------------------------------------------------------------------

/// Outcome of a bounded search: a value, or not-found relative to the bound.
template <class T>
struct SearchResult {
  std::optional<T> value;
  int bound = 0;
  std::size_t candidates = 0;  ///< candidates tried

  bool found() const noexcept { return value.has_value(); }
};

struct SearchBounds {
  int degree = 2;
  std::size_t budget = 2000;      ///< candidates per linear solution set
  std::size_t words = 200;        ///< random GL words tried for equivalence
  std::size_t word_length = 4;
};

struct EquivalenceWitness {
  GLCertificate left;
  GLCertificate right;
};

struct IdempotentPresentation {
  SkewMatrix F;
};

struct ExtendednessReport {
  bool extended = false;
  std::optional<GLCertificate> certificate;
  int bound = 0;
};

struct FreenessCertificate {
  GLCertificate U;  ///< U F U^-1 = diag(1..1, 0..0)
  std::size_t rank = 0;
};

inline SkewMatrix standard_idempotent(const AmbientPtr& ambient, std::size_t size, std::size_t rank) {
  SkewMatrix D(ambient, size, size);
  for (std::size_t i = 0; i < rank && i < size; ++i) D(i, i) = SkewPoly::one(ambient);
  return D;
}

inline void require_idempotent(const SkewMatrix& F) {
  if (!is_idempotent(F)) throw PreconditionError("matrix is not idempotent");
}

inline IdempotentPresentation base_change_idempotent(const SkewMatrix& E) {
  if (!E.is_constant()) throw InputError("base change expects a constant matrix");
  require_idempotent(E);
  return {E};
}

namespace detail {

/// Tries particular + kernel combinations; first candidate with an inverse of degree <= bound wins.
inline std::optional<GLCertificate> first_invertible(const AmbientPtr& A, const Unknown& shape,
                                                     const MatrixSolutionSpace& space, int bound, std::size_t budget,
                                                     std::size_t& tried,
                                                     const std::function<bool(const GLCertificate&)>& accept) {
  std::optional<GLCertificate> out;
  tried += enumerate_solutions(A, shape, space, budget, [&](const SkewMatrix& P) {
    if (P.degree() > bound) return false;
    auto inv = solve_inverse(P, bound);
    if (!inv) return false;
    GLCertificate c{P, *inv};
    if (accept(c)) out = std::move(c);
    return out.has_value();
  });
  return out;
}

}  // namespace detail

// -- similarity ---------------------------------------------------------------------

/// P with P F P^-1 = target (default F(0)), deg P and deg P^-1 <= bound.
inline SearchResult<GLCertificate> similarity_certificate(const SkewMatrix& F, int bound,
                                                          const std::optional<SkewMatrix>& target = std::nullopt,
                                                          std::size_t budget = 2000) {
  require_idempotent(F);
  const auto& A = F.ambient();
  const std::size_t s = F.rows();
  const SkewMatrix T = target ? *target : eval_zero(F);
  if (!T.is_constant() || T.rows() != s || T.cols() != s) throw InputError("similarity target must be constant");
  auto I = SkewMatrix::identity(A, s);
  SearchResult<GLCertificate> result;
  result.bound = bound;
  if (bound < 0) return result;
  auto accept = [&](const GLCertificate& c) { return c.P * F == T * c.P && c.valid(); };

  // T F + (I-T)(I-F) intertwines F and T; it is invertible whenever I - (T-F)^2 is
  SkewMatrix P0 = T * F + (I - T) * (I - F);
  ++result.candidates;
  if (P0.degree() <= bound) {
    if (auto inv = solve_inverse(P0, bound)) {
      GLCertificate c{P0, *inv};
      if (accept(c)) {
        result.value = std::move(c);
        return result;
      }
    }
  }
  // P(0) may be normalized to I: it is invertible and commutes with T
  for (int e = 0; e <= bound && !result.found(); ++e) {
    Unknown shape{s, s, e, Side::left};
    auto map = [&](const SkewMatrix& X) {
      SkewMatrix X0 = eval_zero(X);
      SkewMatrix top = X * F - T * X;
      SkewMatrix out(A, 2 * s, s);
      for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j) {
          out(i, j) = top(i, j);
          out(s + i, j) = X0(i, j);
        }
      return out;
    };
    SkewMatrix rhs(A, 2 * s, s);
    for (std::size_t i = 0; i < s; ++i) rhs(s + i, i) = SkewPoly::one(A);
    auto space = solve_matrix_equation(A, shape, map, &rhs);
    if (!space.particular) continue;
    result.value = detail::first_invertible(A, shape, space, bound, budget, result.candidates, accept);
  }
  return result;
}

inline ExtendednessReport extendedness_report(const SkewMatrix& F, int bound) {
  auto r = similarity_certificate(F, bound);
  return {r.found(), r.value, bound};
}

/// Nonzero P with P F(0) = F P and deg P <= bound.
inline SearchResult<SkewMatrix> intertwiner_search(const SkewMatrix& F, int bound) {
  require_idempotent(F);
  const auto& A = F.ambient();
  const std::size_t s = F.rows();
  const SkewMatrix T = eval_zero(F);
  auto I = SkewMatrix::identity(A, s);
  SearchResult<SkewMatrix> result;
  result.bound = bound;
  if (bound < 0) return result;
  SkewMatrix Q0 = F * T + (I - F) * (I - T);
  ++result.candidates;
  if (Q0.degree() <= bound && F * Q0 == Q0 * T && !Q0.is_zero()) {
    result.value = Q0;
    return result;
  }
  Unknown shape{s, s, bound, Side::right};
  auto space = solve_matrix_equation(A, shape, [&](const SkewMatrix& X) { return F * X - X * T; });
  for (const auto& K : space.kernel) {
    ++result.candidates;
    if (!K.is_zero() && F * K == K * T) {
      result.value = K;
      break;
    }
  }
  return result;
}

// -- equivalence ----------------------------------------------------------------

/// Invertible P, Q with F = P G Q and all four matrices of degree <= bounds.degree.
inline SearchResult<EquivalenceWitness> equivalence_certificate(const SkewMatrix& F, const SkewMatrix& G,
                                                                const SearchBounds& bounds, std::uint64_t seed) {
  if (F.rows() != G.rows() || F.cols() != G.cols()) throw InputError("equivalence needs matrices of the same shape");
  if (!same_ambient(F.ambient(), G.ambient())) throw InputError("matrices over different ambient rings");
  const auto& A = F.ambient();
  const std::size_t r = F.rows(), s = F.cols();
  const int d = bounds.degree;
  SearchResult<EquivalenceWitness> result;
  result.bound = d;
  if (d < 0) return result;
  auto valid = [&](const EquivalenceWitness& w) {
    return w.left.valid() && w.right.valid() && w.left.P * G * w.right.P == F;
  };
  ++result.candidates;
  if (F == G) {
    result.value = EquivalenceWitness{GLCertificate::identity(A, r), GLCertificate::identity(A, s)};
    return result;
  }
  // F = P G Q with P fixed: solve (P G) Q = F
  auto solve_right = [&](const GLCertificate& P) -> std::optional<EquivalenceWitness> {
    SkewMatrix PG = P.P * G;
    Unknown shape{s, s, d, Side::right};
    auto space = solve_matrix_equation(A, shape, [&](const SkewMatrix& X) { return PG * X; }, &F);
    if (!space.particular) return std::nullopt;
    std::optional<EquivalenceWitness> w;
    detail::first_invertible(A, shape, space, d, bounds.budget, result.candidates, [&](const GLCertificate& Q) {
      EquivalenceWitness cand{P, Q};
      if (valid(cand)) w = cand;
      return w.has_value();
    });
    return w;
  };
  if (auto w = solve_right(GLCertificate::identity(A, r))) {
    result.value = std::move(w);
    return result;
  }
  {
    Unknown shape{r, r, d, Side::left};
    auto space = solve_matrix_equation(A, shape, [&](const SkewMatrix& X) { return X * G; }, &F);
    if (space.particular) {
      std::optional<EquivalenceWitness> w;
      detail::first_invertible(A, shape, space, d, bounds.budget, result.candidates, [&](const GLCertificate& P) {
        EquivalenceWitness cand{P, GLCertificate::identity(A, s)};
        if (valid(cand)) w = cand;
        return w.has_value();
      });
      if (w) {
        result.value = std::move(w);
        return result;
      }
    }
  }
  if (F.is_square() && G.is_constant() && is_idempotent(F) && eval_zero(F) == G) {
    auto sim = similarity_certificate(F, d, G, bounds.budget);
    result.candidates += sim.candidates;
    if (sim.found()) {
      EquivalenceWitness w{sim.value->inverse(), *sim.value};
      if (valid(w)) {
        result.value = std::move(w);
        return result;
      }
    }
  }
  for (std::size_t k = 0; k < bounds.words; ++k) {
    auto P = random_gl(A, r, std::min(d, 1), bounds.word_length, seed + k, d);
    if (P.degree() > d) continue;
    if (auto w = solve_right(P)) {
      result.value = std::move(w);
      return result;
    }
  }
  return result;
}

// -- freeness ----------------------------------------------------------------------

/// Constant V with V T V^-1 = diag(1^r, 0) for a constant idempotent T.
inline std::optional<std::pair<GLCertificate, std::size_t>> diagonalize_constant_idempotent(const SkewMatrix& T,
                                                                                           std::size_t budget = 4096) {
  const auto& A = T.ambient();
  const std::size_t s = T.rows();
  for (std::size_t rank = 0; rank <= s; ++rank) {
    SkewMatrix D = standard_idempotent(A, s, rank);
    Unknown shape{s, s, 0, Side::left};
    auto space = solve_matrix_equation(A, shape, [&](const SkewMatrix& X) { return X * T - D * X; });
    if (space.kernel.empty() && s > 0) continue;
    // over a field the kernel rows split as rank rows of <T> and s - rank rows of <I - T>
    std::optional<GLCertificate> found;
    std::size_t tried = 0;
    detail::first_invertible(A, shape, space, 0, budget, tried, [&](const GLCertificate& V) {
      if (V.P * T == D * V.P) found = V;
      return found.has_value();
    });
    if (found) return std::make_pair(*found, rank);
  }
  return std::nullopt;
}

inline SearchResult<FreenessCertificate> freeness_certificate(const SkewMatrix& F, int bound,
                                                              std::size_t budget = 2000) {
  require_idempotent(F);
  SearchResult<FreenessCertificate> result;
  result.bound = bound;
  auto sim = similarity_certificate(F, bound, std::nullopt, budget);
  result.candidates = sim.candidates;
  if (!sim.found()) return result;
  auto diag = diagonalize_constant_idempotent(eval_zero(F));
  if (!diag) return result;
  FreenessCertificate c{diag->first * *sim.value, diag->second};
  if (c.U.valid() && c.U.P * F * c.U.Pinv == standard_idempotent(F.ambient(), F.rows(), c.rank)) result.value = c;
  return result;
}

// -- generated instances ----------------------------------------------------------------

/// F = W E W^-1 with E = C diag(1^r, 0) C^-1 constant and W a GL word whose
/// elementary factors have total degree <= total_degree.
struct GeneratedIdempotent {
  SkewMatrix F;
  SkewMatrix E;
  GLCertificate W;
  int word_degree;  ///< max(deg W, deg W^-1), at least 0
};

inline GeneratedIdempotent generate_idempotent(const AmbientPtr& ambient, std::uint64_t seed, std::size_t max_size = 3,
                                               int total_degree = 2) {
  Rng rng(seed);
  const std::size_t s = 1 + rng.below(max_size);
  const std::size_t rank = rng.below(s + 1);
  auto C = random_gl(ambient, s, 0, 4, rng.next());
  auto E = base_change_idempotent(C.P * standard_idempotent(ambient, s, rank) * C.Pinv).F;
  auto W = random_gl(ambient, s, std::min(total_degree, 1), 1 + rng.below(4), rng.next(), total_degree);
  SkewMatrix F = W.P * E * W.Pinv;
  return {std::move(F), std::move(E), W, std::max(0, W.degree())};
}

// -- verification ------------------------------------------------------------------

enum class CertificateKind { similarity, intertwiner, equivalence, freeness };

inline std::string kind_name(CertificateKind k) {
  switch (k) {
    case CertificateKind::similarity: return "similarity";
    case CertificateKind::intertwiner: return "intertwiner";
    case CertificateKind::equivalence: return "equivalence";
    case CertificateKind::freeness: return "freeness";
  }
  return "?";
}

inline CertificateKind parse_kind(const std::string& s) {
  if (s == "similarity") return CertificateKind::similarity;
  if (s == "intertwiner") return CertificateKind::intertwiner;
  if (s == "equivalence") return CertificateKind::equivalence;
  if (s == "freeness") return CertificateKind::freeness;
  throw InputError("unknown certificate kind '" + s + "'");
}

/// Self-contained certificate: the claim plus everything needed to recheck it.
struct Certificate {
  CertificateKind kind = CertificateKind::similarity;
  SkewMatrix F;
  std::optional<SkewMatrix> G;     ///< equivalence: F = P G Q
  SkewMatrix P;                    ///< P, intertwiner, or U
  std::optional<SkewMatrix> Pinv;
  std::optional<SkewMatrix> Q;
  std::optional<SkewMatrix> Qinv;
  int bound = 0;
  std::size_t rank = 0;

  static Certificate similarity(const SkewMatrix& F, const GLCertificate& c, int bound) {
    return {CertificateKind::similarity, F, std::nullopt, c.P, c.Pinv, std::nullopt, std::nullopt, bound, 0};
  }
  static Certificate intertwiner(const SkewMatrix& F, const SkewMatrix& P, int bound) {
    return {CertificateKind::intertwiner, F, std::nullopt, P, std::nullopt, std::nullopt, std::nullopt, bound, 0};
  }
  static Certificate equivalence(const SkewMatrix& F, const SkewMatrix& G, const EquivalenceWitness& w, int bound) {
    return {CertificateKind::equivalence, F, G, w.left.P, w.left.Pinv, w.right.P, w.right.Pinv, bound, 0};
  }
  static Certificate freeness(const SkewMatrix& F, const FreenessCertificate& c, int bound) {
    return {CertificateKind::freeness, F, std::nullopt, c.U.P, c.U.Pinv, std::nullopt, std::nullopt, bound, c.rank};
  }
};

struct Verification {
  bool pass = false;
  std::string message;
  std::optional<SkewMatrix> residual;
};

namespace detail {

inline std::optional<Verification> check_inverse(const SkewMatrix& P, const std::optional<SkewMatrix>& Pinv,
                                                 const std::string& name) {
  if (!Pinv) return Verification{false, name + " inverse missing", std::nullopt};
  if (!P.is_square() || !Pinv->is_square() || P.rows() != Pinv->rows())
    return Verification{false, name + " and its inverse must be square of equal size", std::nullopt};
  auto I = SkewMatrix::identity(P.ambient(), P.rows());
  SkewMatrix r1 = P * *Pinv - I;
  if (!r1.is_zero()) return Verification{false, name + " * " + name + "^-1 != I", r1};
  SkewMatrix r2 = *Pinv * P - I;
  if (!r2.is_zero()) return Verification{false, name + "^-1 * " + name + " != I", r2};
  return std::nullopt;
}

inline std::optional<Verification> check_degree(const SkewMatrix& M, int bound, const std::string& name) {
  if (M.degree() > bound)
    return Verification{false, name + " has degree " + std::to_string(M.degree()) + " > bound " +
                                   std::to_string(bound), std::nullopt};
  return std::nullopt;
}

}  // namespace detail

inline Verification verify_certificate(const Certificate& c) {
  try {
    switch (c.kind) {
      case CertificateKind::similarity:
      case CertificateKind::freeness: {
        if (auto bad = detail::check_inverse(c.P, c.Pinv, "P")) return *bad;
        if (auto bad = detail::check_degree(c.P, c.bound, "P")) return *bad;
        if (auto bad = detail::check_degree(*c.Pinv, c.bound, "P^-1")) return *bad;
        SkewMatrix target = c.kind == CertificateKind::similarity
                                ? eval_zero(c.F)
                                : standard_idempotent(c.F.ambient(), c.F.rows(), c.rank);
        SkewMatrix r = c.P * c.F * *c.Pinv - target;
        if (!r.is_zero()) return {false, "P F P^-1 differs from the target", r};
        return {true, "pass", std::nullopt};
      }
      case CertificateKind::intertwiner: {
        if (c.P.is_zero()) return {false, "intertwiner is zero", std::nullopt};
        if (auto bad = detail::check_degree(c.P, c.bound, "P")) return *bad;
        SkewMatrix r = c.F * c.P - c.P * eval_zero(c.F);
        if (!r.is_zero()) return {false, "F P != P F(0)", r};
        return {true, "pass", std::nullopt};
      }
      case CertificateKind::equivalence: {
        if (!c.G || !c.Q) return {false, "equivalence needs G and Q", std::nullopt};
        if (auto bad = detail::check_inverse(c.P, c.Pinv, "P")) return *bad;
        if (auto bad = detail::check_inverse(*c.Q, c.Qinv, "Q")) return *bad;
        for (auto [M, name] : {std::pair{&c.P, "P"}, {&*c.Pinv, "P^-1"}, {&*c.Q, "Q"}, {&*c.Qinv, "Q^-1"}})
          if (auto bad = detail::check_degree(*M, c.bound, name)) return *bad;
        SkewMatrix r = c.F - c.P * *c.G * *c.Q;
        if (!r.is_zero()) return {false, "F != P G Q", r};
        return {true, "pass", std::nullopt};
      }
    }
  } catch (const InputError& e) {
    return {false, e.what(), std::nullopt};
  }
  return {false, "unknown certificate kind", std::nullopt};
}

}  // namespace oreq
