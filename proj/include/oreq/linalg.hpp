#pragma once

/**
 * @file linalg.hpp
 * @brief Linear systems A x = b over a finite commutative ring.
 *
 * A finite commutative ring splits as R = e_1 R x ... x e_t R along its
 * primitive idempotents, each factor local. Every ring this library builds is
 * a product of chain rings (Z/p^k, GF(q) and quotients of these), where the
 * entry generating the largest principal ideal divides every other entry. That
 * is enough for Smith-form elimination U A V = D in each factor: solutions are
 * y = V^{-1} x with d_i y_i = (U b)_i, and the kernel is generated by the
 * columns of V scaled by annihilator generators of the d_i.
 */

#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "oreq/errors.hpp"
#include "oreq/ring.hpp"

namespace oreq {

using Vec = std::vector<Elem>;

/// Dense row-major matrix of ring elements (coefficient matrices of linear systems).
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Elem> data;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}

  Elem& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  Elem at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

inline Vec apply(const Ring& R, const DenseMatrix& A, const Vec& x) {
  Vec out(A.rows, 0);
  for (std::size_t i = 0; i < A.rows; ++i) {
    Elem acc = 0;
    for (std::size_t j = 0; j < A.cols; ++j) acc = R.add(acc, R.mul(A.at(i, j), x[j]));
    out[i] = acc;
  }
  return out;
}

/// Solution set of A x = b: a particular solution (if any) plus kernel generators.
struct LinearSolution {
  std::optional<Vec> particular;
  /// Generators of {x : A x = 0} as an R-module. Each lies in a single local factor.
  std::vector<Vec> kernel;
  /// For kernel[i], the idempotent of the local factor it belongs to.
  std::vector<Elem> kernel_component;
};

namespace detail {

struct LocalSolve {
  std::optional<Vec> particular;
  std::vector<Vec> kernel;
};

inline Elem annihilator_generator(const Ring& R, Elem e, Elem d) {
  // ann_{eR}(d) = {c in eR : c d = 0}; in a chain ring it is principal.
  std::vector<Elem> ann;
  for (std::size_t r = 0; r < R.size(); ++r) {
    Elem c = R.mul(e, static_cast<Elem>(r));
    if (R.mul(c, d) == 0) ann.push_back(c);
  }
  std::sort(ann.begin(), ann.end());
  ann.erase(std::unique(ann.begin(), ann.end()), ann.end());
  for (Elem g : ann) {
    if (R.principal_ideal_size(g) == ann.size()) return g;
  }
  throw UnsupportedError("annihilator is not principal in " + R.key() + "; not a principal ideal ring");
}

inline LocalSolve solve_local(const Ring& R, Elem e, const DenseMatrix& A0, const Vec* b0) {
  const std::size_t r = A0.rows, m = A0.cols;
  DenseMatrix A(r, m);
  for (std::size_t i = 0; i < r * m; ++i) A.data[i] = R.mul(e, A0.data[i]);
  Vec b(r, 0);
  if (b0)
    for (std::size_t i = 0; i < r; ++i) b[i] = R.mul(e, (*b0)[i]);
  // V starts as e * I_m; tracks column operations
  DenseMatrix V(m, m);
  for (std::size_t j = 0; j < m; ++j) V.at(j, j) = e;

  const std::size_t local_size = R.principal_ideal_size(e);
  std::vector<Elem> pivots;
  std::size_t k = 0;
  for (; k < r && k < m; ++k) {
    std::size_t best_i = r, best_j = m, best_size = 0;
    for (std::size_t i = k; i < r && best_size < local_size; ++i) {
      for (std::size_t j = k; j < m; ++j) {
        Elem a = A.at(i, j);
        if (a == 0) continue;
        std::size_t sz = R.principal_ideal_size(a);
        if (sz > best_size) {
          best_size = sz;
          best_i = i;
          best_j = j;
          if (sz == local_size) break;
        }
      }
    }
    if (best_i == r) break;
    if (best_i != k) {
      for (std::size_t j = 0; j < m; ++j) std::swap(A.at(k, j), A.at(best_i, j));
      std::swap(b[k], b[best_i]);
    }
    if (best_j != k) {
      for (std::size_t i = 0; i < r; ++i) std::swap(A.at(i, k), A.at(i, best_j));
      for (std::size_t i = 0; i < m; ++i) std::swap(V.at(i, k), V.at(i, best_j));
    }
    const Elem p = A.at(k, k);
    auto quotient = [&](Elem x) -> Elem {
      auto q = R.divide(x, p);
      if (!q) throw UnsupportedError("pivot does not divide " + R.name(x) + " in " + R.key() + "; not a chain ring");
      return R.mul(e, *q);
    };
    for (std::size_t i = k + 1; i < r; ++i) {
      Elem x = A.at(i, k);
      if (x == 0) continue;
      Elem f = R.neg(quotient(x));
      for (std::size_t j = k; j < m; ++j) {
        Elem pk = A.at(k, j);
        if (pk != 0) A.at(i, j) = R.add(A.at(i, j), R.mul(f, pk));
      }
      b[i] = R.add(b[i], R.mul(f, b[k]));
    }
    for (std::size_t j = k + 1; j < m; ++j) {
      Elem x = A.at(k, j);
      if (x == 0) continue;
      Elem g = R.neg(quotient(x));
      A.at(k, j) = 0;  // column k is zero below the pivot, so only row k changes
      for (std::size_t i = 0; i < m; ++i) {
        Elem vk = V.at(i, k);
        if (vk != 0) V.at(i, j) = R.add(V.at(i, j), R.mul(vk, g));
      }
    }
    pivots.push_back(p);
  }
  const std::size_t rank = pivots.size();

  LocalSolve out;
  // particular solution: d_i y_i = b_i, remaining rows must vanish
  bool solvable = true;
  Vec y(m, 0);
  for (std::size_t i = 0; i < r && solvable; ++i) {
    if (i < rank) {
      auto q = R.divide(b[i], pivots[i]);
      if (!q) solvable = false;
      else y[i] = R.mul(e, *q);
    } else if (b[i] != 0) {
      solvable = false;
    }
  }
  auto times_v = [&](const Vec& z) {
    Vec x(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
      Elem acc = 0;
      for (std::size_t j = 0; j < m; ++j)
        if (z[j] != 0) acc = R.add(acc, R.mul(V.at(i, j), z[j]));
      x[i] = acc;
    }
    return x;
  };
  if (solvable) out.particular = times_v(y);

  for (std::size_t j = 0; j < m; ++j) {
    Elem g = j < rank ? annihilator_generator(R, e, pivots[j]) : e;
    if (g == 0) continue;
    Vec z(m, 0);
    z[j] = g;
    out.kernel.push_back(times_v(z));
  }
  return out;
}

}  // namespace detail

/// Solves A x = b (b == nullptr means the homogeneous system).
inline LinearSolution solve_linear_system(const Ring& R, const DenseMatrix& A, const Vec* b = nullptr) {
  if (b && b->size() != A.rows) throw InputError("right-hand side has wrong length");
  LinearSolution sol;
  Vec total(A.cols, 0);
  bool solvable = true;
  for (Elem e : R.local_idempotents()) {
    auto part = detail::solve_local(R, e, A, b);
    if (!part.particular) solvable = false;
    else
      for (std::size_t i = 0; i < A.cols; ++i) total[i] = R.add(total[i], (*part.particular)[i]);
    for (auto& v : part.kernel) {
      sol.kernel.push_back(std::move(v));
      sol.kernel_component.push_back(e);
    }
  }
  if (solvable) sol.particular = std::move(total);
  return sol;
}

/// Visits x0 + sum c_i g_i over R-linear combinations of the kernel generators,
/// in order of increasing number of nonzero coefficients, then lexicographically.
/// Coefficients for g_i range over the nonzero elements of its local factor.
/// Stops when the visitor returns true or after `budget` candidates; returns the count visited.
inline std::size_t enumerate_combinations(const Ring& R, const LinearSolution& sol, const Vec& base,
                                          std::size_t budget, const std::function<bool(const Vec&)>& visit,
                                          bool include_base = true, std::size_t max_weight = 3) {
  std::size_t visited = 0;
  if (include_base) {
    ++visited;
    if (visit(base) || visited >= budget) return visited;
  }
  const std::size_t k = sol.kernel.size();
  std::vector<std::vector<Elem>> coeffs(k);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<char> seen(R.size(), 0);
    for (std::size_t r = 1; r < R.size(); ++r) {
      Elem c = R.mul(sol.kernel_component[i], static_cast<Elem>(r));
      if (c != 0 && !seen[c]) {
        seen[c] = 1;
        coeffs[i].push_back(c);
      }
    }
  }
  std::vector<std::size_t> chosen;
  std::vector<Elem> chosen_coeff;
  bool stop = false;
  Vec current = base;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t left) {
    if (stop) return;
    if (left == 0) {
      ++visited;
      if (visit(current) || visited >= budget) stop = true;
      return;
    }
    for (std::size_t i = start; i < k && !stop; ++i) {
      for (Elem c : coeffs[i]) {
        if (stop) break;
        Vec saved = current;
        for (std::size_t t = 0; t < current.size(); ++t) current[t] = R.add(current[t], R.mul(c, sol.kernel[i][t]));
        rec(i + 1, left - 1);
        current = std::move(saved);
      }
    }
  };
  for (std::size_t w = 1; w <= std::min(k, max_weight) && !stop; ++w) rec(0, w);
  return visited;
}

}  // namespace oreq
