#pragma once

/**
 * @file skew_matrix.hpp
 * @brief Rectangular matrices over A = R[x_1..x_n; sigma].
 *
 * Row-vector convention: a matrix F acts on row vectors by v -> v F, and the
 * module <F> is generated by the rows of F.
 */

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oreq/errors.hpp"
#include "oreq/linalg.hpp"
#include "oreq/poly_io.hpp"
#include "oreq/random.hpp"
#include "oreq/skew_poly.hpp"

namespace oreq {

class SkewMatrix {
 public:
  SkewMatrix(AmbientPtr ambient, std::size_t rows, std::size_t cols)
      : ambient_(std::move(ambient)), rows_(rows), cols_(cols), entries_(rows * cols, SkewPoly(ambient_)) {}

  static SkewMatrix identity(const AmbientPtr& ambient, std::size_t n) {
    SkewMatrix m(ambient, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = SkewPoly::one(ambient);
    return m;
  }
  static SkewMatrix from_constants(const AmbientPtr& ambient, std::size_t rows, std::size_t cols,
                                   const std::vector<Elem>& values) {
    if (values.size() != rows * cols) throw InputError("constant matrix has wrong number of entries");
    SkewMatrix m(ambient, rows, cols);
    for (std::size_t i = 0; i < values.size(); ++i) m.entries_[i] = SkewPoly::constant(ambient, values[i]);
    return m;
  }
  static SkewMatrix from_rows(const AmbientPtr& ambient, const std::vector<std::vector<SkewPoly>>& rows) {
    if (rows.empty()) throw InputError("matrix needs at least one row");
    SkewMatrix m(ambient, rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw InputError("matrix rows have different lengths");
      for (std::size_t j = 0; j < m.cols_; ++j) {
        if (!same_ambient(rows[i][j].ambient(), ambient)) throw InputError("matrix entries over different ambients");
        m(i, j) = rows[i][j];
      }
    }
    return m;
  }
  /// Parses entries with the polynomial grammar.
  static SkewMatrix parse(const AmbientPtr& ambient, const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::vector<SkewPoly>> polys;
    for (const auto& r : rows) {
      std::vector<SkewPoly> row;
      for (const auto& t : r) row.push_back(parse_poly(t, ambient));
      polys.push_back(std::move(row));
    }
    return from_rows(ambient, polys);
  }

  const AmbientPtr& ambient() const noexcept { return ambient_; }
  const Ring& ring() const noexcept { return *ambient_->ring(); }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  SkewPoly& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const SkewPoly& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  const std::vector<SkewPoly>& entries() const noexcept { return entries_; }

  int degree() const noexcept {
    int d = kNegInfDegree;
    for (const auto& e : entries_) d = std::max(d, e.degree());
    return d;
  }
  bool is_zero() const noexcept {
    return std::all_of(entries_.begin(), entries_.end(), [](const SkewPoly& p) { return p.is_zero(); });
  }
  bool is_constant() const noexcept {
    return std::all_of(entries_.begin(), entries_.end(), [](const SkewPoly& p) { return p.is_constant(); });
  }
  std::size_t term_count() const noexcept {
    std::size_t n = 0;
    for (const auto& e : entries_) n += e.terms().size();
    return n;
  }

  friend bool operator==(const SkewMatrix& a, const SkewMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

  friend SkewMatrix operator+(const SkewMatrix& a, const SkewMatrix& b) { return a.combine(b, false); }
  friend SkewMatrix operator-(const SkewMatrix& a, const SkewMatrix& b) { return a.combine(b, true); }
  friend SkewMatrix operator*(const SkewMatrix& a, const SkewMatrix& b) { return mat_mul(a, b); }

  friend SkewMatrix mat_mul(const SkewMatrix& a, const SkewMatrix& b) {
    if (a.cols_ != b.rows_) {
      throw InputError("dimension mismatch: " + std::to_string(a.rows_) + "x" + std::to_string(a.cols_) + " times " +
                       std::to_string(b.rows_) + "x" + std::to_string(b.cols_));
    }
    if (!same_ambient(a.ambient_, b.ambient_)) throw InputError("matrices over different ambient rings");
    SkewMatrix out(a.ambient_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const SkewPoly& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const SkewPoly& bkj = b(k, j);
          if (!bkj.is_zero()) out(i, j) += aik * bkj;
        }
      }
    return out;
  }

  /// row_i += f * row_j
  void add_row_multiple(std::size_t i, std::size_t j, const SkewPoly& f) {
    for (std::size_t c = 0; c < cols_; ++c)
      if (!(*this)(j, c).is_zero()) (*this)(i, c) += f * (*this)(j, c);
  }
  /// col_j += col_i * f
  void add_col_multiple(std::size_t j, std::size_t i, const SkewPoly& f) {
    for (std::size_t r = 0; r < rows_; ++r)
      if (!(*this)(r, i).is_zero()) (*this)(r, j) += (*this)(r, i) * f;
  }

  std::string to_string() const {
    std::string out = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      out += i ? ", [" : "[";
      for (std::size_t j = 0; j < cols_; ++j) out += (j ? ", " : "") + oreq::to_string((*this)(i, j));
      out += "]";
    }
    return out + "]";
  }

 private:
  SkewMatrix combine(const SkewMatrix& b, bool subtract) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw InputError("matrix shapes differ");
    SkewMatrix out(ambient_, rows_, cols_);
    for (std::size_t i = 0; i < entries_.size(); ++i)
      out.entries_[i] = subtract ? entries_[i] - b.entries_[i] : entries_[i] + b.entries_[i];
    return out;
  }

  AmbientPtr ambient_;
  std::size_t rows_, cols_;
  std::vector<SkewPoly> entries_;
};

inline std::string to_string(const SkewMatrix& m) { return m.to_string(); }

/// F(0): every variable replaced by 0.
inline SkewMatrix eval_zero(const SkewMatrix& F) {
  SkewMatrix out(F.ambient(), F.rows(), F.cols());
  for (std::size_t i = 0; i < F.rows(); ++i)
    for (std::size_t j = 0; j < F.cols(); ++j) out(i, j) = SkewPoly::constant(F.ambient(), const_term(F(i, j)));
  return out;
}

inline bool is_idempotent(const SkewMatrix& F) {
  if (!F.is_square()) throw InputError("is_idempotent needs a square matrix");
  return F * F == F;
}

/// Entrywise scale_subst: F(sX).
inline SkewMatrix scale_subst(const SkewMatrix& F, Elem s) {
  SkewMatrix out(F.ambient(), F.rows(), F.cols());
  for (std::size_t i = 0; i < F.rows(); ++i)
    for (std::size_t j = 0; j < F.cols(); ++j) out(i, j) = scale_subst(F(i, j), s);
  return out;
}

/// Entrywise coefficient homomorphism.
inline SkewMatrix map_coeffs(const SkewMatrix& F, const RingHom& h, const AmbientPtr& target) {
  SkewMatrix out(target, F.rows(), F.cols());
  for (std::size_t i = 0; i < F.rows(); ++i)
    for (std::size_t j = 0; j < F.cols(); ++j) out(i, j) = map_coeffs(F(i, j), h, target);
  return out;
}

/// Reinterprets a matrix over an ambient that is structurally equal.
inline SkewMatrix rebind(const SkewMatrix& F, const AmbientPtr& target) {
  if (!same_ambient(F.ambient(), target)) throw InputError("cannot rebind matrix to a different ambient");
  SkewMatrix out(target, F.rows(), F.cols());
  for (std::size_t i = 0; i < F.rows(); ++i)
    for (std::size_t j = 0; j < F.cols(); ++j) out(i, j) = SkewPoly::from_terms(target, F(i, j).terms());
  return out;
}

// -- M_r(B[x;sigma]) <-> M_r(B)[x;sigma] -------------------------------------

/// An element sum_alpha F^(alpha) x^alpha of M_{r x s}(R)[x_1..x_n; sigma], sigma acting entrywise.
struct MatrixPoly {
  AmbientPtr ambient;
  std::size_t rows = 0;
  std::size_t cols = 0;
  /// Increasing grlex order, no zero coefficient matrices.
  std::vector<std::pair<Monomial, DenseMatrix>> coefficients;

  friend bool operator==(const MatrixPoly& a, const MatrixPoly& b) {
    if (a.rows != b.rows || a.cols != b.cols || a.coefficients.size() != b.coefficients.size()) return false;
    for (std::size_t i = 0; i < a.coefficients.size(); ++i) {
      if (!(a.coefficients[i].first == b.coefficients[i].first) ||
          a.coefficients[i].second.data != b.coefficients[i].second.data) {
        return false;
      }
    }
    return true;
  }

  /// (F x^alpha)(G x^beta) = F sigma^{|alpha|}(G) x^{alpha+beta}.
  friend MatrixPoly operator*(const MatrixPoly& a, const MatrixPoly& b) {
    if (a.cols != b.rows) throw InputError("dimension mismatch in matrix polynomial product");
    const Ring& R = *a.ambient->ring();
    const Automorphism& s = a.ambient->sigma;
    std::vector<std::pair<Monomial, DenseMatrix>> raw;
    for (const auto& [ma, A] : a.coefficients)
      for (const auto& [mb, B] : b.coefficients) {
        DenseMatrix C(a.rows, b.cols);
        for (std::size_t i = 0; i < a.rows; ++i)
          for (std::size_t k = 0; k < a.cols; ++k)
            for (std::size_t j = 0; j < b.cols; ++j)
              C.at(i, j) = R.add(C.at(i, j), R.mul(A.at(i, k), s.apply(B.at(k, j), ma.degree())));
        raw.emplace_back(ma + mb, std::move(C));
      }
    return normalize(a.ambient, a.rows, b.cols, std::move(raw));
  }

  static MatrixPoly normalize(const AmbientPtr& ambient, std::size_t rows, std::size_t cols,
                              std::vector<std::pair<Monomial, DenseMatrix>> raw) {
    const Ring& R = *ambient->ring();
    std::stable_sort(raw.begin(), raw.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    MatrixPoly out{ambient, rows, cols, {}};
    for (auto& [m, M] : raw) {
      if (M.rows != rows || M.cols != cols) throw InputError("inconsistent coefficient-matrix shapes");
      if (!out.coefficients.empty() && out.coefficients.back().first == m) {
        auto& acc = out.coefficients.back().second;
        for (std::size_t i = 0; i < acc.data.size(); ++i) acc.data[i] = R.add(acc.data[i], M.data[i]);
      } else {
        out.coefficients.emplace_back(m, std::move(M));
      }
    }
    std::erase_if(out.coefficients, [](const auto& c) {
      return std::all_of(c.second.data.begin(), c.second.data.end(), [](Elem e) { return e == 0; });
    });
    return out;
  }
};

inline MatrixPoly to_matrix_poly(const SkewMatrix& F) {
  std::vector<std::pair<Monomial, DenseMatrix>> raw;
  for (std::size_t i = 0; i < F.rows(); ++i)
    for (std::size_t j = 0; j < F.cols(); ++j)
      for (const auto& [m, c] : F(i, j).terms()) {
        DenseMatrix M(F.rows(), F.cols());
        M.at(i, j) = c;
        raw.emplace_back(m, std::move(M));
      }
  return MatrixPoly::normalize(F.ambient(), F.rows(), F.cols(), std::move(raw));
}

inline SkewMatrix from_matrix_poly(const MatrixPoly& P) {
  std::vector<std::vector<std::vector<SkewPoly::Term>>> terms(P.rows, std::vector<std::vector<SkewPoly::Term>>(P.cols));
  for (const auto& [m, M] : P.coefficients) {
    if (M.rows != P.rows || M.cols != P.cols) throw InputError("inconsistent coefficient-matrix shapes");
    if (m.size() != P.ambient->nvars) throw InputError("coefficient monomial has wrong variable count");
    for (std::size_t i = 0; i < P.rows; ++i)
      for (std::size_t j = 0; j < P.cols; ++j)
        if (M.at(i, j) != 0) terms[i][j].emplace_back(m, M.at(i, j));
  }
  SkewMatrix out(P.ambient, P.rows, P.cols);
  for (std::size_t i = 0; i < P.rows; ++i)
    for (std::size_t j = 0; j < P.cols; ++j) out(i, j) = SkewPoly::from_terms(P.ambient, std::move(terms[i][j]));
  return out;
}

// -- invertible matrices ------------------------------------------------------

/// An invertible matrix together with its inverse.
struct GLCertificate {
  SkewMatrix P;
  SkewMatrix Pinv;

  bool valid() const {
    if (!P.is_square() || !Pinv.is_square() || P.rows() != Pinv.rows()) return false;
    auto I = SkewMatrix::identity(P.ambient(), P.rows());
    return P * Pinv == I && Pinv * P == I;
  }
  int degree() const { return std::max(P.degree(), Pinv.degree()); }

  static GLCertificate identity(const AmbientPtr& ambient, std::size_t n) {
    return {SkewMatrix::identity(ambient, n), SkewMatrix::identity(ambient, n)};
  }
  GLCertificate inverse() const { return {Pinv, P}; }
  friend GLCertificate operator*(const GLCertificate& a, const GLCertificate& b) {
    return {a.P * b.P, b.Pinv * a.Pinv};
  }
};

/// I + f E_ij (i != j); its inverse is I - f E_ij.
inline GLCertificate elementary(const AmbientPtr& ambient, std::size_t n, std::size_t i, std::size_t j,
                                const SkewPoly& f) {
  if (i == j || i >= n || j >= n) throw InputError("elementary matrix needs distinct indices in range");
  GLCertificate c = GLCertificate::identity(ambient, n);
  c.P(i, j) = f;
  c.Pinv(i, j) = -f;
  return c;
}

inline GLCertificate unit_diagonal(const AmbientPtr& ambient, const std::vector<Elem>& units) {
  const Ring& R = *ambient->ring();
  GLCertificate c = GLCertificate::identity(ambient, units.size());
  for (std::size_t i = 0; i < units.size(); ++i) {
    c.P(i, i) = SkewPoly::constant(ambient, units[i]);
    c.Pinv(i, i) = SkewPoly::constant(ambient, R.inv(units[i]));
  }
  return c;
}

/// Product of `length` random factors: elementary I + a x^alpha E_ij (i != j,
/// |alpha| <= degree_bound) or unit-diagonal. When total_degree_cap >= 0 the
/// sum of |alpha| over the word stays within it.
inline GLCertificate random_gl(const AmbientPtr& ambient, std::size_t size, int degree_bound, std::size_t length,
                               std::uint64_t seed, int total_degree_cap = -1) {
  if (size == 0) throw InputError("random_gl needs size >= 1");
  const Ring& R = *ambient->ring();
  Rng rng(seed);
  GLCertificate acc = GLCertificate::identity(ambient, size);
  int budget = total_degree_cap < 0 ? degree_bound * static_cast<int>(length) : total_degree_cap;
  for (std::size_t step = 0; step < length; ++step) {
    if (size >= 2 && rng.chance(75)) {
      std::size_t i = rng.below(size), j = rng.below(size - 1);
      if (j >= i) ++j;
      int cap = std::max(0, std::min(degree_bound, budget));
      auto monos = monomials_up_to(ambient->nvars, cap);
      const Monomial& m = monos[rng.below(monos.size())];
      budget -= static_cast<int>(m.degree());
      auto f = SkewPoly::term(ambient, rng.nonzero_element(R), m);
      acc = acc * elementary(ambient, size, i, j, f);
    } else {
      std::vector<Elem> units(size);
      for (auto& u : units) u = rng.unit(R);
      acc = acc * unit_diagonal(ambient, units);
    }
  }
  return acc;
}

// -- block construction for presentation matrices -------------------------------

struct PatchingBlocks {
  SkewMatrix F;  ///< [[B, 0], [0, I_q], [0, 0]], size 2(p+q) x 2q
  SkewMatrix G;  ///< [[0, 0], [I_q, 0], [0, B(0)]]
};

inline PatchingBlocks block_build_patching(const SkewMatrix& B) {
  const std::size_t p = B.rows(), q = B.cols();
  const auto& A = B.ambient();
  SkewMatrix F(A, 2 * (p + q), 2 * q), G(A, 2 * (p + q), 2 * q);
  SkewMatrix B0 = eval_zero(B);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < q; ++j) {
      F(i, j) = B(i, j);
      G(p + 2 * q + i, q + j) = B0(i, j);
    }
  for (std::size_t t = 0; t < q; ++t) {
    F(p + t, q + t) = SkewPoly::one(A);
    G(p + q + t, t) = SkewPoly::one(A);
  }
  return {std::move(F), std::move(G)};
}

/// Row and column permutations with row_matrix * G * col_matrix == target.
struct PermutationPair {
  std::vector<std::size_t> rows;  ///< result row i is G row rows[i]
  std::vector<std::size_t> cols;  ///< result column j is G column cols[j]
  SkewMatrix row_matrix;
  SkewMatrix col_matrix;
};

/// Searches all column permutations (at most 8 columns) and matches rows greedily.
inline std::optional<PermutationPair> permutation_reduce(const SkewMatrix& G, const SkewMatrix& target) {
  if (G.rows() != target.rows() || G.cols() != target.cols()) return std::nullopt;
  if (G.cols() > 8) throw UnsupportedError("permutation search limited to 8 columns");
  const std::size_t r = G.rows(), c = G.cols();
  std::vector<std::size_t> cols(c);
  std::iota(cols.begin(), cols.end(), 0);
  do {
    std::vector<std::size_t> rows(r);
    std::vector<char> used(r, 0);
    bool ok = true;
    for (std::size_t i = 0; i < r && ok; ++i) {
      ok = false;
      for (std::size_t k = 0; k < r; ++k) {
        if (used[k]) continue;
        bool equal = true;
        for (std::size_t j = 0; j < c && equal; ++j) equal = G(k, cols[j]) == target(i, j);
        if (equal) {
          used[k] = 1;
          rows[i] = k;
          ok = true;
          break;
        }
      }
    }
    if (!ok) continue;
    PermutationPair out{rows, cols, SkewMatrix(G.ambient(), r, r), SkewMatrix(G.ambient(), c, c)};
    for (std::size_t i = 0; i < r; ++i) out.row_matrix(i, rows[i]) = SkewPoly::one(G.ambient());
    for (std::size_t j = 0; j < c; ++j) out.col_matrix(cols[j], j) = SkewPoly::one(G.ambient());
    if (out.row_matrix * G * out.col_matrix != target) continue;
    return out;
  } while (std::next_permutation(cols.begin(), cols.end()));
  return std::nullopt;
}

}  // namespace oreq
