#pragma once

// Reference implementations used only by tests. They touch the library
// through ring tables (add, mul, sigma) and term lists, never through the
// product or substitution code they check.

#include <algorithm>
#include <cstdint>
#include <map>
#include <ostream>
#include <set>
#include <utility>
#include <variant>
#include <vector>

#include "oreq/oreq.hpp"

namespace oreq {

// readable failure messages
inline void PrintTo(const SkewPoly& p, std::ostream* os) { *os << to_string(p); }
inline void PrintTo(const SkewMatrix& m, std::ostream* os) { *os << m.to_string(); }

}  // namespace oreq

namespace oracle {

using oreq::Elem;
using oreq::Ring;

/// Sparse polynomial: exponent vector -> left coefficient, zero entries dropped.
using Terms = std::map<std::vector<std::uint32_t>, Elem>;

inline Terms terms_of(const oreq::SkewPoly& p) {
  Terms t;
  for (const auto& [m, c] : p.terms()) t[m.exponents()] = c;
  return t;
}

inline void accumulate(const Ring& R, Terms& acc, const std::vector<std::uint32_t>& e, Elem c) {
  Elem v = R.add(acc.count(e) ? acc[e] : Elem{0}, c);
  if (v == 0) acc.erase(e);
  else acc[e] = v;
}

/// Letters of a word: a ring element or a variable index.
struct Letter {
  bool is_var;
  std::size_t value;
};

/// Normal form of a word by rewriting x_i r -> sigma(r) x_i until no variable
/// precedes a scalar, then multiplying the scalars and counting variables.
inline std::pair<std::vector<std::uint32_t>, Elem> rewrite(const oreq::Automorphism& sigma, std::size_t nvars,
                                                           std::vector<Letter> word) {
  const Ring& R = *sigma.ring();
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t k = 0; k + 1 < word.size(); ++k) {
      if (word[k].is_var && !word[k + 1].is_var) {
        Letter scalar{false, sigma.apply(static_cast<Elem>(word[k + 1].value))};
        word[k + 1] = word[k];
        word[k] = scalar;
        changed = true;
      }
    }
  }
  Elem c = R.one();
  std::vector<std::uint32_t> e(nvars, 0);
  for (const auto& l : word) {
    if (l.is_var) ++e[l.value];
    else c = R.mul(c, static_cast<Elem>(l.value));
  }
  return {e, c};
}

inline std::vector<Letter> word_of(Elem c, const std::vector<std::uint32_t>& e) {
  std::vector<Letter> w{{false, c}};
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::uint32_t k = 0; k < e[i]; ++k) w.push_back({true, i});
  return w;
}

/// Product by term rewriting.
inline Terms multiply(const oreq::Automorphism& sigma, std::size_t nvars, const Terms& p, const Terms& q) {
  const Ring& R = *sigma.ring();
  Terms out;
  for (const auto& [ea, a] : p)
    for (const auto& [eb, b] : q) {
      auto w = word_of(a, ea);
      auto w2 = word_of(b, eb);
      w.insert(w.end(), w2.begin(), w2.end());
      auto [e, c] = rewrite(sigma, nvars, std::move(w));
      accumulate(R, out, e, c);
    }
  return out;
}

/// p(s x) by rewriting a (s x_{i1}) (s x_{i2}) ...
inline Terms scale(const oreq::Automorphism& sigma, std::size_t nvars, const Terms& p, Elem s) {
  const Ring& R = *sigma.ring();
  Terms out;
  for (const auto& [e, a] : p) {
    std::vector<Letter> w{{false, a}};
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::uint32_t k = 0; k < e[i]; ++k) {
        w.push_back({false, s});
        w.push_back({true, i});
      }
    auto [m, c] = rewrite(sigma, nvars, std::move(w));
    accumulate(R, out, m, c);
  }
  return out;
}

inline std::uint64_t binomial(std::uint32_t n, std::uint32_t k) {
  std::uint64_t r = 1;
  for (std::uint32_t j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

/// p(x + y) over 2n variables by binomial expansion of each power.
inline Terms shift(const Ring& R, std::size_t nvars, const Terms& p) {
  Terms out;
  for (const auto& [e, a] : p) {
    // expand prod_i (x_i + y_i)^{e_i}
    std::vector<std::pair<std::vector<std::uint32_t>, std::uint64_t>> parts{{std::vector<std::uint32_t>(2 * nvars, 0), 1}};
    for (std::size_t i = 0; i < nvars; ++i) {
      std::vector<std::pair<std::vector<std::uint32_t>, std::uint64_t>> next;
      for (const auto& [m, c] : parts)
        for (std::uint32_t j = 0; j <= e[i]; ++j) {
          auto m2 = m;
          m2[i] = j;
          m2[nvars + i] = e[i] - j;
          next.emplace_back(m2, c * binomial(e[i], j));
        }
      parts = std::move(next);
    }
    for (const auto& [m, c] : parts) {
      Elem v = 0;
      for (std::uint64_t t = 0; t < c; ++t) v = R.add(v, a);
      accumulate(R, out, m, v);
    }
  }
  return out;
}

/// All ideals by checking every subset closed under + and R-multiples (|R| <= 16).
inline std::vector<std::vector<Elem>> ideals_by_subsets(const Ring& R) {
  const std::size_t n = R.size();
  std::vector<std::vector<Elem>> out;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    if (!(mask & 1u)) continue;  // must contain 0
    auto in = [&](Elem x) { return (mask >> x) & 1u; };
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a) {
      if (!in(static_cast<Elem>(a))) continue;
      for (std::size_t b = 0; b < n && ok; ++b) {
        if (in(static_cast<Elem>(b)) && !in(R.add(static_cast<Elem>(a), static_cast<Elem>(b)))) ok = false;
        if (!in(R.mul(static_cast<Elem>(a), static_cast<Elem>(b)))) ok = false;
      }
    }
    if (!ok) continue;
    std::vector<Elem> I;
    for (std::size_t x = 0; x < n; ++x)
      if (in(static_cast<Elem>(x))) I.push_back(static_cast<Elem>(x));
    out.push_back(std::move(I));
  }
  return out;
}

inline std::vector<std::vector<Elem>> maximal_by_subsets(const Ring& R) {
  auto all = ideals_by_subsets(R);
  std::vector<std::vector<Elem>> out;
  for (const auto& I : all) {
    if (I.size() == R.size()) continue;
    bool maximal = true;
    for (const auto& J : all)
      if (J.size() > I.size() && J.size() < R.size() && std::includes(J.begin(), J.end(), I.begin(), I.end()))
        maximal = false;
    if (maximal) out.push_back(I);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Every matrix with entries of degree <= d in one variable over a ring with |R|^(count) small.
inline std::vector<oreq::SkewMatrix> all_matrices(const oreq::AmbientPtr& A, std::size_t rows, std::size_t cols, int d) {
  const Ring& R = *A->ring();
  auto monos = oreq::monomials_up_to(A->nvars, d);
  const std::size_t slots = rows * cols * monos.size();
  std::vector<oreq::SkewMatrix> out;
  std::vector<Elem> digits(slots, 0);
  for (;;) {
    oreq::SkewMatrix M(A, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) {
        std::vector<oreq::SkewPoly::Term> t;
        for (std::size_t m = 0; m < monos.size(); ++m) {
          Elem c = digits[(i * cols + j) * monos.size() + m];
          if (c) t.emplace_back(monos[m], c);
        }
        M(i, j) = oreq::SkewPoly::from_terms(A, std::move(t));
      }
    out.push_back(std::move(M));
    std::size_t k = 0;
    while (k < slots && ++digits[k] == R.size()) digits[k++] = 0;
    if (k == slots) break;
  }
  return out;
}

}  // namespace oracle
