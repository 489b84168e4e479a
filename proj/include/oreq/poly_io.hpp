#pragma once

// Polynomial text grammar (whitespace insignificant):
//
//   poly   := ['-'] term { ('+' | '-') term }
//   term   := factor { '*' factor }
//   factor := coeff | var
//   var    := 'x' index [ '^' exponent ]
//   coeff  := ring literal, e.g. 3, w, (w+1), [1,0]
//
// Coefficients must precede every variable of their term. Canonical output
// lists terms in decreasing grlex order joined by " + ", omits unit
// coefficients in front of monomials, and parenthesizes compound literals:
// "2*x1^2*x2 + 3", "(w+1)*x1 + w".

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "oreq/errors.hpp"
#include "oreq/skew_poly.hpp"

namespace oreq {

namespace detail {

inline void skip_ws(std::string_view t, std::size_t& pos) {
  while (pos < t.size() && std::isspace(static_cast<unsigned char>(t[pos]))) ++pos;
}

inline std::uint32_t parse_index(std::string_view t, std::size_t& pos) {
  skip_ws(t, pos);
  std::size_t start = pos;
  unsigned long long v = 0;
  while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) {
    v = v * 10 + static_cast<unsigned long long>(t[pos] - '0');
    if (v > 1000000) throw ParseError("number too large", start);
    ++pos;
  }
  if (pos == start) throw ParseError("expected digits", start);
  return static_cast<std::uint32_t>(v);
}

inline SkewPoly parse_term(std::string_view t, std::size_t& pos, const AmbientPtr& ambient) {
  const Ring& R = *ambient->ring();
  Elem coeff = R.one();
  std::vector<std::uint32_t> exps(ambient->nvars, 0);
  bool seen_variable = false;
  for (bool first = true;; first = false) {
    if (!first) {
      skip_ws(t, pos);
      if (pos >= t.size() || t[pos] != '*') break;
      ++pos;
    }
    skip_ws(t, pos);
    if (pos >= t.size()) throw ParseError("unexpected end of input", pos);
    if (t[pos] == 'x') {
      std::size_t at = pos++;
      std::uint32_t idx = parse_index(t, pos);
      if (idx == 0 || idx > ambient->nvars) {
        throw ParseError("variable x" + std::to_string(idx) + " outside x1..x" + std::to_string(ambient->nvars), at);
      }
      std::uint32_t e = 1;
      std::size_t look = pos;
      skip_ws(t, look);
      if (look < t.size() && t[look] == '^') {
        pos = look + 1;
        e = parse_index(t, pos);
      }
      exps[idx - 1] += e;
      seen_variable = true;
    } else {
      std::size_t at = pos;
      if (seen_variable) throw ParseError("coefficients must be written left of monomials", at);
      Elem c = R.parse_literal(t, pos);
      coeff = R.mul(coeff, c);
    }
  }
  return SkewPoly::term(ambient, coeff, Monomial(std::move(exps)));
}

inline std::string coefficient_text(const Ring& R, Elem c) {
  const std::string& name = R.name(c);
  bool compound = name.find('+') != std::string::npos;
  return compound ? "(" + name + ")" : name;
}

}  // namespace detail

inline SkewPoly parse_poly(std::string_view text, const AmbientPtr& ambient) {
  std::size_t pos = 0;
  SkewPoly acc(ambient);
  bool negate = false;
  detail::skip_ws(text, pos);
  if (pos < text.size() && text[pos] == '-') {
    negate = true;
    ++pos;
  }
  for (;;) {
    SkewPoly term = detail::parse_term(text, pos, ambient);
    acc = negate ? acc - term : acc + term;
    detail::skip_ws(text, pos);
    if (pos >= text.size()) break;
    if (text[pos] == '+') {
      negate = false;
    } else if (text[pos] == '-') {
      negate = true;
    } else {
      throw ParseError("unexpected character '" + std::string(1, text[pos]) + "'", pos);
    }
    ++pos;
  }
  return acc;
}

inline std::string monomial_text(const Monomial& m) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += "x" + std::to_string(i + 1);
    if (m[i] > 1) out += "^" + std::to_string(m[i]);
  }
  return out;
}

inline std::string to_string(const SkewPoly& p) {
  if (p.is_zero()) return "0";
  const Ring& R = p.ring();
  std::string out;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    if (!out.empty()) out += " + ";
    if (m.is_one()) {
      out += p.terms().size() == 1 ? R.name(c) : detail::coefficient_text(R, c);
    } else if (c == R.one()) {
      out += monomial_text(m);
    } else {
      out += detail::coefficient_text(R, c) + "*" + monomial_text(m);
    }
  }
  return out;
}

}  // namespace oreq
