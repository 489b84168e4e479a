// oreq: command-line front end.
//
// Exit codes: 0 success / witness found, 1 not found within bound (or a
// certificate that fails verification), 2 input error, 3 precondition failure.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oreq/oreq.hpp"

namespace {

using namespace oreq;

constexpr int kFound = 0;
constexpr int kNotFound = 1;
constexpr int kInputError = 2;
constexpr int kPrecondition = 3;

struct Common {
  std::string ring;
  std::size_t nvars = 0;
  std::optional<std::uint64_t> seed;
  int bound = 2;
  std::size_t budget = 2000;
  std::string out;
  std::vector<std::string> polys;
  std::string scalar;
  std::size_t count = 5;
};

RingSpec default_ring() {
  auto R = Ring::zmod(6);
  return {R, Automorphism::identity(R)};
}

RingSpec ring_of(const Common& c) { return c.ring.empty() ? default_ring() : load_ring(c.ring); }

std::size_t max_variable(const std::string& text) {
  static const std::regex var("x([0-9]+)");
  std::size_t n = 0;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), var); it != std::sregex_iterator(); ++it)
    n = std::max<std::size_t>(n, std::stoul((*it)[1].str()));
  return n;
}

/// Ambient with n = -n, or the largest variable index in the given texts (at least 1).
AmbientPtr ambient_of(const Common& c, const std::vector<std::string>& texts) {
  auto spec = ring_of(c);
  std::size_t n = c.nvars;
  if (n == 0) {
    n = 1;
    for (const auto& t : texts) n = std::max(n, max_variable(t));
  }
  return make_ambient(spec.sigma, n);
}

std::vector<std::string> matrix_texts(const Json& j) {
  std::vector<std::string> out;
  if (j.is_object() && j.contains("entries") && j["entries"].is_array())
    for (const auto& r : j["entries"])
      if (r.is_array())
        for (const auto& e : r)
          if (e.is_string()) out.push_back(e.get<std::string>());
  return out;
}

/// All poly texts of a JSON document (matrices nested anywhere).
void collect_texts(const Json& j, std::vector<std::string>& out) {
  if (j.is_object()) {
    auto t = matrix_texts(j);
    out.insert(out.end(), t.begin(), t.end());
    for (const auto& [k, v] : j.items())
      if (k != "entries") collect_texts(v, out);
  }
}

void emit(const Common& c, const Json& j, const std::string& summary) {
  if (c.out.empty()) {
    std::cout << dump(j);
    std::cerr << summary << "\n";
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw InputError("cannot write " + c.out);
  f << dump(j);
  std::cout << summary << "\n";
}

std::uint64_t require_seed(const Common& c) {
  if (!c.seed) throw InputError("--seed is required for this command");
  return *c.seed;
}

void ring_options(CLI::App* app, Common& c) {
  app->add_option("--ring", c.ring, "ring descriptor JSON (relative names also searched in $OREQ_RING_DIR)");
  app->add_option("-n,--vars", c.nvars, "number of variables (default: inferred)");
}

void search_options(CLI::App* app, Common& c) {
  app->add_option("--bound", c.bound, "degree bound")->capture_default_str();
  app->add_option("--budget", c.budget, "candidates per solution set")->capture_default_str()->check(CLI::PositiveNumber);
  app->add_option("--out", c.out, "output file");
}

// -- ring -------------------------------------------------------------------------

int ring_check(const Common& c) {
  auto spec = ring_of(c);
  const Ring& R = *spec.ring;
  std::cout << "ring " << R.key() << ", " << R.size() << " elements, characteristic " << R.characteristic()
            << (R.is_field() ? ", field" : "") << "\n";
  if (R.size() <= 64) {
    for (std::size_t a = 0; a < R.size(); ++a)
      for (std::size_t b = 0; b < R.size(); ++b)
        for (std::size_t d = 0; d < R.size(); ++d) {
          Elem x = static_cast<Elem>(a), y = static_cast<Elem>(b), z = static_cast<Elem>(d);
          if (R.mul(R.mul(x, y), z) != R.mul(x, R.mul(y, z)) || R.mul(x, R.add(y, z)) != R.add(R.mul(x, y), R.mul(x, z)))
            throw Error("ring axioms fail");
        }
    std::cout << "axioms: checked exhaustively\n";
  }
  std::cout << "sigma " << spec.sigma.label() << ", order " << spec.sigma.order() << "\n";
  std::cout << "maximal ideals:";
  for (const auto& m : enumerate_maximal_ideals(spec.ring)) std::cout << " " << m.to_string();
  std::cout << "\n";
  if (auto w = clubsuit_check(spec.sigma)) {
    std::cout << "clubsuit: FAIL " << w->to_string() << "\n";
    return kPrecondition;
  }
  std::cout << "clubsuit: pass\n";
  return kFound;
}

// -- poly ---------------------------------------------------------------------------

void add_poly_commands(CLI::App& root, Common& c, std::function<int()>& action) {
  auto* poly = root.add_subcommand("poly", "polynomial arithmetic")->require_subcommand(1);

  auto* mul = poly->add_subcommand("mul", "product of two polynomials");
  mul->add_option("p", c.polys, "polynomials")->required()->expected(2);
  ring_options(mul, c);
  mul->callback([&] {
    action = [&] {
      auto A = ambient_of(c, c.polys);
      std::cout << to_string(parse_poly(c.polys[0], A) * parse_poly(c.polys[1], A)) << "\n";
      return kFound;
    };
  });

  auto* sub = poly->add_subcommand("subst-scale", "p(s x_1, ..., s x_n)");
  sub->add_option("p", c.polys, "polynomial")->required()->expected(1);
  sub->add_option("-s,--scalar", c.scalar, "ring element s")->required();
  ring_options(sub, c);
  sub->callback([&] {
    action = [&] {
      auto A = ambient_of(c, c.polys);
      std::size_t pos = 0;
      Elem s = A->ring()->parse_literal(c.scalar, pos);
      if (pos != c.scalar.size()) throw ParseError("trailing characters in scalar", pos);
      std::cout << to_string(scale_subst(parse_poly(c.polys[0], A), s)) << "\n";
      return kFound;
    };
  });

  auto* shift = poly->add_subcommand("subst-shift", "p(x + y), y_i written x_{n+i}");
  shift->add_option("p", c.polys, "polynomial")->required()->expected(1);
  ring_options(shift, c);
  shift->callback([&] {
    action = [&] {
      auto A = ambient_of(c, c.polys);
      std::cout << to_string(shift_subst(parse_poly(c.polys[0], A))) << "\n";
      return kFound;
    };
  });

  auto* ev = poly->add_subcommand("eval0", "constant term");
  ev->add_option("p", c.polys, "polynomial")->required()->expected(1);
  ring_options(ev, c);
  ev->callback([&] {
    action = [&] {
      auto A = ambient_of(c, c.polys);
      std::cout << A->ring()->name(const_term(parse_poly(c.polys[0], A))) << "\n";
      return kFound;
    };
  });
}

// -- mat ----------------------------------------------------------------------------

struct MatrixFiles {
  std::string a, b, matrix, target, cert, F, G, H, S;
};

SkewMatrix load_matrix(const std::string& path, const AmbientPtr& A) { return matrix_from_json(read_json_file(path), A); }

AmbientPtr ambient_for_files(const Common& c, const std::vector<std::string>& paths) {
  std::vector<std::string> texts;
  for (const auto& p : paths)
    if (!p.empty()) collect_texts(read_json_file(p), texts);
  return ambient_of(c, texts);
}

void add_mat_commands(CLI::App& root, Common& c, MatrixFiles& m, std::function<int()>& action) {
  auto* mat = root.add_subcommand("mat", "matrix operations")->require_subcommand(1);

  auto* mul = mat->add_subcommand("mul", "product a * b");
  mul->add_option("--a", m.a, "left matrix JSON")->required();
  mul->add_option("--b", m.b, "right matrix JSON")->required();
  ring_options(mul, c);
  mul->add_option("--out", c.out, "output file");
  mul->callback([&] {
    action = [&] {
      auto A = ambient_for_files(c, {m.a, m.b});
      auto P = load_matrix(m.a, A) * load_matrix(m.b, A);
      emit(c, matrix_to_json(P), "product " + std::to_string(P.rows()) + "x" + std::to_string(P.cols()));
      return kFound;
    };
  });

  auto* idem = mat->add_subcommand("idem", "is the matrix idempotent");
  idem->add_option("--matrix", m.matrix, "matrix JSON")->required();
  ring_options(idem, c);
  idem->callback([&] {
    action = [&] {
      auto A = ambient_for_files(c, {m.matrix});
      bool yes = is_idempotent(load_matrix(m.matrix, A));
      std::cout << (yes ? "idempotent" : "not idempotent") << "\n";
      return yes ? kFound : kNotFound;
    };
  });

  auto* ev = mat->add_subcommand("eval0", "F(0)");
  ev->add_option("--matrix", m.matrix, "matrix JSON")->required();
  ring_options(ev, c);
  ev->add_option("--out", c.out, "output file");
  ev->callback([&] {
    action = [&] {
      auto A = ambient_for_files(c, {m.matrix});
      emit(c, matrix_to_json(eval_zero(load_matrix(m.matrix, A))), "evaluated at 0");
      return kFound;
    };
  });
}

// -- cert ------------------------------------------------------------------------------

int report_certificate(const Common& c, const Certificate& cert, const std::string& what) {
  auto v = verify_certificate(cert);
  if (!v.pass) throw Error("internal: emitted certificate fails verification: " + v.message);
  emit(c, certificate_to_json(cert), what + " certificate found at bound " + std::to_string(cert.bound));
  return kFound;
}

int not_found(const std::string& what, int bound, std::size_t candidates) {
  std::cout << what << ": not found within bound " << bound << " (" << candidates << " candidates)\n";
  return kNotFound;
}

void add_cert_commands(CLI::App& root, Common& c, MatrixFiles& m, std::function<int()>& action) {
  auto* cert = root.add_subcommand("cert", "certificate search and verification")->require_subcommand(1);

  auto* sim = cert->add_subcommand("similar", "P with P F P^-1 = F(0)");
  sim->add_option("--matrix", m.matrix, "idempotent matrix JSON")->required();
  ring_options(sim, c);
  search_options(sim, c);
  sim->callback([&] {
    action = [&] {
      auto A = ambient_for_files(c, {m.matrix});
      auto F = load_matrix(m.matrix, A);
      auto r = similarity_certificate(F, c.bound, std::nullopt, c.budget);
      if (!r.found()) return not_found("similarity", c.bound, r.candidates);
      return report_certificate(c, Certificate::similarity(F, *r.value, c.bound), "similarity");
    };
  });

  auto* inter = cert->add_subcommand("intertwine", "nonzero P with F P = P F(0)");
  inter->add_option("--matrix", m.matrix, "idempotent matrix JSON")->required();
  ring_options(inter, c);
  search_options(inter, c);
  inter->callback([&] {
    action = [&] {
      auto A = ambient_for_files(c, {m.matrix});
      auto F = load_matrix(m.matrix, A);
      auto r = intertwiner_search(F, c.bound);
      if (!r.found()) return not_found("intertwiner", c.bound, r.candidates);
      return report_certificate(c, Certificate::intertwiner(F, *r.value, c.bound), "intertwiner");
    };
  });

  auto* eq = cert->add_subcommand("equiv", "invertible P, Q with F = P G Q");
  eq->add_option("--matrix", m.matrix, "matrix F")->required();
  eq->add_option("--target", m.target, "matrix G (default F(0))");
  eq->add_option("--seed", c.seed, "seed for the GL word search");
  ring_options(eq, c);
  search_options(eq, c);
  eq->callback([&] {
    action = [&] {
      auto seed = require_seed(c);
      auto A = ambient_for_files(c, {m.matrix, m.target});
      auto F = load_matrix(m.matrix, A);
      auto G = m.target.empty() ? eval_zero(F) : load_matrix(m.target, A);
      SearchBounds b;
      b.degree = c.bound;
      b.budget = c.budget;
      auto r = equivalence_certificate(F, G, b, seed);
      if (!r.found()) return not_found("equivalence", c.bound, r.candidates);
      return report_certificate(c, Certificate::equivalence(F, G, *r.value, c.bound), "equivalence");
    };
  });

  auto* fr = cert->add_subcommand("free", "U with U F U^-1 = diag(1..1, 0..0)");
  fr->add_option("--matrix", m.matrix, "idempotent matrix JSON")->required();
  ring_options(fr, c);
  search_options(fr, c);
  fr->callback([&] {
    action = [&] {
      auto A = ambient_for_files(c, {m.matrix});
      auto F = load_matrix(m.matrix, A);
      auto r = freeness_certificate(F, c.bound, c.budget);
      if (!r.found()) return not_found("freeness", c.bound, r.candidates);
      return report_certificate(c, Certificate::freeness(F, *r.value, c.bound),
                                "freeness (rank " + std::to_string(r.value->rank) + ")");
    };
  });

  auto* ver = cert->add_subcommand("verify", "recheck a certificate file");
  ver->add_option("--cert", m.cert, "certificate JSON")->required();
  ring_options(ver, c);
  ver->callback([&] {
    action = [&] {
      auto A = ambient_for_files(c, {m.cert});
      auto v = verify_certificate(certificate_from_json(read_json_file(m.cert), A));
      if (v.pass) {
        std::cout << "pass\n";
        return kFound;
      }
      std::cout << "fail: " << v.message << "\n";
      if (v.residual) std::cout << dump(matrix_to_json(*v.residual));
      return kNotFound;
    };
  });
}

// -- suite -----------------------------------------------------------------------------

std::vector<Elem> parse_elements(const Ring& R, const std::string& text) {
  std::vector<Elem> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    out.push_back(R.parse_literal(text, pos));
    while (pos < text.size() && text[pos] == ' ') ++pos;
    if (pos < text.size()) {
      if (text[pos] != ';' && text[pos] != ',') throw ParseError("expected ';' or ',' between elements", pos);
      ++pos;
    }
  }
  return out;
}

void add_suite_commands(CLI::App& root, Common& c, MatrixFiles& m, std::function<int()>& action) {
  auto* suite = root.add_subcommand("suite", "local-global suites")->require_subcommand(1);

  auto* vas = suite->add_subcommand("vaserstein", "F ~ F(0) globally and at every maximal ideal");
  vas->add_option("--matrix", m.matrix, "matrix F")->required();
  vas->add_option("--seed", c.seed, "seed");
  ring_options(vas, c);
  search_options(vas, c);
  vas->callback([&] {
    action = [&] {
      auto seed = require_seed(c);
      auto A = ambient_for_files(c, {m.matrix});
      SearchBounds b;
      b.degree = c.bound;
      b.budget = c.budget;
      auto r = vaserstein_suite(load_matrix(m.matrix, A), b, seed);
      std::size_t local_found = 0;
      for (const auto& l : r.locals) local_found += l.status != LocalStatus::not_found;
      emit(c, suite_to_json(r),
           std::string("global ") + (r.global ? "witness" : "not-found-within-bound") + ", local " +
               std::to_string(local_found) + "/" + std::to_string(r.locals.size()) + ", " +
               (r.consistent ? "consistent" : "inconsistent"));
      return r.global && r.consistent ? kFound : kNotFound;
    };
  });

  auto* pat = suite->add_subcommand("patching", "block construction for a presentation matrix, then the suite");
  pat->add_option("--matrix", m.matrix, "presentation matrix B")->required();
  pat->add_option("--seed", c.seed, "seed");
  ring_options(pat, c);
  search_options(pat, c);
  pat->callback([&] {
    action = [&] {
      auto seed = require_seed(c);
      auto A = ambient_for_files(c, {m.matrix});
      SearchBounds b;
      b.degree = c.bound;
      b.budget = c.budget;
      auto B = load_matrix(m.matrix, A);
      auto r = patching_suite(B, b, seed);
      emit(c, patching_to_json(r, B),
           std::string(r.extended() ? "extended" : "not-found-within-bound") + ", permutation verified, " +
               (r.suite.consistent ? "consistent" : "inconsistent"));
      return r.extended() && r.suite.consistent ? kFound : kNotFound;
    };
  });

  auto* lc = suite->add_subcommand("lemma-clear", "s in S with F(sX) G(sX) = H(sX)");
  lc->add_option("--F", m.F, "matrix F")->required();
  lc->add_option("--G", m.G, "matrix G")->required();
  lc->add_option("--H", m.H, "matrix H")->required();
  lc->add_option("--S", m.S, "multiplicative set, elements separated by ';' or ','")->required();
  ring_options(lc, c);
  lc->callback([&] {
    action = [&] {
      auto A = ambient_for_files(c, {m.F, m.G, m.H});
      MultiplicativeSet S(A->ring(), parse_elements(*A->ring(), m.S));
      Elem s = clear_denominators(load_matrix(m.F, A), load_matrix(m.G, A), load_matrix(m.H, A), S);
      std::cout << "s = " << A->ring()->name(s) << "\n";
      return kFound;
    };
  });
}

// -- demo ------------------------------------------------------------------------------

void add_demo_commands(CLI::App& root, Common& c, std::function<int()>& action) {
  auto* demo = root.add_subcommand("demo", "worked instance families")->require_subcommand(1);
  auto* qs = demo->add_subcommand("quillen-suslin", "free bases for generated idempotents over GF(q)[x1,x2; Frobenius]");
  qs->add_option("--seed", c.seed, "seed");
  qs->add_option("--count", c.count, "instances")->capture_default_str();
  ring_options(qs, c);
  qs->callback([&] {
    action = [&] {
      auto seed = require_seed(c);
      auto gf4 = Ring::galois(2, 2, {1, 1, 1});
      RingSpec spec = c.ring.empty() ? RingSpec{gf4, Automorphism::frobenius(gf4, 1)} : load_ring(c.ring);
      if (!spec.ring->is_field()) throw PreconditionError("demo needs a finite field");
      auto A = make_ambient(spec.sigma, c.nvars ? c.nvars : 2);
      int status = kFound;
      for (std::size_t k = 0; k < c.count; ++k) {
        auto g = generate_idempotent(A, seed + k);
        int bound = 2 * g.word_degree;
        auto r = freeness_certificate(g.F, bound);
        std::cout << "F = " << g.F.to_string() << "\n";
        if (!r.found()) {
          std::cout << "  not found within bound " << bound << "\n";
          status = kNotFound;
          continue;
        }
        auto v = verify_certificate(Certificate::freeness(g.F, *r.value, bound));
        std::cout << "  free of rank " << r.value->rank << ", U = " << r.value->U.P.to_string() << " ("
                  << (v.pass ? "verified" : "FAILED") << ")\n";
        if (!v.pass) status = kNotFound;
      }
      return status;
    };
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact arithmetic and certificates over R[x1..xn; sigma]"};
  app.require_subcommand(1);
  Common common;
  MatrixFiles files;
  std::function<int()> action;

  auto* ring = app.add_subcommand("ring", "ring descriptors")->require_subcommand(1);
  auto* check = ring->add_subcommand("check", "axioms, sigma order, maximal ideals, clubsuit");
  check->add_option("--ring", common.ring, "ring descriptor JSON")->required();
  check->callback([&] { action = [&] { return ring_check(common); }; });

  add_poly_commands(app, common, action);
  add_mat_commands(app, common, files, action);
  add_cert_commands(app, common, files, action);
  add_suite_commands(app, common, files, action);
  add_demo_commands(app, common, action);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }
  try {
    return action ? action() : kInputError;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kInputError;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const UnsupportedError& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kInputError;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return kPrecondition;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}
