// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "oracles.hpp"
#include "oreq/oreq.hpp"

using namespace oreq;

namespace {

struct Tally {
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string first_failure;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok && failures++ == 0) first_failure = what;
  }
};

bool run(int number, const char* title, double limit_seconds, const std::function<void(Tally&)>& body) {
  Tally t;
  auto start = std::chrono::steady_clock::now();
  try {
    body(t);
  } catch (const std::exception& e) {
    t.expect(false, std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool in_time = limit_seconds <= 0 || secs < limit_seconds;
  bool pass = t.failures == 0 && in_time;
  std::printf("criterion %d %s: %s  %zu/%zu checks", number, title, pass ? "PASS" : "FAIL", t.checks - t.failures,
              t.checks);
  if (limit_seconds > 0) std::printf(", %.2f s (limit %.0f s)", secs, limit_seconds);
  if (t.failures) std::printf(", first failure: %s", t.first_failure.c_str());
  if (!in_time) std::printf(", over time");
  std::printf("\n");
  std::fflush(stdout);
  return pass;
}

RingPtr gf4() { return Ring::galois(2, 2, {1, 1, 1}); }
AmbientPtr gf4_frob(std::size_t n) { return make_ambient(Automorphism::frobenius(gf4(), 1), n); }
AmbientPtr zmod(unsigned m, std::size_t n) { return make_ambient(Automorphism::identity(Ring::zmod(m)), n); }

SkewMatrix random_matrix(const AmbientPtr& A, std::size_t r, std::size_t c, int d, Rng& rng) {
  SkewMatrix out(A, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) out(i, j) = random_poly(A, d, rng);
  return out;
}

constexpr std::size_t kIdempotents = 100;

std::vector<GeneratedIdempotent> generated(const AmbientPtr& A) {
  std::vector<GeneratedIdempotent> out;
  for (std::uint64_t seed = 0; seed < kIdempotents; ++seed) out.push_back(generate_idempotent(A, seed, 3, 2));
  return out;
}

void oracle_mul(Tally& t) {
  for (const auto& A : {gf4_frob(2), zmod(6, 2)}) {
    Rng rng(1001);
    for (int k = 0; k < 1000; ++k) {
      auto p = random_poly(A, 4, rng), q = random_poly(A, 4, rng);
      t.expect(oracle::terms_of(p * q) == oracle::multiply(A->sigma, 2, oracle::terms_of(p), oracle::terms_of(q)),
               to_string(p) + " * " + to_string(q));
    }
  }
}

void homomorphisms(Tally& t) {
  for (const auto& A : {gf4_frob(2), zmod(6, 2)}) {
    const Ring& R = *A->ring();
    Rng rng(2002);
    std::vector<Elem> values;
    for (std::size_t k = 0; k < 5; ++k) values.push_back(static_cast<Elem>(k % R.size()));
    for (int k = 0; k < 500; ++k) {
      auto p = random_poly(A, 3, rng), q = random_poly(A, 3, rng);
      for (Elem s : values) {
        t.expect(scale_subst(p + q, s) == scale_subst(p, s) + scale_subst(q, s), "scale +");
        t.expect(scale_subst(p * q, s) == scale_subst(p, s) * scale_subst(q, s), "scale *");
      }
      t.expect(shift_subst(p + q) == shift_subst(p) + shift_subst(q), "shift +");
      t.expect(shift_subst(p * q) == shift_subst(p) * shift_subst(q), "shift *");
    }
    for (int k = 0; k < 200; ++k) {
      auto p = random_poly(A, 3, rng);
      Elem s = rng.element(R), u = rng.element(R);
      t.expect(scale_subst(scale_subst(p, s), u) == scale_subst(p, R.mul(s, u)), "scale composition");
    }
  }
}

void lemma_instances(Tally& t) {
  auto A = zmod(6, 2);
  MultiplicativeSet S(A->ring(), {1, 3});
  Rng rng(3003);
  auto monos = monomials_up_to(2, 2);
  for (int k = 0; k < 100; ++k) {
    std::size_t r = 1 + rng.below(3), m = 1 + rng.below(3), c = 1 + rng.below(3);
    auto F = random_matrix(A, r, m, 2, rng), G = random_matrix(A, m, c, 2, rng);
    // D vanishes at 0 and is killed by 3, so F G = H holds after inverting S
    SkewMatrix D(A, r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) {
        std::vector<SkewPoly::Term> terms;
        for (std::size_t a = 1; a < monos.size(); ++a) terms.emplace_back(monos[a], static_cast<Elem>(2 * rng.below(3)));
        D(i, j) = SkewPoly::from_terms(A, std::move(terms));
      }
    SkewMatrix H = F * G + D;
    Elem s = clear_denominators(F, G, H, S);
    t.expect(S.contains(s), "s outside S");
    t.expect(scale_subst(F, s) * scale_subst(G, s) == scale_subst(H, s), "F(sX) G(sX) != H(sX)");
  }
}

void roundtrip(Tally& t, const std::vector<GeneratedIdempotent>& gens) {
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const auto& g = gens[k];
    int bound = 2 * g.word_degree;
    std::string tag = "seed " + std::to_string(k);
    auto sim = similarity_certificate(g.F, bound);
    t.expect(sim.found(), tag + ": similarity not found");
    if (sim.found()) {
      auto v = verify_certificate(Certificate::similarity(g.F, *sim.value, bound));
      t.expect(v.pass, tag + ": " + v.message);
    }
    auto in = intertwiner_search(g.F, bound);
    t.expect(in.found(), tag + ": intertwiner not found");
    if (in.found()) {
      auto v = verify_certificate(Certificate::intertwiner(g.F, *in.value, bound));
      t.expect(v.pass, tag + ": " + v.message);
    }
  }
}

void consistency(Tally& t, const std::vector<GeneratedIdempotent>& gens) {
  auto check = [&](const SuiteReport& r, const std::string& tag) {
    t.expect(r.consistent, tag + ": inconsistent");
    if (r.global)
      for (const auto& l : r.locals)
        t.expect(l.status == LocalStatus::localized_global && l.verified, tag + ": localized witness fails at " +
                                                                              l.ideal.to_string());
  };
  auto Z4 = zmod(4, 1);
  auto r4 = vaserstein_suite(SkewMatrix::parse(Z4, {{"1 + 2*x1"}}), SearchBounds{}, 1);
  t.expect(r4.global.has_value(), "Z/4: global not found");
  check(r4, "Z/4");
  auto Z6 = zmod(6, 1);
  auto r6 = vaserstein_suite(SkewMatrix::parse(Z6, {{"1 + 2*x1"}}), SearchBounds{}, 1);
  t.expect(!r6.global.has_value(), "Z/6: global witness reported");
  check(r6, "Z/6");
  bool saw = false;
  for (const auto& l : r6.locals)
    if (l.ideal.elements == std::vector<Elem>{0, 3}) {
      saw = true;
      t.expect(l.status == LocalStatus::not_found, "Z/6: local witness at {0,3}");
    } else {
      t.expect(l.status == LocalStatus::witness && l.verified, "Z/6: no witness at " + l.ideal.to_string());
    }
  t.expect(saw, "Z/6: ideal {0,3} missing");
  for (std::size_t k = 0; k < gens.size(); ++k) {
    SearchBounds b;
    b.degree = 2 * gens[k].word_degree;
    auto r = vaserstein_suite(gens[k].F, b, k);
    t.expect(r.global.has_value(), "idempotent " + std::to_string(k) + ": global not found");
    check(r, "idempotent " + std::to_string(k));
  }
}

void blocks(Tally& t) {
  auto A = gf4_frob(2);
  Rng rng(6006);
  for (int k = 0; k < 50; ++k) {
    std::size_t p = 1 + rng.below(3), q = 1 + rng.below(3);
    auto B = random_matrix(A, p, q, 2, rng);
    auto b = block_build_patching(B);
    auto F0 = eval_zero(b.F);
    auto perm = permutation_reduce(b.G, F0);
    t.expect(perm.has_value(), "no permutation for " + B.to_string());
    if (!perm) continue;
    SkewMatrix G2(A, F0.rows(), F0.cols());
    for (std::size_t i = 0; i < F0.rows(); ++i)
      for (std::size_t j = 0; j < F0.cols(); ++j) G2(i, j) = b.G(perm->rows[i], perm->cols[j]);
    t.expect(G2 == F0, "index permutation mismatch");
    t.expect(perm->row_matrix * b.G * perm->col_matrix == F0, "permutation matrices mismatch");
  }
}

void freeness(Tally& t, const std::vector<GeneratedIdempotent>& gens) {
  for (std::size_t k = 0; k < gens.size(); ++k) {
    int bound = 2 * gens[k].word_degree;
    auto r = freeness_certificate(gens[k].F, bound);
    t.expect(r.found(), "seed " + std::to_string(k) + ": freeness not found");
    if (r.found()) {
      auto v = verify_certificate(Certificate::freeness(gens[k].F, *r.value, bound));
      t.expect(v.pass, "seed " + std::to_string(k) + ": " + v.message);
    }
  }
}

void clubsuit(Tally& t) {
  auto z3 = Ring::zmod(3);
  auto mixed_ring = Ring::product({z3, gf4()});
  std::vector<Automorphism> good{
      Automorphism::identity(Ring::zmod(6)),    Automorphism::identity(Ring::zmod(4)),
      Automorphism::identity(Ring::zmod(12)),   Automorphism::identity(gf4()),
      Automorphism::frobenius(gf4(), 1),        Automorphism::frobenius(Ring::galois(2, 3, {1, 1, 0, 1}), 1),
      Automorphism::frobenius(Ring::galois(3, 2, {2, 2, 1}), 1),
      Automorphism::product(mixed_ring, {Automorphism::identity(z3), Automorphism::frobenius(gf4(), 1)})};
  for (const auto& s : good) {
    t.expect(!clubsuit_check(s).has_value(), "clubsuit fails on " + s.ring()->key());
    for (const auto& m : enumerate_maximal_ideals(s.ring()))
      t.expect(MultiplicativeSet::complement_of(m).is_sigma_stable(s), "unstable complement " + m.to_string());
  }
  auto F2 = Ring::zmod(2);
  auto R = Ring::product({F2, F2});
  auto swap = Automorphism::product(R, {Automorphism::identity(F2), Automorphism::identity(F2)}, {1, 0});
  auto w = clubsuit_check(swap);
  t.expect(w.has_value(), "swap passes");
  if (w) {
    t.expect(R->name(w->s) == "[1,0]", "witness s = " + R->name(w->s));
    t.expect(w->ideal.elements == std::vector<Elem>{R->parse("[0,0]"), R->parse("[0,1]")},
             "witness ideal " + w->ideal.to_string());
  }
}

void determinism(Tally& t, const std::vector<GeneratedIdempotent>& gens) {
  auto mixed_ring = Ring::product({Ring::zmod(3), gf4()});
  auto mixed = Automorphism::product(mixed_ring, {Automorphism::identity(Ring::zmod(3)), Automorphism::frobenius(gf4(), 1)});
  for (const auto& A : {gf4_frob(2), zmod(6, 2), make_ambient(mixed, 2)}) {
    Rng rng(9009);
    for (int k = 0; k < 200; ++k) {
      auto p = random_poly(A, 4, rng, 40);
      auto text = to_string(p);
      auto q = parse_poly(text, A);
      t.expect(q == p && to_string(q) == text, "fixpoint: " + text);
    }
  }
  auto Z6 = zmod(6, 1);
  auto F = SkewMatrix::parse(Z6, {{"1 + 2*x1"}});
  t.expect(dump(suite_to_json(vaserstein_suite(F, SearchBounds{}, 77))) ==
               dump(suite_to_json(vaserstein_suite(F, SearchBounds{}, 77))),
           "Z/6 suite report differs");
  for (std::size_t k = 0; k < 10; ++k) {
    SearchBounds b;
    b.degree = 2 * gens[k].word_degree;
    t.expect(dump(suite_to_json(vaserstein_suite(gens[k].F, b, k))) ==
                 dump(suite_to_json(vaserstein_suite(gens[k].F, b, k))),
             "suite report differs for idempotent " + std::to_string(k));
  }
  auto B = SkewMatrix::parse(gf4_frob(1), {{"x1", "w"}});
  t.expect(dump(patching_to_json(patching_suite(B, SearchBounds{}, 3), B)) ==
               dump(patching_to_json(patching_suite(B, SearchBounds{}, 3), B)),
           "patching report differs");
}

}  // namespace

int main() {
  auto A = gf4_frob(2);
  auto gens = generated(A);
  bool ok = true;
  ok &= run(1, "twisted product vs rewriting oracle", 5, oracle_mul);
  ok &= run(2, "substitution homomorphisms", 10, homomorphisms);
  ok &= run(3, "denominator clearing", 10, lemma_instances);
  ok &= run(4, "idempotent similarity roundtrip", 120, [&](Tally& t) { roundtrip(t, gens); });
  ok &= run(5, "local-global consistency", 60, [&](Tally& t) { consistency(t, gens); });
  ok &= run(6, "block construction permutation", 10, blocks);
  ok &= run(7, "freeness witnesses", 120, [&](Tally& t) { freeness(t, gens); });
  ok &= run(8, "clubsuit condition", 0, clubsuit);
  ok &= run(9, "IO determinism", 0, [&](Tally& t) { determinism(t, gens); });
  std::printf("%s\n", ok ? "all criteria pass" : "some criteria fail");
  return ok ? 0 : 1;
}
