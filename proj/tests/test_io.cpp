#include <gtest/gtest.h>

#include <cstdlib>

#include "oracles.hpp"
#include "oreq/oreq.hpp"

using namespace oreq;

namespace {

AmbientPtr gf4_frob(std::size_t n) {
  return make_ambient(Automorphism::frobenius(Ring::galois(2, 2, {1, 1, 1}), 1), n);
}
AmbientPtr z6(std::size_t n) { return make_ambient(Automorphism::identity(Ring::zmod(6)), n); }

std::string samples() { return OREQ_SAMPLES_DIR; }

}  // namespace

TEST(PolyText, Examples) {
  auto A = z6(2);
  EXPECT_EQ(to_string(parse_poly("7*x1", A)), "x1");
  EXPECT_EQ(to_string(parse_poly("2*x1^2*x2 + 3", A)), "2*x1^2*x2 + 3");
  EXPECT_EQ(to_string(parse_poly("x2 + x1 + x1", A)), "2*x1 + x2");
  EXPECT_EQ(to_string(parse_poly("0", A)), "0");
  EXPECT_EQ(to_string(parse_poly("3*x1 + 3*x1", A)), "0");
  EXPECT_EQ(to_string(parse_poly("x1*x1*x2^0", A)), "x1^2");
  auto B = gf4_frob(1);
  EXPECT_EQ(to_string(parse_poly("(w+1)*x1 + w", B)), "(w+1)*x1 + w");
  EXPECT_EQ(to_string(parse_poly("x1 - x1", B)), "0");
}

TEST(PolyText, Errors) {
  auto A = z6(2);
  for (const char* bad : {"1 + * x1", "", "x1^", "x3", "x0", "2**x1", "x1 +", "y1", "(1"})
    EXPECT_THROW(parse_poly(bad, A), InputError) << bad;
  try {
    parse_poly("1 + * x1", A);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("position"), std::string::npos);
  }
}

TEST(PolyText, PrintParseFixpoint) {
  auto R = Ring::product({Ring::zmod(3), Ring::galois(2, 2, {1, 1, 1})});
  auto mixed = Automorphism::product(
      R, {Automorphism::identity(Ring::zmod(3)), Automorphism::frobenius(Ring::galois(2, 2, {1, 1, 1}), 1)});
  for (const auto& A : {gf4_frob(2), z6(3), make_ambient(mixed, 2)}) {
    Rng rng(51);
    for (int k = 0; k < 100; ++k) {
      auto p = random_poly(A, 4, rng, 30);
      auto text = to_string(p);
      auto q = parse_poly(text, A);
      EXPECT_EQ(q, p) << text;
      EXPECT_EQ(to_string(q), text);
    }
  }
}

TEST(RingJson, Descriptors) {
  auto gf4 = ring_spec_from_json(Json::parse(R"({"kind":"galois","p":2,"k":2,"minpoly":[1,1,1],"automorphism":{"frobenius":1}})"));
  EXPECT_EQ(gf4.ring->size(), 4u);
  EXPECT_EQ(gf4.sigma.order(), 2u);
  auto z = ring_spec_from_json(Json::parse(R"({"kind":"zmod","m":6})"));
  EXPECT_EQ(z.ring->size(), 6u);
  EXPECT_EQ(z.sigma.order(), 1u);
  auto sw = load_ring(samples() + "/swap_f2f2.json");
  EXPECT_TRUE(clubsuit_check(sw.sigma).has_value());
  for (const char* bad : {R"({"kind":"zmod"})", R"({"kind":"field","m":2})", R"({"kind":"zmod","m":"x"})",
                          R"({"kind":"zmod","m":6,"automorphism":"twist"})",
                          R"({"kind":"zmod","m":6,"automorphism":{"swap+components":["identity"]}})"})
    EXPECT_THROW(ring_spec_from_json(Json::parse(bad)), InputError) << bad;
  EXPECT_EQ(ring_spec_from_json(ring_to_json(*gf4.ring)).ring->size(), 4u);
}

TEST(RingJson, ResolvesRelativePaths) {
  EXPECT_THROW(load_ring("definitely_missing_ring.json"), InputError);
  setenv("OREQ_RING_DIR", samples().c_str(), 1);
  EXPECT_EQ(load_ring("z4.json").ring->size(), 4u);
  unsetenv("OREQ_RING_DIR");
}

TEST(MatrixJson, RoundTrip) {
  auto A = gf4_frob(2);
  Rng rng(3);
  for (int k = 0; k < 30; ++k) {
    SkewMatrix m(A, 2, 3);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 3; ++j) m(i, j) = random_poly(A, 2, rng);
    EXPECT_EQ(matrix_from_json(Json::parse(matrix_to_json(m).dump()), A), m);
  }
  auto F = matrix_from_json(read_json_file(samples() + "/F_idem.json"), gf4_frob(1));
  EXPECT_TRUE(is_idempotent(F));
  EXPECT_THROW(matrix_from_json(Json::parse(R"({"rows":1,"cols":2,"entries":[["1"]]})"), A), InputError);
}

TEST(CertificateJson, RoundTripAndVerify) {
  auto A = gf4_frob(1);
  auto F = matrix_from_json(read_json_file(samples() + "/F_idem.json"), A);
  auto sim = similarity_certificate(F, 1);
  auto fr = freeness_certificate(F, 1);
  auto in = intertwiner_search(F, 1);
  ASSERT_TRUE(sim.found() && fr.found() && in.found());
  for (const auto& c : {Certificate::similarity(F, *sim.value, 1), Certificate::freeness(F, *fr.value, 1),
                        Certificate::intertwiner(F, *in.value, 1)}) {
    auto back = certificate_from_json(Json::parse(dump(certificate_to_json(c))), A);
    EXPECT_EQ(back.kind, c.kind);
    EXPECT_EQ(back.P, c.P);
    EXPECT_TRUE(verify_certificate(back).pass);
  }
  auto tampered = certificate_from_json(read_json_file(samples() + "/tampered_similarity.json"), A);
  EXPECT_FALSE(verify_certificate(tampered).pass);
}

TEST(SuiteJson, DeterministicForSeed) {
  auto A = z6(1);
  auto F = SkewMatrix::parse(A, {{"1 + 2*x1"}});
  auto a = dump(suite_to_json(vaserstein_suite(F, SearchBounds{}, 9)));
  auto b = dump(suite_to_json(vaserstein_suite(F, SearchBounds{}, 9)));
  EXPECT_EQ(a, b);
  auto j = Json::parse(a);
  EXPECT_EQ(j["global"]["status"], "not-found-within-bound");
  ASSERT_EQ(j["locals"].size(), 2u);
  EXPECT_EQ(j["locals"][0]["status"], "witness");
  EXPECT_EQ(j["locals"][1]["status"], "not-found-within-bound");
}
