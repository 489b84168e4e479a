#include <gtest/gtest.h>

#include <numeric>

#include "oracles.hpp"
#include "oreq/oreq.hpp"

using namespace oreq;

namespace {

RingPtr gf4() { return Ring::galois(2, 2, {1, 1, 1}); }
RingPtr f2f2() { return Ring::product({Ring::zmod(2), Ring::zmod(2)}); }

std::vector<RingPtr> small_rings() {
  return {Ring::zmod(2), Ring::zmod(4), Ring::zmod(6), Ring::zmod(12), gf4(), Ring::galois(3, 2, {1, 0, 1}),
          Ring::galois(2, 3, {1, 1, 0, 1}), f2f2(), Ring::product({Ring::zmod(3), gf4()})};
}

RingElement el(const RingPtr& R, const char* text) { return RingElement::parse(R, text); }

}  // namespace

TEST(RingArithmetic, ModularReduction) {
  auto R = Ring::zmod(6);
  EXPECT_EQ((el(R, "4") + el(R, "5")).to_string(), "3");
  EXPECT_TRUE(el(R, "5").is_unit());
  EXPECT_EQ(el(R, "5").inverse().to_string(), "5");
  EXPECT_FALSE(el(R, "2").is_unit());
  EXPECT_THROW((void)el(R, "2").inverse(), PreconditionError);
  EXPECT_EQ(el(R, "7").to_string(), "1");
  EXPECT_EQ((-el(R, "1")).to_string(), "5");
}

TEST(RingArithmetic, GaloisReduction) {
  auto R = gf4();
  EXPECT_EQ((el(R, "w") * el(R, "w")).to_string(), "w+1");
  EXPECT_EQ((el(R, "w") * el(R, "w+1")).to_string(), "1");
  EXPECT_EQ((el(R, "w") + el(R, "w")).to_string(), "0");
  EXPECT_TRUE(R->is_field());
}

TEST(RingArithmetic, DescriptorMismatch) {
  EXPECT_THROW((void)(el(Ring::zmod(6), "1") + el(Ring::zmod(4), "1")), InputError);
  // structurally equal descriptors interoperate
  EXPECT_EQ((el(Ring::zmod(6), "2") * el(Ring::zmod(6), "4")).to_string(), "2");
}

TEST(RingArithmetic, ProductLiterals) {
  auto R = f2f2();
  EXPECT_EQ(R->size(), 4u);
  EXPECT_EQ((el(R, "[1,0]") + el(R, "[1,1]")).to_string(), "[0,1]");
  EXPECT_EQ((el(R, "[1,0]") * el(R, "[0,1]")).to_string(), "[0,0]");
  EXPECT_EQ(el(R, "1").to_string(), "[1,1]");
}

TEST(RingArithmetic, BadInput) {
  EXPECT_THROW(Ring::zmod(0), InputError);
  EXPECT_THROW(Ring::zmod(300), Error);
  EXPECT_THROW(Ring::galois(4, 1, {0, 1}), InputError);
  EXPECT_THROW(Ring::galois(2, 2, {1, 0, 1}), Error);  // x^2 + 1 = (x+1)^2 over F2
  EXPECT_THROW(el(gf4(), "v"), ParseError);
}

TEST(RingAxioms, ExhaustiveOnSmallRings) {
  auto rings = small_rings();
  rings.push_back(Ring::zmod(64));
  rings.push_back(Ring::galois(2, 6, {1, 1, 0, 0, 0, 0, 1}));
  rings.push_back(Ring::product({Ring::zmod(4), Ring::zmod(4), Ring::zmod(2)}));
  for (const auto& R : rings) {
    const auto n = R->size();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        Elem x = static_cast<Elem>(a), y = static_cast<Elem>(b);
        ASSERT_EQ(R->add(x, y), R->add(y, x)) << R->key();
        ASSERT_EQ(R->mul(x, y), R->mul(y, x)) << R->key();
        for (std::size_t c = 0; c < n; ++c) {
          Elem z = static_cast<Elem>(c);
          ASSERT_EQ(R->mul(R->mul(x, y), z), R->mul(x, R->mul(y, z))) << R->key();
          ASSERT_EQ(R->add(R->add(x, y), z), R->add(x, R->add(y, z))) << R->key();
          ASSERT_EQ(R->mul(x, R->add(y, z)), R->add(R->mul(x, y), R->mul(x, z))) << R->key();
        }
      }
    for (std::size_t a = 0; a < n; ++a) {
      Elem x = static_cast<Elem>(a);
      EXPECT_EQ(R->add(x, 0), x);
      EXPECT_EQ(R->mul(x, R->one()), x);
      EXPECT_EQ(R->add(x, R->neg(x)), 0);
      if (R->is_unit(x)) {
        EXPECT_EQ(R->mul(x, R->inv(x)), R->one());
      }
    }
    // names are canonical: distinct and reparseable
    std::set<std::string> names;
    for (std::size_t a = 0; a < n; ++a) {
      names.insert(R->name(static_cast<Elem>(a)));
      EXPECT_EQ(R->parse(R->name(static_cast<Elem>(a))), a) << R->key();
    }
    EXPECT_EQ(names.size(), n);
  }
}

TEST(RingDivision, DivideIsExact) {
  for (const auto& R : small_rings()) {
    for (std::size_t a = 0; a < R->size(); ++a)
      for (std::size_t b = 0; b < R->size(); ++b) {
        Elem x = static_cast<Elem>(a), y = static_cast<Elem>(b);
        bool brute = false;
        for (std::size_t c = 0; c < R->size(); ++c) brute = brute || R->mul(x, static_cast<Elem>(c)) == y;
        auto q = R->divide(y, x);
        ASSERT_EQ(q.has_value(), brute) << R->key();
        if (q) {
          EXPECT_EQ(R->mul(x, *q), y);
        }
      }
  }
}

TEST(Automorphism, FrobeniusOnGF4) {
  auto R = gf4();
  auto f = Automorphism::frobenius(R, 1);
  Elem w = R->parse("w");
  EXPECT_EQ(f.apply(w, 0), w);
  EXPECT_EQ(R->name(f.apply(w, 1)), "w+1");
  EXPECT_EQ(f.apply(w, 2), w);
  EXPECT_EQ(f.order(), 2);
  EXPECT_EQ(f.apply(w, -1), f.apply(w, 1));
}

TEST(Automorphism, LawsOnEveryDescriptor) {
  std::vector<Automorphism> autos;
  for (const auto& R : small_rings()) autos.push_back(Automorphism::identity(R));
  autos.push_back(Automorphism::frobenius(gf4(), 1));
  autos.push_back(Automorphism::frobenius(Ring::galois(3, 2, {1, 0, 1}), 1));
  autos.push_back(Automorphism::frobenius(Ring::galois(2, 3, {1, 1, 0, 1}), 1));
  autos.push_back(Automorphism::frobenius(Ring::galois(2, 3, {1, 1, 0, 1}), 2));
  auto P = f2f2();
  autos.push_back(Automorphism::product(P, {Automorphism::identity(Ring::zmod(2)), Automorphism::identity(Ring::zmod(2))}, {1, 0}));
  for (const auto& s : autos) {
    const Ring& R = *s.ring();
    std::vector<char> hit(R.size(), 0);
    for (std::size_t a = 0; a < R.size(); ++a) {
      Elem x = static_cast<Elem>(a);
      hit[s.apply(x)] = 1;
      // d-fold composition is the identity
      Elem y = x;
      for (int k = 0; k < s.order(); ++k) y = s.apply(y);
      EXPECT_EQ(y, x) << s.label();
      for (std::size_t b = 0; b < R.size(); ++b) {
        Elem z = static_cast<Elem>(b);
        ASSERT_EQ(s.apply(R.mul(x, z)), R.mul(s.apply(x), s.apply(z)));
        ASSERT_EQ(s.apply(R.add(x, z)), R.add(s.apply(x), s.apply(z)));
      }
    }
    EXPECT_EQ(s.apply(R.one()), R.one());
    EXPECT_TRUE(std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; })) << s.label();
  }
}

TEST(Automorphism, OrderIsMinimal) {
  auto R = Ring::galois(2, 3, {1, 1, 0, 1});
  EXPECT_EQ(Automorphism::frobenius(R, 1).order(), 3);
  EXPECT_EQ(Automorphism::frobenius(R, 3).order(), 1);
  EXPECT_TRUE(Automorphism::frobenius(R, 3).is_identity());
}

TEST(Automorphism, RejectsNonHomomorphism) {
  auto R = Ring::zmod(3);
  EXPECT_THROW(Automorphism::from_table(R, {0, 2, 1}), Error);  // negation does not fix 1
  EXPECT_THROW(Automorphism::from_table(R, {0, 1, 1}), Error);
}

TEST(MaximalIdeals, KnownLists) {
  auto names = [](const std::vector<MaximalIdeal>& ms) {
    std::vector<std::string> out;
    for (const auto& m : ms) out.push_back(m.to_string());
    return out;
  };
  EXPECT_EQ(names(enumerate_maximal_ideals(gf4())), std::vector<std::string>{"{0}"});
  EXPECT_EQ(names(enumerate_maximal_ideals(Ring::zmod(6))), (std::vector<std::string>{"{0,2,4}", "{0,3}"}));
  EXPECT_EQ(names(enumerate_maximal_ideals(Ring::zmod(4))), std::vector<std::string>{"{0,2}"});
}

TEST(MaximalIdeals, AgreeWithSubsetEnumeration) {
  for (const auto& R : small_rings()) {
    if (R->size() > 16) continue;
    auto brute = oracle::maximal_by_subsets(*R);
    std::vector<std::vector<Elem>> found;
    for (const auto& m : enumerate_maximal_ideals(R)) found.push_back(m.elements);
    std::sort(found.begin(), found.end());
    EXPECT_EQ(found, brute) << R->key();
    auto ideals = oracle::ideals_by_subsets(*R);
    EXPECT_EQ(enumerate_ideals(*R).size(), ideals.size()) << R->key();
    // every proper ideal lies in some maximal one
    for (const auto& I : ideals) {
      if (I.size() == R->size()) continue;
      bool covered = false;
      for (const auto& m : found) covered = covered || std::includes(m.begin(), m.end(), I.begin(), I.end());
      EXPECT_TRUE(covered);
    }
  }
}

TEST(Clubsuit, IdentityAndFrobeniusPass) {
  for (const auto& R : small_rings()) EXPECT_FALSE(clubsuit_check(Automorphism::identity(R))) << R->key();
  EXPECT_FALSE(clubsuit_check(Automorphism::frobenius(gf4(), 1)));
}

TEST(Clubsuit, SwapFails) {
  auto R = f2f2();
  auto id = Automorphism::identity(Ring::zmod(2));
  auto swap = Automorphism::product(R, {id, id}, {1, 0});
  auto w = clubsuit_check(swap);
  ASSERT_TRUE(w);
  EXPECT_EQ(R->name(w->s), "[1,0]");
  EXPECT_EQ(R->name(w->sigma_s), "[0,1]");
  EXPECT_EQ(w->ideal.to_string(), "{[0,0],[0,1]}");
  EXPECT_TRUE(w->ideal.contains(w->sigma_s));
  EXPECT_FALSE(w->ideal.contains(w->s));
}

TEST(MultiplicativeSet, Validation) {
  auto R = Ring::zmod(6);
  EXPECT_NO_THROW(MultiplicativeSet(R, {1, 3}));
  EXPECT_THROW(MultiplicativeSet(R, {3}), InputError);
  EXPECT_THROW(MultiplicativeSet(R, {1, 2}), InputError);
  MultiplicativeSet S(R, {1, 5});
  EXPECT_TRUE(S.is_sigma_stable(Automorphism::identity(R)));
}

TEST(Localization, FractionsOverZ6) {
  auto R = Ring::zmod(6);
  LocalizedRing L(Automorphism::identity(R), MultiplicativeSet(R, {1, 3}));
  EXPECT_TRUE(L.equal(L.make(2, 1), L.make(0, 1)));
  EXPECT_TRUE(L.equal(L.make(3, 3), L.make(1, 1)));
  EXPECT_FALSE(L.equal(L.make(1, 1), L.make(0, 1)));
  EXPECT_THROW(L.make(1, 2), InputError);
  EXPECT_EQ(L.ring()->size(), 2u);
  EXPECT_EQ(L.to_ring(L.make(3, 3)), L.ring()->one());
}

TEST(Localization, TrivialSetLeavesRing) {
  for (const auto& R : small_rings()) {
    LocalizedRing L(Automorphism::identity(R), MultiplicativeSet::trivial(R));
    EXPECT_EQ(L.ring()->size(), R->size());
    for (std::size_t r = 0; r < R->size(); ++r) EXPECT_EQ(L.canonical()(static_cast<Elem>(r)), r);
  }
}

TEST(Localization, RejectsUnstableSet) {
  auto R = f2f2();
  auto id = Automorphism::identity(Ring::zmod(2));
  auto swap = Automorphism::product(R, {id, id}, {1, 0});
  MultiplicativeSet S(R, {R->parse("[1,0]"), R->one()});
  EXPECT_THROW(LocalizedRing(swap, S), PreconditionError);
}

TEST(Localization, FractionEqualityIsEquivalence) {
  auto R = Ring::zmod(12);
  MultiplicativeSet S(R, {1, 3, 9});
  LocalizedRing L(Automorphism::identity(R), S);
  std::vector<Fraction> all;
  for (Elem s : S.elements())
    for (std::size_t r = 0; r < R->size(); ++r) all.push_back(L.make(static_cast<Elem>(r), s));
  for (const auto& a : all) {
    EXPECT_TRUE(L.equal(a, a));
    for (const auto& b : all) {
      ASSERT_EQ(L.equal(a, b), L.equal(b, a));
      // equality agrees with the realized quotient
      ASSERT_EQ(L.equal(a, b), L.to_ring(a) == L.to_ring(b));
    }
  }
  Rng rng(3);
  for (int k = 0; k < 500; ++k) {
    const auto& a = all[rng.below(all.size())];
    const auto& b = all[rng.below(all.size())];
    const auto& c = all[rng.below(all.size())];
    if (L.equal(a, b) && L.equal(b, c)) {
      EXPECT_TRUE(L.equal(a, c));
    }
    EXPECT_EQ(L.to_ring(L.mul(a, b)), L.ring()->mul(L.to_ring(a), L.to_ring(b)));
    EXPECT_EQ(L.to_ring(L.add(a, b)), L.ring()->add(L.to_ring(a), L.to_ring(b)));
  }
}

TEST(Localization, SigmaBarIsWellDefined) {
  auto R = Ring::product({Ring::zmod(3), gf4()});
  auto s = Automorphism::product(R, {Automorphism::identity(Ring::zmod(3)), Automorphism::frobenius(gf4(), 1)});
  for (const auto& m : enumerate_maximal_ideals(R)) {
    LocalizedRing L(s, MultiplicativeSet::complement_of(m));
    EXPECT_TRUE(L.canonical().compatible(s, L.sigma()));
    for (Elem t : L.multiplicative_set().elements())
      for (std::size_t r = 0; r < R->size(); ++r) {
        Fraction f = L.make(static_cast<Elem>(r), t);
        EXPECT_EQ(L.to_ring(L.sigma_bar(f)), L.sigma().apply(L.to_ring(f)));
      }
  }
}
