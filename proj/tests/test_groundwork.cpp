#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "wreathord/malcev.hpp"
#include "wreathord/rational.hpp"
#include "wreathord/verbal_witness.hpp"
#include "wreathord/word.hpp"

using namespace wreathord;
using oracle::Frac;

TEST(Rational, Examples) {
  EXPECT_EQ(rat_add(Rational(1, 2), Rational(1, 3)), Rational(5, 6));
  EXPECT_TRUE(rat_add(Rational(1, 7), Rational(-1, 7)).is_zero());
  EXPECT_EQ(rat_add(Rational(1, 7), Rational(-1, 7)).denominator(), 1);
  Rational s;
  for (int i = 0; i < 5; ++i) s = s + Rational(1, 6);
  EXPECT_EQ(s, Rational(5, 6));
  EXPECT_EQ(rat_cmp(Rational(1, 3), Rational(1, 2)), Ordering::Less);
  EXPECT_EQ(rat_cmp(Rational(-1, 2), Rational(-1, 3)), Ordering::Less);
  EXPECT_EQ(rat_cmp(Rational(4, 9), Rational(4, 9)), Ordering::Equal);
}

TEST(Rational, CanonicalFraction) {
  EXPECT_EQ(canonical_fraction(2, 4).str(), "1/2");
  EXPECT_EQ(canonical_fraction(3, -6).str(), "-1/2");
  auto z = canonical_fraction(0, 7);
  EXPECT_EQ(z.numerator(), 0);
  EXPECT_EQ(z.denominator(), 1);
  EXPECT_THROW(canonical_fraction(1, 0), InvalidArgument);
}

TEST(Rational, Parse) {
  EXPECT_EQ(parse_rational("-6/8"), Rational(-3, 4));
  EXPECT_EQ(parse_rational("5"), Rational(5));
  EXPECT_THROW(parse_rational("1/0"), InvalidArgument);
  EXPECT_THROW(parse_rational("x"), Error);
}

TEST(Rational, AgreesWithMachineFractions) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> num(-40, 40), den(1, 40);
  for (int i = 0; i < 2000; ++i) {
    long a = num(rng), b = den(rng), c = num(rng), d = den(rng);
    Frac x(a, b), y(c, d);
    Rational rx(a, b), ry(c, d);
    ASSERT_TRUE(oracle::same(rx + ry, x + y));
    ASSERT_TRUE(oracle::same(rx - ry, x - y));
    ASSERT_EQ(rat_cmp(rx, ry) == Ordering::Less, x < y);
  }
}

namespace {

MalcevElement from_oracle(const oracle::FreeNil2& g) {
  std::vector<BigInt> e, f;
  for (auto v : g.e) e.emplace_back(v);
  for (auto v : g.commutators()) f.emplace_back(v);
  return MalcevElement::from_coordinates(e, f);
}

}  // namespace

TEST(Malcev, Examples) {
  auto x1 = MalcevElement::generator(2, 1), x2 = MalcevElement::generator(2, 2);
  auto p = x1 * x2;
  EXPECT_EQ(p.generator_exponents(), (std::vector<BigInt>{1, 1}));
  EXPECT_EQ(p.commutator_exponent(1, 2), 0);
  auto q = x2 * x1;
  EXPECT_EQ(q.generator_exponents(), (std::vector<BigInt>{1, 1}));
  EXPECT_EQ(q.commutator_exponent(1, 2), -1);
  EXPECT_TRUE((q * q.inverse()).is_identity());
  auto id = MalcevElement::identity(2);
  EXPECT_EQ(nil2_compare(x1, id), Ordering::Greater);
  EXPECT_EQ(nil2_compare(q, q), Ordering::Equal);
  EXPECT_EQ(nil2_compare(MalcevElement::basic_commutator(2, 1, 2), x1.inverse()), Ordering::Greater);
  EXPECT_EQ(nil2_compare(x1.inverse(), MalcevElement::basic_commutator(2, 1, 2)), Ordering::Less);
}

TEST(Malcev, MatchesHeisenbergProjections) {
  std::mt19937_64 rng(5);
  for (int rank : {2, 3, 4}) {
    std::uniform_int_distribution<int> gen(1, rank), sign(0, 1);
    for (int trial = 0; trial < 300; ++trial) {
      oracle::FreeNil2 o(rank);
      MalcevElement m = MalcevElement::identity(rank);
      for (int k = 0; k < 12; ++k) {
        int i = gen(rng);
        bool inv = sign(rng);
        auto og = oracle::FreeNil2::generator(rank, i);
        auto mg = MalcevElement::generator(rank, i);
        o = o * (inv ? og.inv() : og);
        m = m * (inv ? mg.inverse() : mg);
      }
      ASSERT_EQ(m, from_oracle(o)) << m.str();
      ASSERT_EQ(m.inverse(), from_oracle(o.inv()));
    }
  }
}

TEST(Malcev, OrderIsBiInvariant) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> c(-3, 3);
  auto rnd = [&] { return MalcevElement::from_coordinates({c(rng), c(rng), c(rng)}, {c(rng), c(rng), c(rng)}); };
  for (int i = 0; i < 100; ++i) {
    auto x = rnd(), y = rnd();
    auto o = nil2_compare(x, y);
    for (int k = 0; k < 10; ++k) {
      auto t = rnd();
      ASSERT_EQ(nil2_compare(t * x, t * y), o);
      ASSERT_EQ(nil2_compare(x * t, y * t), o);
    }
    ASSERT_EQ(nil2_compare(x.with_order_sign(-1), y.with_order_sign(-1)), reverse(o));
  }
}

TEST(Word, ParseAndEvaluate) {
  auto w = parse_word("[x1,x2]");
  EXPECT_EQ(w.arity(), 2);
  auto x1 = MalcevElement::generator(2, 1), x2 = MalcevElement::generator(2, 2);
  std::vector<MalcevElement> args{x1, x2};
  EXPECT_EQ(eval_word(w, args), MalcevElement::basic_commutator(2, 1, 2));
  std::vector<MalcevElement> same{x2 * x1, x2 * x1};
  EXPECT_TRUE(eval_word(w, same).is_identity());
  auto cube = parse_word("x1^3");
  std::vector<MalcevElement> g{x1 * x2};
  EXPECT_EQ(eval_word(cube, g), g[0] * g[0] * g[0]);
  EXPECT_THROW(parse_word("[x1,"), ParseError);
  EXPECT_THROW(eval_word(parse_word("x3"), args), InvalidArgument);
}

TEST(VerbalWitness, BuiltInFamilies) {
  auto p3 = select_S(parse_word("x1^3"));
  EXPECT_EQ(p3.family, WordFamily::Power);
  EXPECT_EQ(p3.rank, 1);
  EXPECT_EQ(p3.a.generator_exponents(), std::vector<BigInt>{3});
  EXPECT_TRUE(verify_witness(p3.witness).passed());

  auto p2 = select_S(parse_word("x1^2"));
  EXPECT_EQ(p2.a.generator_exponents(), std::vector<BigInt>{2});
  EXPECT_EQ(nil2_compare(MalcevElement::identity(1), p2.a), Ordering::Less);
  EXPECT_TRUE(verify_witness(p2.witness).passed());

  auto cw = select_S(parse_word("[x1,x2]"));
  EXPECT_EQ(cw.family, WordFamily::Commutator);
  EXPECT_EQ(cw.a.commutator_exponent(1, 2), 1);
  EXPECT_FALSE(cw.order_inverted);
  EXPECT_TRUE(verify_witness(cw.witness).passed());

  auto inv = select_S(parse_word("[x1,x2]"), -1);
  EXPECT_TRUE(inv.order_inverted);
  EXPECT_EQ(inv.a.generator_exponents(), cw.a.generator_exponents());
  EXPECT_EQ(inv.a.commutator_exponents(), cw.a.commutator_exponents());
  EXPECT_TRUE(verify_witness(inv.witness).passed());

  EXPECT_THROW(select_S(parse_word("x1*x2")), UnsupportedWordset);
}

TEST(VerbalWitness, CorruptedWitnessFails) {
  auto cw = select_S(parse_word("[x1,x2]"));
  auto bad = cw.witness;
  bad.terms[0].eps = -1;
  auto r = verify_witness(bad);
  EXPECT_FALSE(r.passed());
  const auto* rec = r.find("witness.replay");
  ASSERT_NE(rec, nullptr);
  EXPECT_EQ(rec->status, Status::Fail);
  EXPECT_EQ(rec->witness["recomputed"], "[x1,x2]^-1");
}
