#include <gtest/gtest.h>

#include <map>
#include <random>

#include "oracles.hpp"
#include "wreathord/ray_step_function.hpp"
#include "wreathord/step_function.hpp"

using namespace wreathord;
using oracle::Frac;

namespace {

using SF = StepFunction<Rational>;

/// A step function as explicit (left tail, breakpoints) evaluated by linear search.
struct Table {
  Frac left;
  std::map<long, Frac> steps;
  Frac at(long i) const {
    Frac v = left;
    for (const auto& [k, x] : steps)
      if (k <= i) v = x;
    return v;
  }
};

std::pair<SF, Table> random_step(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> pos(-10, 10), val(-5, 5), den(1, 6), cnt(0, 4);
  Table t;
  t.left = Frac(val(rng), den(rng));
  std::vector<SF::Step> steps;
  long n = cnt(rng);
  for (long i = 0; i < n; ++i) {
    long p = pos(rng);
    if (t.steps.count(p)) continue;
    Frac v(val(rng), den(rng));
    t.steps[p] = v;
  }
  for (const auto& [p, v] : t.steps) steps.push_back({BigInt(p), Rational(v.num, v.den)});
  return {SF(Rational(t.left.num, t.left.den), steps), t};
}

}  // namespace

TEST(StepFunction, Definitions) {
  auto tau3 = SF::from(0, Rational(-1, 3));
  EXPECT_EQ(tau3.at(-1), Rational(0));
  EXPECT_EQ(tau3.at(0), Rational(-1, 3));
  EXPECT_EQ(tau3.at(5), Rational(-1, 3));
  EXPECT_EQ(tau3.at(BigInt("-1000000000")), Rational(0));
  auto phi1 = SF::point(0, Rational(1));
  EXPECT_EQ(phi1.at(0), Rational(1));
  EXPECT_TRUE(phi1.finitely_supported());
  EXPECT_FALSE(tau3.finitely_supported());
}

TEST(StepFunction, PointwiseOperationsMatchTable) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> sh(-5, 5);
  for (int trial = 0; trial < 500; ++trial) {
    auto [f, tf] = random_step(rng);
    auto [g, tg] = random_step(rng);
    long k = sh(rng);
    SF sum = f * g, shifted = f.shifted(k), inv = f.inverse();
    for (long i = -16; i <= 16; ++i) {
      ASSERT_TRUE(oracle::same(sum.at(i), tf.at(i) + tg.at(i)));
      ASSERT_TRUE(oracle::same(shifted.at(i), tf.at(i - k)));
      ASSERT_TRUE(oracle::same(inv.at(i), -tf.at(i)));
    }
    std::optional<long> expect;
    for (long i = -16; i <= 16 && !expect; ++i)
      if (!(tf.at(i) == tg.at(i))) expect = i;
    if (!(tf.left == tg.left)) {
      EXPECT_THROW(f.first_difference(g), NotWellOrdered);
    } else {
      auto d = f.first_difference(g);
      ASSERT_EQ(d.has_value(), expect.has_value());
      if (d) ASSERT_EQ(*d, *expect);
    }
    ASSERT_EQ(f == g, tf.left == tg.left && !expect);
  }
}

TEST(StepFunction, CanonicalFormIsUnique) {
  SF a(Rational(0), {{0, Rational(1)}, {2, Rational(1)}, {3, Rational(0)}});
  SF b(Rational(0), {{0, Rational(1)}, {3, Rational(0)}});
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_TRUE((a * a.inverse()).is_identity());
}

TEST(RayStepFunction, ChiAndPsiShapes) {
  auto a = MalcevElement::basic_commutator(2, 1, 2);
  auto basis = std::make_shared<const RayBasis<MalcevElement>>(a);
  auto one = MalcevElement::identity(2);
  using RSF = RayStepFunction<MalcevElement>;
  auto chi2 = RSF::ray(basis, one, 0, Rational(1, 2));
  EXPECT_EQ(chi2.at(power(a, BigInt(3))), Rational(1, 2));
  EXPECT_EQ(chi2.at(a.inverse()), Rational(0));
  EXPECT_EQ(chi2.at(one), Rational(1, 2));
  EXPECT_EQ(chi2.at(MalcevElement::generator(2, 1)), Rational(0));
  auto psi5 = RSF::point(basis, one, Rational(1, 5));
  EXPECT_EQ(psi5.at(one), Rational(1, 5));
  EXPECT_EQ(psi5.at(a), Rational(0));
  EXPECT_EQ(psi5.at(a.inverse()), Rational(0));
}

TEST(RayStepFunction, ShiftMatchesPointwiseTranslation) {
  // f^s(x) = f(x s^-1), checked on a grid of S elements.
  auto a = MalcevElement::generator(2, 1) * MalcevElement::generator(2, 2);
  auto basis = std::make_shared<const RayBasis<MalcevElement>>(a);
  using RSF = RayStepFunction<MalcevElement>;
  auto g = MalcevElement::from_coordinates({0, 1}, {2});
  RSF f = RSF::ray(basis, g, -1, Rational(2, 3)) + RSF::point(basis, MalcevElement::generator(2, 2), Rational(-1, 4));
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> c(-3, 3);
  for (int t = 0; t < 50; ++t) {
    auto s = MalcevElement::from_coordinates({c(rng), c(rng)}, {c(rng)});
    auto fs = f.shifted(s);
    for (int i = -3; i <= 3; ++i)
      for (int j = -3; j <= 3; ++j)
        for (int k = -3; k <= 3; ++k) {
          auto x = MalcevElement::from_coordinates({i, j}, {k});
          ASSERT_EQ(fs.at(x), f.at(x * s.inverse()));
        }
  }
}
