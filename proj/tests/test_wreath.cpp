#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "wreathord/embed_rationals.hpp"

using namespace wreathord;
using oracle::Frac;
using oracle::PW1;
using oracle::PW2;

namespace {

struct Pair1 {
  W1 lib;
  PW1 ref;
};
struct Pair2 {
  W2 lib;
  PW2 ref;
};

Pair1 random_pair1(std::mt19937_64& rng, int len) {
  std::uniform_int_distribution<int> kind(0, 2), n(1, 6), e(-2, 2), sign(0, 1);
  Pair1 out{W1(), PW1()};
  for (int i = 0; i < len; ++i) {
    Pair1 f;
    switch (kind(rng)) {
      case 0: {
        long k = e(rng);
        f = {c_elem(k), PW1::c(k)};
        break;
      }
      case 1: {
        long m = n(rng);
        f = {tau(m), PW1::tau(m)};
        break;
      }
      default: {
        long m = n(rng);
        f = {phi(m), PW1::phi(m)};
        break;
      }
    }
    if (sign(rng)) f = {f.lib.inverse(), f.ref.inv()};
    out = {out.lib * f.lib, out.ref * f.ref};
  }
  return out;
}

Pair2 random_pair2(std::mt19937_64& rng, int len) {
  std::uniform_int_distribution<int> kind(0, 2), e(-3, 3), sign(0, 1);
  Pair2 out{W2(), PW2()};
  for (int i = 0; i < len; ++i) {
    Pair2 f;
    switch (kind(rng)) {
      case 0: {
        long k = e(rng);
        f = {z_elem(k), PW2::z(k)};
        break;
      }
      case 1: {
        long k = e(rng);
        f = {conj(alpha(), z_elem(k)), oracle::conj(PW2::alpha(), PW2::z(k))};
        break;
      }
      default: {
        auto p = random_pair1(rng, 2);
        f = {lift(p.lib), PW2::lift(p.ref)};
        break;
      }
    }
    if (sign(rng)) f = {f.lib.inverse(), f.ref.inv()};
    out = {out.lib * f.lib, out.ref * f.ref};
  }
  return out;
}

bool w1_matches(const W1& x, const PW1& r, long w) {
  if (x.top().exponent != r.top) return false;
  for (long j = -w; j <= w; ++j)
    if (!oracle::same(x.at(CPow(j)), r.f(j))) return false;
  return true;
}

bool w2_matches(const W2& x, const PW2& r, long w) {
  if (x.top().exponent != r.top) return false;
  for (long j = -w; j <= w; ++j)
    if (!w1_matches(x.at(ZPow(j)), r.f(j), w)) return false;
  return true;
}

int sign_of(Ordering o) { return o == Ordering::Less ? -1 : o == Ordering::Greater ? 1 : 0; }

}  // namespace

TEST(Wreath, W1ProductMatchesPointwiseModel) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 300; ++t) {
    auto x = random_pair1(rng, 6), y = random_pair1(rng, 6);
    ASSERT_TRUE(w1_matches(x.lib * y.lib, x.ref * y.ref, 20)) << x.lib.str() << " * " << y.lib.str();
    ASSERT_TRUE(w1_matches(x.lib.inverse(), x.ref.inv(), 20));
    ASSERT_TRUE(w1_matches(comm(x.lib, y.lib), oracle::comm(x.ref, y.ref), 20));
  }
}

TEST(Wreath, W2ProductMatchesPointwiseModel) {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 60; ++t) {
    auto x = random_pair2(rng, 4), y = random_pair2(rng, 4);
    ASSERT_TRUE(w2_matches(x.lib * y.lib, x.ref * y.ref, 8)) << x.lib.str() << " * " << y.lib.str();
    ASSERT_TRUE(w2_matches(comm(x.lib, y.lib), oracle::comm(x.ref, y.ref), 8));
  }
}

TEST(Wreath, OrderMatchesBruteForceModel) {
  std::mt19937_64 rng(23);
  int decided = 0;
  for (int t = 0; t < 400; ++t) {
    auto x = random_pair1(rng, 4), y = random_pair1(rng, 4);
    if (t % 3 == 0) y = {x.lib * tau(2) * phi(3), x.ref * PW1::tau(2) * PW1::phi(3)};
    int ref = oracle::brute_cmp(x.ref, y.ref, 40);
    int got = sign_of(w_compare(x.lib, y.lib));
    if (ref == 2) {
      ASSERT_EQ(got, 0) << x.lib.str() << " vs " << y.lib.str();
    } else {
      ASSERT_EQ(got, ref) << x.lib.str() << " vs " << y.lib.str();
      ++decided;
    }
  }
  EXPECT_GT(decided, 200);
}

TEST(Wreath, W2OrderMatchesBruteForceModel) {
  std::mt19937_64 rng(24);
  for (int t = 0; t < 80; ++t) {
    auto x = random_pair2(rng, 3), y = random_pair2(rng, 3);
    if (t % 2 == 0) y = {x.lib * lift(phi(2)), x.ref * PW2::lift(PW1::phi(2))};
    int ref = oracle::brute_cmp(x.ref, y.ref, 8);
    int got = sign_of(w_compare(x.lib, y.lib));
    if (ref != 2) ASSERT_EQ(got, ref) << x.lib.str() << " vs " << y.lib.str();
  }
}

TEST(Wreath, Examples) {
  W2 x = lift(tau(2)) * lift(tau(3));
  EXPECT_EQ(x.at(ZPow(0L)).at(CPow(0L)), Rational(-5, 6));
  W1 t = tau(4);
  EXPECT_TRUE(w_equal(t * W1(), t).is_equal());
  EXPECT_TRUE(is_identity(t * t.inverse()));
  for (long n = 1; n <= 20; ++n) EXPECT_TRUE(w_equal(comm(tau(n), c_elem()), phi(n)).is_equal()) << n;
  EXPECT_TRUE(is_identity(comm(tau(3), tau(7))));
  EXPECT_TRUE(w_equal(conj(t, W1()), t).is_equal());
}

TEST(Wreath, AlphaValues) {
  W2 a = alpha();
  EXPECT_TRUE(w_equal(a.at(ZPow(0L)), c_elem()).is_equal());
  EXPECT_TRUE(is_identity(a.at(ZPow(-1L))));
  EXPECT_TRUE(is_identity(a.at(ZPow(-5L))));
  EXPECT_TRUE(w_equal(a.at(ZPow(3L)), tau(3)).is_equal());
  EXPECT_TRUE(w_equal(a.at(ZPow(7L)), tau(7)).is_equal());
  EXPECT_TRUE(is_identity(W2().at(ZPow(4L))));
  W2 k = comm(conj(a, z_elem(-2)), a);
  EXPECT_TRUE(w_equal(k.at(ZPow(0L)), phi(2)).is_equal());
  for (long j = -10; j <= 10; ++j)
    if (j != 0) EXPECT_TRUE(is_identity(k.at(ZPow(j)))) << j;
}

TEST(Wreath, EqualityVerdicts) {
  auto v = w_equal(tau(2), tau(3));
  ASSERT_TRUE(v.is_distinct());
  ASSERT_TRUE(v.witness);
  EXPECT_EQ(v.witness->exponent, 0);
  EXPECT_TRUE(w_equal(tau(5) * phi(2), tau(5) * phi(2)).is_equal());

  W2 p = big_phi(Rational(1, 2)).evaluate() * big_phi(Rational(1, 3)).evaluate();
  EXPECT_TRUE(w_equal(p, big_phi(Rational(5, 6)).evaluate()).is_equal());

  W2 a = alpha();
  W2 an = conj(a, z_elem(-3));
  EXPECT_TRUE(is_identity(an * an.inverse()));
  auto d = w_equal(a * conj(a, z_elem(1)), W2());
  ASSERT_TRUE(d.is_distinct());
  EXPECT_EQ(d.witness->exponent, 0);
  // Net exponents cancel per shift, yet the commutator is nontrivial at z^0.
  auto k = w_equal(comm(an, a), W2());
  ASSERT_TRUE(k.is_distinct());
  EXPECT_EQ(k.witness->exponent, 0);
}

TEST(Wreath, CompareExamples) {
  W2 third = big_phi(Rational(1, 3)).evaluate(), half = big_phi(Rational(1, 2)).evaluate();
  EXPECT_EQ(w_compare(third, half), Ordering::Less);
  EXPECT_EQ(w_compare(half, half), Ordering::Equal);
  EXPECT_EQ(w_compare(c_elem(-1), W1()), Ordering::Less);
}

namespace {

/// A kernel the engine can only scan: nonzero at one far coordinate.
class FarPoint final : public AtomKernel<Rational, CPow> {
 public:
  explicit FarPoint(long at) : at_(at) {}
  std::string name() const override { return "far(" + std::to_string(at_) + ")"; }
  Rational value(const CPow& b) const override { return b.exponent == at_ ? Rational(1) : Rational(0); }
  std::optional<CPow> support_lower_bound() const override { return CPow(0L); }

 private:
  long at_;
};

/// ω-like kernel whose values are all trivial: equality can never be certified.
class NullDyadic final : public DyadicKernel<W1, 'z'> {
 public:
  std::string name() const override { return "null"; }
  W1 at_power(std::size_t) const override { return W1(); }
};

}  // namespace

TEST(Wreath, UndecidedVerdictsCarryTheBound) {
  auto far = std::make_shared<const FarPoint>(1000);
  W1 x = W1::of(far);
  auto old = engine_options().window.load();
  engine_options().window = 16;
  auto v = w_equal(x, W1());
  ASSERT_TRUE(v.is_unknown());
  EXPECT_EQ(v.bound, 16);
  EXPECT_THROW(w_compare(x, W1()), UndecidedError);
  engine_options().window = 2000;
  auto d = w_equal(x, W1());
  ASSERT_TRUE(d.is_distinct());
  EXPECT_EQ(d.witness->exponent, 1000);
  engine_options().window = old;

  W2 n = W2::of(std::make_shared<const NullDyadic>());
  auto u = w_equal(n, W2());
  ASSERT_TRUE(u.is_unknown());
  try {
    w_compare(n, W2());
    FAIL() << "expected UndecidedError";
  } catch (const UndecidedError& e) {
    EXPECT_GT(e.bound(), 0);
  }
}

TEST(Wreath, FirstCopyRestrictsToFiberOrder) {
  std::mt19937_64 rng(25);
  std::uniform_int_distribution<long> num(-20, 20), den(1, 20);
  for (int t = 0; t < 200; ++t) {
    Rational a(num(rng), den(rng)), b(num(rng), den(rng));
    EXPECT_EQ(w_compare(point_c(a), point_c(b)), rat_cmp(a, b));
    EXPECT_EQ(w_compare(lift(point_c(a)), lift(point_c(b))), rat_cmp(a, b));
  }
}
