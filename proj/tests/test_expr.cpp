#include <gtest/gtest.h>

#include <random>

#include "wreathord/expr.hpp"

using namespace wreathord;

namespace {

std::string random_atom(std::mt19937_64& rng, int depth);

std::string random_expr(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 6 : 0), n(-9, 9), len(1, 4);
  switch (pick(rng)) {
    case 0: return random_atom(rng, depth);
    case 1: {
      std::string s = "(*";
      for (int i = len(rng); i > 0; --i) s += " " + random_expr(rng, depth - 1);
      return s + ")";
    }
    case 2: return "(inv " + random_expr(rng, depth - 1) + ")";
    case 3: return "(pow " + random_expr(rng, depth - 1) + " " + std::to_string(n(rng)) + ")";
    case 4: return "(conj " + random_expr(rng, depth - 1) + " " + random_expr(rng, depth - 1) + ")";
    case 5: return "(comm " + random_expr(rng, depth - 1) + " " + random_expr(rng, depth - 1) + ")";
    default: return "shift(" + random_atom(rng, 0) + "," + std::to_string(n(rng)) + ")";
  }
}

std::string random_atom(std::mt19937_64& rng, int depth) {
  static const char* names[] = {"c", "z", "alpha", "omega"};
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 8 : 7), idx(1, 20);
  int k = pick(rng);
  if (k < 4) return names[k];
  if (k == 4) return "tau(" + std::to_string(idx(rng)) + ")";
  if (k == 5) return "phi(" + std::to_string(idx(rng)) + ")";
  if (k == 6) return "chi(" + std::to_string(idx(rng)) + ")";
  if (k == 7) return "psi(" + std::to_string(idx(rng)) + ")";
  return "pi(" + random_expr(rng, depth - 1) + ")";
}

/// Inserts random extra whitespace between tokens.
std::string respace(const std::string& s, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> extra(0, 2);
  std::string out;
  for (char ch : s) {
    out += ch;
    if (ch == ' ' || ch == '(' || ch == ',')
      for (int i = extra(rng); i > 0; --i) out += ' ';
  }
  return out;
}

}  // namespace

TEST(Expr, RoundTripRandomExpressions) {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 500; ++i) {
    std::string text = random_expr(rng, 4);
    Expr e = parse_expr(respace(text, rng));
    std::string printed = e.str();
    ASSERT_EQ(printed, text);
    ASSERT_EQ(parse_expr(printed), e) << printed;
  }
}

TEST(Expr, Examples) {
  Expr e = parse_expr("(comm tau(2) c)");
  EXPECT_EQ(e.kind, Expr::Kind::Comm);
  EXPECT_EQ(e.kids[0].kind, Expr::Kind::Tau);
  EXPECT_EQ(e.kids[0].n, 2);
  Expr f = parse_expr("(pow (comm (conj alpha (pow z -3)) alpha) 2)");
  EXPECT_EQ(f.str(), "(pow (comm (conj alpha (pow z -3)) alpha) 2)");
  EXPECT_EQ(to_gword(f).str(), big_phi(Rational(2, 3)).str());
}

TEST(Expr, Errors) {
  try {
    parse_expr("tau(0)");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4u);
    EXPECT_NE(std::string(e.what()).find("n must be >= 1"), std::string::npos);
  }
  for (const char* bad : {"phi(0)", "chi(0)", "psi(-1)"}) EXPECT_THROW(parse_expr(bad), ParseError) << bad;
  try {
    parse_expr("(comm c)");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 7u);
  }
  try {
    parse_expr("(pow c x)");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 7u);
    EXPECT_EQ(e.expected(), "integer");
  }
  EXPECT_THROW(parse_expr("(*)"), ParseError);
  EXPECT_THROW(parse_expr("c c"), ParseError);
  EXPECT_THROW(parse_expr("beta"), ParseError);
  EXPECT_THROW(parse_expr("shift((* c c),2)"), ParseError);
}

TEST(Expr, RationalUniverse) {
  auto v = evaluate(parse_expr("(comm tau(2) c)"));
  ASSERT_TRUE(std::holds_alternative<W1>(v));
  EXPECT_TRUE(w_equal(std::get<W1>(v), phi(2)).is_equal());

  auto p = evaluate(parse_expr("(pow (comm (conj alpha (pow z -3)) alpha) 2)"));
  ASSERT_TRUE(std::holds_alternative<W2>(p));
  EXPECT_TRUE(w_equal(std::get<W2>(p), big_phi(Rational(2, 3)).evaluate()).is_equal());

  auto lifted = evaluate(parse_expr("(* tau(2) alpha)"));
  EXPECT_TRUE(w_equal(std::get<W2>(lifted), lift(tau(2)) * alpha()).is_equal());

  auto s = evaluate(parse_expr("shift(tau(3),2)"));
  EXPECT_TRUE(w_equal(std::get<W1>(s), conj(tau(3), c_elem(2))).is_equal());
  auto sa = evaluate(parse_expr("shift(alpha,-4)"));
  EXPECT_TRUE(w_equal(std::get<W2>(sa), conj(alpha(), z_elem(-4))).is_equal());
}

TEST(Expr, VerbalUniverse) {
  VerbalContext ctx(parse_word("[x1,x2]"));
  EXPECT_THROW(evaluate(parse_expr("omega")), InvalidArgument);

  auto w = evaluate(parse_expr("(comm (conj omega (pow z -32)) (conj omega (pow z -1)))"), &ctx);
  ASSERT_TRUE(std::holds_alternative<GVElement>(w));
  EXPECT_TRUE(w_equal(std::get<GVElement>(w), embed_verbal(ctx, Rational(1, 3)).value).is_equal());

  auto t = evaluate(parse_expr("(* (inv chi(3)) psi(2))"), &ctx);
  ASSERT_TRUE(std::holds_alternative<TElement>(t));
  EXPECT_TRUE(w_equal(std::get<TElement>(t), chi(ctx, 3).inverse() * psi(ctx, 2)).is_equal());

  auto d = evaluate(parse_expr("(comm pi((inv psi(2))) c)"), &ctx);
  ASSERT_TRUE(std::holds_alternative<DElement>(d));
  EXPECT_TRUE(w_equal(std::get<DElement>(d), rho(psi(ctx, 2))).is_equal());

  auto sp = evaluate(parse_expr("shift(psi(2),3)"), &ctx);
  EXPECT_TRUE(w_equal(std::get<TElement>(sp), conj(psi(ctx, 2), power(ctx.a(), BigInt(3)))).is_equal());

  auto mixed = evaluate(parse_expr("(* omega pi(chi(1)))"), &ctx);
  auto expect = omega(ctx) * first_copy<DElement, 'z'>(pi(chi(ctx, 1)));
  EXPECT_TRUE(w_equal(std::get<GVElement>(mixed), expect).is_equal());

  EXPECT_THROW(evaluate(parse_expr("pi(c)"), &ctx), InvalidArgument);
  EXPECT_THROW(evaluate(parse_expr("(* omega tau(2))"), &ctx), InvalidArgument);
}

TEST(Expr, CommonLevel) {
  Value a = evaluate(parse_expr("phi(2)")), b = evaluate(parse_expr("alpha"));
  auto ord = with_common_level(a, b, [](const auto& x, const auto& y) { return w_compare(x, y); });
  EXPECT_EQ(ord, w_compare(lift(phi(2)), alpha()));
}
