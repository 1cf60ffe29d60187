#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wreathord/embed_rationals.hpp"
#include "wreathord/sampling.hpp"
#include "wreathord/verify_section2.hpp"

namespace wreathord {

/// First coordinate in [-window, window] where two W1 elements differ, by pointwise evaluation.
struct BruteResult {
  Ordering order = Ordering::Equal;
  bool tops_differ = false;
  std::optional<BigInt> at;
};

inline BruteResult brute_compare(const W1& x, const W1& y, long window) {
  BruteResult r;
  if (!(x.top() == y.top())) {
    r.tops_differ = true;
    r.order = x.top() < y.top() ? Ordering::Less : Ordering::Greater;
    return r;
  }
  for (long j = -window; j <= window; ++j) {
    Rational a = x.at(CPow(j)), b = y.at(CPow(j));
    if (!(a == b)) {
      r.at = BigInt(j);
      r.order = rat_cmp(a, b);
      return r;
    }
  }
  return r;
}

/// Same for W2, comparing the W1 fibers by the W1 brute-force scan.
inline BruteResult brute_compare(const W2& x, const W2& y, long window) {
  BruteResult r;
  if (!(x.top() == y.top())) {
    r.tops_differ = true;
    r.order = x.top() < y.top() ? Ordering::Less : Ordering::Greater;
    return r;
  }
  for (long j = -window; j <= window; ++j) {
    auto inner = brute_compare(x.at(ZPow(j)), y.at(ZPow(j)), window);
    if (inner.tops_differ || inner.at) {
      r.at = BigInt(j);
      r.order = inner.order;
      return r;
    }
  }
  return r;
}

namespace detail {

template <class W>
struct Family {
  std::string name;
  std::function<W(Rng&)> sample;
  std::function<W(const Rational&)> point;
};

/// Pair generator: mostly independent samples, sometimes sharing a top (so the base order is
/// exercised), sometimes equal by construction through a different product.
template <class W>
std::pair<W, W> sample_pair(Rng& rng, const Family<W>& fam) {
  W x = fam.sample(rng);
  switch (rng.uniform(0, 3)) {
    case 0: {
      W t = fam.sample(rng);
      return {x, (x * t) * t.inverse()};
    }
    case 1: {
      W y = fam.sample(rng);
      return {x, y * W::top_only(y.top().inverse()) * W::top_only(x.top())};
    }
    default:
      return {x, fam.sample(rng)};
  }
}

template <class W>
void order_checks(Report& r, Rng& rng, const Family<W>& fam, long budget, long window) {
  const std::string p = "orders." + fam.name + ".";
  const std::size_t triples = scaled(500, budget);
  Tally total, trans, brute, sound;
  std::uint64_t by_base = 0, equal = 0;

  auto cmp = [](const W& a, const W& b) { return w_compare(a, b); };

  for (std::size_t i = 0; i < triples; ++i) {
    auto [x, y] = sample_pair(rng, fam);
    W z = rng.coin() ? fam.sample(rng) : x * W::top_only(x.top().inverse()) * fam.sample(rng);
    Json ctx{{"x", x.str()}, {"y", y.str()}};
    guarded(total, ctx, [&] {
      Ordering xy = cmp(x, y), yx = cmp(y, x);
      bool eq = w_equal(x, y).is_equal();
      total.record(xy == reverse(yx) && (xy == Ordering::Equal) == eq, ctx);
    });
    guarded(trans, ctx, [&] {
      Ordering xy = cmp(x, y), yz = cmp(y, z), xz = cmp(x, z);
      bool ok = true;
      if (xy != Ordering::Greater && yz != Ordering::Greater) ok = xz == (xy == Ordering::Equal ? yz : xy == yz ? xy : Ordering::Less);
      if (xy != Ordering::Less && yz != Ordering::Less) ok = ok && xz == (xy == Ordering::Equal ? yz : xy == yz ? xy : Ordering::Greater);
      Json data = ctx;
      data["z"] = z.str();
      trans.record(ok, data);
    });
    guarded(brute, ctx, [&] {
      Ordering got = cmp(x, y);
      auto b = brute_compare(x, y, window);
      Json data = ctx;
      data["engine"] = to_string(got);
      data["brute"] = to_string(b.order);
      brute.record(got == b.order, data);
    });
    // Any Equal or Distinct verdict must agree with pointwise evaluation.
    auto v = w_equal(x, y);
    auto b = brute_compare(x, y, window);
    Json data = ctx;
    if (b.at) ++by_base;
    if (v.is_equal()) ++equal;
    if (v.is_unknown()) {
      sound.unknown(v.bound, data);
    } else if (v.is_equal()) {
      sound.record(!b.tops_differ && !b.at, data);
    } else if (!v.witness) {
      sound.record(b.tops_differ, data);
    } else {
      data["verdict_at"] = v.witness->str();
      sound.record(b.at && *b.at == v.witness->exponent, data);
    }
  }
  total.emit(r, p + "totality");
  trans.emit(r, p + "transitivity");
  Json mix{{"window", window}, {"decided_in_base", by_base}, {"equal", equal}};
  brute.emit(r, p + "brute_force_agreement", mix);
  sound.emit(r, p + "verdict_soundness", mix);

  Tally bi;
  const std::size_t strict = scaled(25, budget);
  for (std::size_t i = 0; i < strict;) {
    auto [x, y] = sample_pair(rng, fam);
    Ordering xy;
    try {
      xy = cmp(x, y);
    } catch (const UndecidedError&) {
      continue;
    }
    if (xy == Ordering::Equal) continue;
    ++i;
    for (int k = 0; k < 20; ++k) {
      W t = fam.sample(rng);
      Json ctx{{"x", x.str()}, {"y", y.str()}, {"t", t.str()}};
      guarded(bi, ctx, [&] {
        bi.record(cmp(t * x, t * y) == xy && cmp(x * t, y * t) == xy, ctx);
      });
    }
  }
  bi.emit(r, p + "bi_invariance", {{"translations", 20}});

  Tally rem;
  const std::size_t pts = scaled(100, budget);
  for (std::size_t i = 0; i < pts; ++i) {
    Rational a = rng.rational(100, 100), b = rng.rational(100, 100);
    Json ctx{{"a", a.str()}, {"b", b.str()}};
    guarded(rem, ctx, [&] { rem.record(cmp(fam.point(a), fam.point(b)) == rat_cmp(a, b), ctx); });
  }
  rem.emit(r, p + "first_copy_restriction");
}

}  // namespace detail

/// Order axioms, brute-force agreement and verdict soundness on (Q Wr C)- and
/// ((Q Wr C) Wr Z)-reachable elements.
inline Report verify_orders(std::uint64_t seed, long budget = 100, long window = 64) {
  Report r("orders", seed, budget);
  Rng rng(seed);
  detail::Family<W1> f1{"w1", [](Rng& g) { return random_w1(g, 4); }, [](const Rational& q) { return point_c(q); }};
  detail::Family<W2> f2{"w2",
                        [](Rng& g) { return g.coin() ? random_w2(g, 4) : random_gword(g, 6).evaluate(); },
                        [](const Rational& q) { return lift(point_c(q)); }};
  detail::order_checks(r, rng, f1, budget, window);
  detail::order_checks(r, rng, f2, budget, window);
  return r;
}

}  // namespace wreathord
