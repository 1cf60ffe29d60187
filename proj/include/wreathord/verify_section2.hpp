#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "wreathord/embed_rationals.hpp"
#include "wreathord/report.hpp"
#include "wreathord/sampling.hpp"

namespace wreathord {

namespace detail {

using Json = nlohmann::ordered_json;

/// Collects pass/fail over many samples and keeps the first counterexample.
struct Tally {
  std::uint64_t samples = 0;
  bool ok = true;
  bool undecided = false;
  Json witness = Json::object();

  void record(bool pass, Json data = Json::object()) {
    ++samples;
    if (!pass && ok) {
      ok = false;
      witness = std::move(data);
    }
  }
  void unknown(const BigInt& bound, Json data = Json::object()) {
    ++samples;
    if (!undecided && ok) {
      undecided = true;
      data["unknown_beyond"] = bound.get_str();
      witness = std::move(data);
    }
  }
  void emit(Report& r, const std::string& name, Json on_pass = Json::object()) const {
    Status s = !ok ? Status::Fail : (undecided ? Status::Unknown : Status::Pass);
    r.add(CheckRecord{name, s, samples, s == Status::Pass ? std::move(on_pass) : witness});
  }
};

/// Runs `fn` and converts an UndecidedError into an Unknown sample.
template <class Fn>
void guarded(Tally& t, Json ctx, Fn fn) {
  try {
    fn();
  } catch (const UndecidedError& e) {
    t.unknown(e.bound(), std::move(ctx));
  }
}

/// Records whether x = y matches `expect`; an undecided verdict is recorded as unknown.
template <class W>
void expect_equal(Tally& t, const W& x, const W& y, bool expect, const Json& ctx) {
  auto v = w_equal(x, y);
  if (v.is_unknown()) {
    t.unknown(v.bound, ctx);
    return;
  }
  Json data = ctx;
  if (v.witness && v.is_equal() != expect) {
    using FT = group_traits<typename W::Fiber>;
    data["differs_at"] = v.witness->str();
    data["lhs_value"] = FT::str(x.at(*v.witness));
    data["rhs_value"] = FT::str(y.at(*v.witness));
  }
  t.record(v.is_equal() == expect, std::move(data));
}

}  // namespace detail

/// Checks of the rational embedding into G = <α, z>. `budget` scales sample counts in percent.
inline Report verify_theorem1(std::uint64_t seed, long budget = 100) {
  using detail::Json;
  using detail::Tally;
  Report r("section2", seed, budget);
  Rng rng(seed);

  {
    Tally t;
    for (long n = 1; n <= 50; ++n) {
      W1 lhs = comm(tau(n), c_elem());
      t.record(w_equal(lhs, phi(n)).is_equal(), {{"n", n}, {"computed", lhs.step_form().str()}});
    }
    t.emit(r, "relations.tau_c", {{"range", "n in [1,50]"}});
  }
  {
    Tally t;
    for (long m = 1; m <= 50; ++m)
      for (long n = 1; n <= 50; ++n) {
        W1 x = comm(tau(m), tau(n));
        t.record(w_equal(x, W1()).is_equal(), {{"m", m}, {"n", n}, {"computed", x.step_form().str()}});
      }
    t.emit(r, "relations.tau_tau", {{"range", "m, n in [1,50]"}});
  }
  {
    Tally t;
    for (long n = 1; n <= 20; ++n)
      for (long j = -2 * n - 4; j <= 2 * n + 4; ++j) {
        W1 got = commutator_table(n, j);
        auto [kase, shown] = commutator_case(n, j);
        t.record(w_equal(got, shown).is_equal(),
                 {{"n", n}, {"j", j}, {"case", kase}, {"computed", got.str()}, {"displayed", shown.str()}});
      }
    t.emit(r, "commutator_table", {{"range", "n in [1,20], |j| <= 2n+4"}});
  }

  const std::size_t pairs = scaled(200, budget);
  {
    Tally hom, cert;
    for (std::size_t i = 0; i < pairs; ++i) {
      Rational p = rng.rational(100, 100), q = rng.rational(100, 100);
      Json ctx{{"p", p.str()}, {"q", q.str()}};
      W2 fp = big_phi(p).evaluate(), fq = big_phi(q).evaluate(), fpq = big_phi(p + q).evaluate();
      detail::expect_equal(hom, fp * fq, fpq, true, ctx);
      detail::expect_equal(cert, fp, big_phi_certificate(p), true, ctx);
    }
    hom.emit(r, "phi.homomorphism");
    cert.emit(r, "phi.certificate");
  }
  {
    Tally t;
    std::vector<Rational> qs{Rational(0)};
    for (std::size_t i = 0; i < pairs; ++i) qs.push_back(rng.rational(100, 100));
    for (const auto& q : qs) {
      detail::expect_equal(t, big_phi(q).evaluate(), W2(), q.is_zero(), {{"q", q.str()}});
    }
    t.emit(r, "phi.injective");
  }
  {
    Tally t;
    for (std::size_t i = 0; i < pairs; ++i) {
      Rational p = rng.rational(100, 100), q = i % 10 == 0 ? p : rng.rational(100, 100);
      Json ctx{{"p", p.str()}, {"q", q.str()}};
      detail::guarded(t, ctx, [&] {
        Ordering got = w_compare(big_phi(p).evaluate(), big_phi(q).evaluate());
        Json data = ctx;
        data["order"] = to_string(got);
        t.record(got == rat_cmp(p, q), data);
      });
    }
    t.emit(r, "phi.order");
  }
  {
    Tally t;
    const std::size_t n = scaled(500, budget);
    for (std::size_t i = 0; i < n; ++i) {
      GWord w = random_gword(rng, 30);
      auto nf = g_normal_form(w);
      Json ctx{{"word", w.str()}, {"normal_form", nf.str()}};
      detail::expect_equal(t, w.evaluate(), nf.evaluate(), true, ctx);
    }
    t.emit(r, "normal_form.evaluation");
  }
  {
    Tally t;
    const std::size_t n = scaled(100, budget);
    for (std::size_t i = 0; i < n; ++i) {
      auto nf = g_normal_form(random_gword(rng, 20));
      auto lo = nf.min_shift();
      if (!lo) {
        t.record(true);
        continue;
      }
      W2 base = nf.base_part();
      bool ok = true;
      for (BigInt j = *lo - 16; j < *lo && ok; ++j) ok = is_identity(base.at(ZPow(j)));
      t.record(ok, {{"normal_form", nf.str()}});
    }
    t.emit(r, "normal_form.bound_below_min_shift");
  }
  {
    Tally t;
    const std::size_t n = scaled(200, budget);
    for (std::size_t i = 0; i < n;) {
      GWord w = random_gword(rng, 8);
      W2 g = w.evaluate();
      if (w_equal(g, W2()).is_equal()) continue;
      ++i;
      for (long k = 1; k <= 10; ++k) detail::expect_equal(t, power(g, BigInt(k)), W2(), false, {{"word", w.str()}, {"k", k}});
    }
    t.emit(r, "torsion_free", {{"k", "1..10"}});
  }
  {
    Tally t;
    const std::size_t n = scaled(50, budget);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<W2> args;
      std::vector<std::string> words;
      for (int a = 0; a < 8; ++a) {
        GWord w = random_gword(rng, 4);
        words.push_back(w.str());
        args.push_back(w.evaluate());
      }
      detail::expect_equal(t, derived_value<W2>(args), W2(), true, {{"tuple", words}});
    }
    t.emit(r, "solvable.delta3_vanishes");
  }
  {
    // The tuple (α, z, α^{z^-1}, z) first, then random tuples until δ_2 is nontrivial.
    Tally t;
    std::vector<GWord> tuple{GWord::alpha(), GWord::z(1), GWord::alpha().conj(GWord::z(-1)), GWord::z(1)};
    Json found;
    for (int attempt = 0; attempt < 1000 && found.is_null(); ++attempt) {
      if (attempt > 0)
        for (auto& w : tuple) w = random_gword(rng, 4);
      std::vector<W2> args;
      for (const auto& w : tuple) args.push_back(w.evaluate());
      W2 d = derived_value<W2>(args);
      auto v = w_equal(d, W2());
      if (v.is_distinct()) {
        found = Json::object();
        std::vector<std::string> ws;
        for (const auto& w : tuple) ws.push_back(w.str());
        found["tuple"] = ws;
        found["attempts"] = attempt + 1;
        if (v.witness) found["coordinate"] = v.witness->str();
        if (v.witness) found["value"] = d.at(*v.witness).str();
      }
    }
    t.record(!found.is_null(), {{"searched", 1000}});
    t.emit(r, "solvable.delta2_witness", found);
  }
  return r;
}

/// Conjugation checks along the chain image <= Q_(0) <= Q^C at z^0 <= first copy of Q Wr C
/// <= base (Q Wr C)^Z <= (Q Wr C) Wr Z.
inline Report subnormal_chain(std::uint64_t seed, long budget = 100) {
  using detail::Json;
  using detail::Tally;
  Report r("section2.subnormal", seed, budget);
  Rng rng(seed ^ 0x5eedULL);
  const std::size_t n = scaled(50, budget);

  // Base-only element of W1 (top removed).
  auto base_w1 = [&] {
    W1 x = random_w1(rng, 3);
    return x * W1::top_only(x.top().inverse());
  };
  auto first_copy_only = [](const W2& x) {
    // identity off z^0
    return w_equal(x, lift(x.at(ZPow(0L)))).is_equal();
  };

  Tally l1, l2, l3, l4;
  for (std::size_t i = 0; i < n; ++i) {
    Rational q = rng.rational(100, 100);
    W2 img = big_phi_certificate(q);
    W2 y = lift(base_w1());
    l1.record(w_equal(conj(img, y), img).is_equal(), {{"q", q.str()}, {"conjugator", y.str()}});

    W2 b = lift(base_w1());
    W2 g = lift(random_w1(rng, 3));
    W2 bc = conj(b, g);
    l2.record(first_copy_only(bc) && bc.at(ZPow(0L)).top() == CPow(), {{"element", b.str()}, {"conjugator", g.str()}});

    W2 f = lift(random_w1(rng, 3));
    W2 h = conj(power(alpha(), BigInt(rng.uniform(-2, 2))), z_elem(rng.uniform(-4, 4)));
    l3.record(first_copy_only(conj(f, h)), {{"element", f.str()}, {"conjugator", h.str()}});

    W2 base = conj(alpha(), z_elem(rng.uniform(-4, 4))) * lift(base_w1());
    W2 zc = conj(base, z_elem(rng.uniform(-5, 5)));
    l4.record(zc.top() == ZPow(), {{"element", base.str()}});
  }
  l1.emit(r, "chain.image_in_first_rational_copy");
  l2.emit(r, "chain.base_in_first_copy");
  l3.emit(r, "chain.first_copy_in_base");
  l4.emit(r, "chain.base_in_wreath");

  // Conjugating by z^-1 moves φ_n^* off the first copy, so it is not normal in G itself.
  Tally neg;
  W2 moved = conj(phi_star(2), z_elem(-1));
  bool leaves = !first_copy_only(moved) && !is_identity(moved.at(ZPow(-1L)));
  neg.record(leaves, {{"value_at_z^-1", moved.at(ZPow(-1L)).str()}});
  neg.emit(r, "chain.first_copy_not_normal_in_G", {{"support", "z^-1"}, {"value", moved.at(ZPow(-1L)).str()}});
  return r;
}

}  // namespace wreathord
