#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wreathord/embed_verbal.hpp"
#include "wreathord/sampling.hpp"
#include "wreathord/verify_section2.hpp"

namespace wreathord {

/// Image of m/n in T: (a^-1 a^{χ_n})^m, built from the verbal construction.
inline TElement verbal_t_image(const VerbalContext& ctx, const Rational& q) {
  if (q.is_zero()) return TElement();
  return power(psi_from_witness(ctx, q.denominator()).value, q.numerator());
}

/// Checks of the verbal embedding for one word set. `budget` scales sample counts in percent.
inline Report verify_theorem2(const Word& word, std::uint64_t seed, long budget = 100) {
  using detail::Json;
  using detail::Tally;
  VerbalContext ctx(word);
  const auto& sel = ctx.selected();
  Report r("verbal", seed, budget);
  Rng rng(seed);

  {
    auto w = verify_witness(sel.witness);
    for (auto c : w.checks()) {
      c.witness["family"] = sel.family_name();
      c.witness["order_inverted"] = sel.order_inverted;
      r.add(std::move(c));
    }
  }
  {
    Tally t;
    for (long n = 1; n <= 50; ++n) {
      try {
        auto cert = psi_from_witness(ctx, n);
        t.record(verify_witness(cert.witness).passed(), {{"n", n}});
      } catch (const ConstructionViolated& e) {
        t.record(false, {{"n", n}, {"error", e.what()}});
      }
    }
    t.emit(r, "psi.from_witness", {{"range", "n in [1,50]"}, {"family", sel.family_name()}});
  }
  {
    // Inverting the witness must break the identity.
    Tally t;
    auto v = w_equal(psi_via(ctx, ctx.a().inverse(), 3), psi(ctx, 3));
    t.record(v.is_distinct(), {{"verdict", v.is_equal() ? "Equal" : "not distinct"}});
    Json at;
    if (v.witness) at["differs_at"] = v.witness->str();
    t.emit(r, "psi.negative_control", at);
  }

  const std::size_t pairs = scaled(200, budget);
  {
    Tally ord, hom;
    for (std::size_t i = 0; i < pairs; ++i) {
      Rational p = rng.rational(50, 50), q = i % 10 == 0 ? p : rng.rational(50, 50);
      Json ctxj{{"p", p.str()}, {"q", q.str()}};
      TElement ip = verbal_t_image(ctx, p), iq = verbal_t_image(ctx, q);
      detail::guarded(ord, ctxj, [&] {
        Ordering got = w_compare(ip, iq);
        Json data = ctxj;
        data["order"] = to_string(got);
        ord.record(got == rat_cmp(p, q), data);
      });
      detail::expect_equal(hom, ip * iq, verbal_t_image(ctx, p + q), true, ctxj);
    }
    ord.emit(r, "lemma2.order");
    hom.emit(r, "lemma2.homomorphism");
  }
  {
    Tally t;
    const std::size_t n = scaled(50, budget);
    for (std::size_t i = 0; i < n; ++i) {
      TWord w = random_tword(rng, sel.generators.size(), 10);
      TElement g = ctx.enumeration().t_value(w);
      detail::expect_equal(t, comm(pi(g.inverse()), d_c()), rho(g), true, {{"g", DEnumeration::t_str(w)}});
    }
    t.emit(r, "pi_rho.identity");
  }
  {
    Tally t;
    const std::size_t n = scaled(50, budget);
    for (std::size_t i = 0; i < n; ++i) {
      DWord w = random_dword(rng, sel.generators.size(), 8);
      auto nf = d_normal_form(ctx.enumeration(), w);
      detail::expect_equal(t, ctx.enumeration().value(w), nf.evaluate(), true,
                           {{"word", DEnumeration::str(w)}, {"normal_form", nf.str()}});
    }
    t.emit(r, "d.normal_form");
  }
  {
    Tally t;
    const auto& e = ctx.enumeration();
    t.record(is_identity(omega(ctx).at(ZPow(0L))), {{"z^0", "expected identity"}});
    t.record(w_equal(omega(ctx).at(ZPow(1L)), e.at(0)).is_equal(), {{"z^1", "expected d_0"}});
    t.record(w_equal(omega(ctx).at(ZPow(2L)), e.at(1)).is_equal(), {{"z^2", "expected d_1"}});
    t.record(is_identity(omega(ctx).at(ZPow(3L))), {{"z^3", "expected identity"}});
    for (std::size_t k = 0; k <= 8; ++k)
      t.record(w_equal(omega_at(ctx, k).at(ZPow(0L)), e.at(k)).is_equal(), {{"k", k}});
    t.record(w_equal(e.at(0), d_c()).is_equal() && w_equal(e.at(3), pi(psi(ctx, 2).inverse())).is_equal(),
             {{"reserved", "d_0 = c, d_3 = pi(psi(2)^-1)"}});
    t.emit(r, "omega.values");
  }
  {
    Tally cert, scan;
    for (std::size_t n = 0; n <= 8; ++n)
      for (std::size_t m = 0; m <= 8; ++m) {
        if (n == m) continue;
        Json ctxj{{"n", n}, {"m", m}};
        auto oc = omega_commutator(ctx, n, m);
        if (oc.certificate.is_unknown())
          cert.unknown(oc.certificate.bound, ctxj);
        else
          cert.record(oc.certificate.is_equal(), ctxj);
        // Brute force over |j| <= 2^{max(n,m)+2}.
        long bound = 1L << (std::max(n, m) + 2);
        bool ok = w_equal(oc.value.at(ZPow(0L)), oc.at_zero).is_equal();
        for (long j = -bound; j <= bound && ok; ++j)
          if (j != 0) ok = is_identity(oc.value.at(ZPow(j)));
        scan.record(ok, ctxj);
      }
    cert.emit(r, "omega.commutator_certificate", {{"range", "n != m in [0,8]"}});
    scan.emit(r, "omega.commutator_scan", {{"range", "n != m in [0,8], |j| <= 2^(max+2)"}});
  }
  {
    Tally hom, crt, inj, ord;
    const std::size_t n = scaled(100, budget);
    detail::expect_equal(inj, embed_verbal(ctx, Rational(0)).value, GVElement(), true, {{"q", "0"}});
    for (std::size_t i = 0; i < n; ++i) {
      Rational p = rng.rational(50, 50), q = i % 10 == 0 ? p : rng.rational(50, 50);
      Json ctxj{{"p", p.str()}, {"q", q.str()}};
      auto ep = embed_verbal(ctx, p), eq = embed_verbal(ctx, q), epq = embed_verbal(ctx, p + q);
      detail::expect_equal(hom, ep.value * eq.value, epq.value, true, ctxj);
      detail::expect_equal(crt, ep.value, ep.certificate, true, ctxj);
      detail::expect_equal(inj, ep.value, GVElement(), p.is_zero(), ctxj);
      detail::guarded(ord, ctxj, [&] {
        Ordering got = w_compare(ep.value, eq.value);
        Json data = ctxj;
        data["order"] = to_string(got);
        ord.record(got == rat_cmp(p, q), data);
      });
    }
    hom.emit(r, "embed.homomorphism");
    crt.emit(r, "embed.certificate");
    inj.emit(r, "embed.injective");
    ord.emit(r, "embed.order");
  }
  {
    // Chain: image <= Q at 1 <= Q^S <= T, first copy of T <= T^C <= D, first copy of D <= D^Z.
    Tally l1, l2, l3, l4, l5, l6;
    const std::size_t n = scaled(20, budget);
    const auto rank = sel.generators.size();
    for (std::size_t i = 0; i < n; ++i) {
      Rational q = rng.rational(50, 50);
      TElement img = t_point(ctx.basis(), q);
      TElement ray = chi(ctx, rng.uniform(1, 10)) * chi(ctx, rng.uniform(1, 10)).inverse();
      detail::expect_equal(l1, conj(img, ray), img, true, {{"q", q.str()}});

      TElement g = ctx.enumeration().t_value(random_tword(rng, rank, 4));
      TElement b = ray * chi(ctx, rng.uniform(1, 10));
      l2.record(is_identity(conj(b, g).top()), {{"conjugator", g.str()}});

      DElement first = rho(g);
      DElement h = pi(ctx.enumeration().t_value(random_tword(rng, rank, 3)));
      DElement fc = conj(first, h);
      detail::expect_equal(l3, fc, rho(fc.at(CPow(0L))), true, {{"element", first.str()}, {"conjugator", h.str()}});

      DElement base = h * rho(g);
      l4.record(conj(base, d_c(rng.uniform(-3, 3))).top() == CPow(), {{"element", base.str()}});

      GVElement lifted = first_copy<DElement, 'z'>(rho(g));
      GVElement wc = conj(omega(ctx), gv_z(rng.uniform(-4, 4)));
      GVElement lc = conj(lifted, wc);
      detail::expect_equal(l5, lc, first_copy<DElement, 'z'>(lc.at(ZPow(0L))), true, {{"conjugator", wc.str()}});

      GVElement gb = wc * lifted;
      l6.record(conj(gb, gv_z(rng.uniform(-5, 5))).top() == ZPow(), {{"element", gb.str()}});
    }
    l1.emit(r, "chain.image_in_point_copy");
    l2.emit(r, "chain.ray_base_in_t");
    l3.emit(r, "chain.first_t_copy_in_d_base");
    l4.emit(r, "chain.d_base_in_d");
    l5.emit(r, "chain.first_d_copy_in_base");
    l6.emit(r, "chain.base_in_wreath");
  }
  {
    // G lies in 𝔄𝔑_c𝔄𝔄, which is contained in the solvable variety of length c + 3.
    Tally t;
    const int len = sel.nilpotency_class + 3;
    const std::size_t n = scaled(3, budget);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<GVElement> args;
      std::vector<std::string> shown;
      for (int a = 0; a < (1 << len); ++a) {
        args.push_back(random_gv(rng, ctx, 3));
        shown.push_back(args.back().str());
      }
      detail::expect_equal(t, derived_value<GVElement>(args), GVElement(), true, {{"tuple", shown}});
    }
    t.emit(r, "variety.delta_c_plus_3", {{"derived_length", len}, {"class", sel.nilpotency_class}});
  }
  return r;
}

}  // namespace wreathord
