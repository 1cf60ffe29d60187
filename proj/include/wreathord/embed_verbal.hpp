#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "wreathord/embed_rationals.hpp"
#include "wreathord/verbal_witness.hpp"
#include "wreathord/wreath.hpp"

namespace wreathord {

/// Q Wr S with S the selected nilpotent group.
using TElement = Wreath<Rational, MalcevElement>;
/// T Wr C, C = <c>.
using DElement = Wreath<TElement, CPow>;
/// D Wr Z, Z = <z>; contains G = <ω, z>.
using GVElement = Wreath<DElement, ZPow>;

using SBasis = std::shared_ptr<const RayBasis<MalcevElement>>;

/// One letter of a word in T: a_i (1-based), χ_n or ψ_n, with a sign.
struct TLetter {
  enum class Kind { A, Chi, Psi };
  Kind kind = Kind::A;
  long index = 1;
  int sign = 1;
};

/// One letter of a word in the generators of D: c, or π_g for a T-word g, with a sign.
struct DLetter {
  bool is_c = true;
  std::vector<TLetter> g;
  int sign = 1;
};

using TWord = std::vector<TLetter>;
using DWord = std::vector<DLetter>;

inline TElement t_chi(const SBasis& basis, const BigInt& n) {
  require_positive(n, "chi");
  auto one = MalcevElement::identity(basis->a().rank(), basis->a().order_sign());
  return TElement::of(std::make_shared<NamedRay<MalcevElement>>(
      "chi(" + n.get_str() + ")", RayStepFunction<MalcevElement>::ray(basis, one, 0, Rational(1, n))));
}

inline TElement t_psi(const SBasis& basis, const BigInt& n) {
  require_positive(n, "psi");
  auto one = MalcevElement::identity(basis->a().rank(), basis->a().order_sign());
  return TElement::of(std::make_shared<NamedRay<MalcevElement>>(
      "psi(" + n.get_str() + ")", RayStepFunction<MalcevElement>::point(basis, one, Rational(1, n))));
}

/// q at the identity of S and 0 elsewhere.
inline TElement t_point(const SBasis& basis, const Rational& q) {
  if (q.is_zero()) return TElement();
  auto one = MalcevElement::identity(basis->a().rank(), basis->a().order_sign());
  return TElement::of(std::make_shared<NamedRay<MalcevElement>>("", RayStepFunction<MalcevElement>::point(basis, one, q)));
}

/// π_g: g at c^i for i >= 0, identity otherwise.
inline DElement pi(const TElement& g) {
  if (is_identity(g)) return DElement();
  return DElement::of(std::make_shared<NamedStep<TElement, 'c'>>("pi(" + g.str() + ")", StepFunction<TElement>::from(0, g)));
}

/// ρ_g: g at c^0, identity elsewhere (the first copy of T).
inline DElement rho(const TElement& g) { return first_copy<TElement, 'c'>(g, "rho(" + g.str() + ")"); }

inline DElement d_c(const BigInt& e = 1) { return DElement::top_only(CPow(e)); }
inline GVElement gv_z(const BigInt& e = 1) { return GVElement::top_only(ZPow(e)); }

/// Deterministic sequence d_0, d_1, ... covering D, duplicates allowed.
///
/// d_0 = c and d_{2n-1} = π_{ψ_n^-1}. The even index 2m + 2 carries the word coded by m: the
/// binary digits of m read as 1 0^{l_1} 1 0^{l_2} ... give letter codes l_1, l_2, ...; code 0
/// is c, 1 is c^-1, 2t + 2 and 2t + 3 are π_g and π_g^-1 for the T-word g coded by t in the
/// same way over the letters a_1, a_1^-1, ..., a_r^-1, χ_1, χ_1^-1, χ_2, ....
class DEnumeration {
 public:
  DEnumeration(std::vector<MalcevElement> gens, SBasis basis) : gens_(std::move(gens)), basis_(std::move(basis)) {}

  static std::size_t psi_index(const BigInt& n) {
    require_positive(n, "psi_index");
    return static_cast<std::size_t>(2 * n.get_ui() - 1);
  }

  const SBasis& basis() const { return basis_; }
  const std::vector<MalcevElement>& generators() const { return gens_; }

  /// Letter codes of m.
  static std::vector<std::size_t> decode(std::size_t m) {
    std::vector<std::size_t> out;
    if (m == 0) return out;
    int top = 63;
    while (!((m >> top) & 1U)) --top;
    for (int b = top; b >= 0; --b) {
      if ((m >> b) & 1U)
        out.push_back(0);
      else
        ++out.back();
    }
    return out;
  }

  TWord t_word(std::size_t t) const {
    TWord w;
    for (auto code : decode(t)) {
      TLetter l;
      l.sign = code % 2 == 0 ? 1 : -1;
      std::size_t idx = code / 2;
      if (idx < gens_.size()) {
        l.index = static_cast<long>(idx + 1);
      } else {
        l.kind = TLetter::Kind::Chi;
        l.index = static_cast<long>(idx - gens_.size() + 1);
      }
      w.push_back(l);
    }
    return w;
  }

  DWord word(std::size_t k) const {
    if (k == 0) return {DLetter{}};
    if (k % 2 == 1) {
      long n = static_cast<long>((k + 1) / 2);
      return {DLetter{false, {TLetter{TLetter::Kind::Psi, n, -1}}, 1}};
    }
    DWord w;
    for (auto code : decode((k - 2) / 2)) {
      if (code < 2) {
        w.push_back(DLetter{true, {}, code == 0 ? 1 : -1});
        continue;
      }
      w.push_back(DLetter{false, t_word((code - 2) / 2), code % 2 == 0 ? 1 : -1});
    }
    return w;
  }

  TElement t_value(const TWord& w) const {
    TElement out;
    for (const auto& l : w) {
      TElement g;
      switch (l.kind) {
        case TLetter::Kind::A: g = TElement::top_only(gens_.at(static_cast<std::size_t>(l.index - 1))); break;
        case TLetter::Kind::Chi: g = t_chi(basis_, l.index); break;
        case TLetter::Kind::Psi: g = t_psi(basis_, l.index); break;
      }
      out = out * (l.sign > 0 ? g : g.inverse());
    }
    return out;
  }

  DElement value(const DWord& w) const {
    DElement out;
    for (const auto& l : w) {
      DElement x = l.is_c ? d_c() : pi(t_value(l.g));
      out = out * (l.sign > 0 ? x : x.inverse());
    }
    return out;
  }

  DElement at(std::size_t k) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(k);
    if (it != cache_.end()) return it->second;
    DElement v = value(word(k));
    cache_.emplace(k, v);
    return v;
  }

  static std::string t_str(const TWord& w) {
    if (w.empty()) return "1";
    std::string out;
    for (const auto& l : w) {
      if (!out.empty()) out += "*";
      auto i = std::to_string(l.index);
      out += l.kind == TLetter::Kind::A ? "a" + i : (l.kind == TLetter::Kind::Chi ? "chi(" : "psi(") + i + ")";
      if (l.sign < 0) out += "^-1";
    }
    return out;
  }

  static std::string str(const DWord& w) {
    if (w.empty()) return "1";
    std::string out;
    for (const auto& l : w) {
      if (!out.empty()) out += " ";
      out += l.is_c ? "c" : "pi(" + t_str(l.g) + ")";
      if (l.sign < 0) out += "^-1";
    }
    return out;
  }

 private:
  std::vector<MalcevElement> gens_;
  SBasis basis_;
  mutable std::mutex mu_;
  mutable std::map<std::size_t, DElement> cache_;
};

/// ω(z^i) = d_k if i = 2^k, identity otherwise.
class OmegaKernel final : public DyadicKernel<DElement, 'z'> {
 public:
  explicit OmegaKernel(std::shared_ptr<const DEnumeration> e) : e_(std::move(e)) {}
  std::string name() const override { return "omega"; }
  DElement at_power(std::size_t k) const override { return e_->at(k); }
  bool same_function(const AtomKernel<DElement, ZPow>& other) const override {
    auto* o = dynamic_cast<const OmegaKernel*>(&other);
    return o && o->e_ == e_;
  }

 private:
  std::shared_ptr<const DEnumeration> e_;
};

/// Everything the verbal construction depends on: the selected S, its ray basis, the
/// enumeration of D and the ω atom built from it.
class VerbalContext {
 public:
  explicit VerbalContext(const Word& word) : sel_(select_S(word)) {
    basis_ = std::make_shared<const RayBasis<MalcevElement>>(sel_.a);
    enumeration_ = std::make_shared<const DEnumeration>(sel_.generators, basis_);
    omega_ = std::make_shared<const OmegaKernel>(enumeration_);
  }

  const SelectedGroup<MalcevElement>& selected() const { return sel_; }
  const SBasis& basis() const { return basis_; }
  const DEnumeration& enumeration() const { return *enumeration_; }
  const std::shared_ptr<const OmegaKernel>& omega_kernel() const { return omega_; }

  TElement a() const { return TElement::top_only(sel_.a); }
  TElement generator(std::size_t i) const { return TElement::top_only(sel_.generators.at(i - 1)); }
  MalcevElement s_identity() const { return MalcevElement::identity(sel_.a.rank(), sel_.a.order_sign()); }

 private:
  SelectedGroup<MalcevElement> sel_;
  SBasis basis_;
  std::shared_ptr<const DEnumeration> enumeration_;
  std::shared_ptr<const OmegaKernel> omega_;
};

inline TElement chi(const VerbalContext& ctx, const BigInt& n) { return t_chi(ctx.basis(), n); }
inline TElement psi(const VerbalContext& ctx, const BigInt& n) { return t_psi(ctx.basis(), n); }

/// a^-1 a^{χ_n} for a given top element a.
inline TElement psi_via(const VerbalContext& ctx, const TElement& a, const BigInt& n) {
  return a.inverse() * conj(a, chi(ctx, n));
}

struct PsiCertificate {
  TElement value;
  /// ψ_n = v(args)^-1 v(args^{χ_n}), a product of values of the word.
  VerbalWitness<TElement> witness;
};

/// ψ_n computed as a^-1 a^{χ_n}, checked against the point function and certified as an
/// element of V(T). Throws ConstructionViolated on any mismatch.
inline PsiCertificate psi_from_witness(const VerbalContext& ctx, const BigInt& n) {
  TElement x = chi(ctx, n);
  PsiCertificate out;
  out.value = psi_via(ctx, ctx.a(), n);
  const auto& terms = ctx.selected().witness.terms;
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    std::vector<TElement> args;
    for (const auto& g : it->args) args.push_back(TElement::top_only(g));
    out.witness.terms.push_back({it->word, std::move(args), -it->eps});
  }
  for (const auto& t : terms) {
    std::vector<TElement> args;
    for (const auto& g : t.args) args.push_back(conj(TElement::top_only(g), x));
    out.witness.terms.push_back({t.word, std::move(args), t.eps});
  }
  out.witness.a = out.value;
  if (!w_equal(out.value, psi(ctx, n)).is_equal())
    throw ConstructionViolated("a^-1 a^chi(" + n.get_str() + ") differs from psi(" + n.get_str() + ")");
  if (!w_equal(out.witness.replay(), out.value).is_equal())
    throw ConstructionViolated("verbal certificate of psi(" + n.get_str() + ") does not replay");
  return out;
}

inline GVElement omega(const VerbalContext& ctx) { return GVElement::of(ctx.omega_kernel()); }

/// ω^{z^{-2^k}}, whose value at z^0 is d_k.
inline GVElement omega_at(const VerbalContext& ctx, std::size_t k) {
  return conj(omega(ctx), gv_z(-(BigInt(1) << static_cast<mp_bitcnt_t>(k))));
}

struct OmegaCommutator {
  GVElement value;
  /// [d_n, d_m], the claimed value at z^0.
  DElement at_zero;
  /// Verdict of value against the first-copy element carrying at_zero.
  Verdict<ZPow> certificate;
};

/// [ω^{z^{-2^n}}, ω^{z^{-2^m}}] with its certificate: [d_n, d_m] at z^0 and identity elsewhere.
inline OmegaCommutator omega_commutator(const VerbalContext& ctx, std::size_t n, std::size_t m) {
  OmegaCommutator out;
  if (n == m) return out;
  out.value = comm(omega_at(ctx, n), omega_at(ctx, m));
  const auto& e = ctx.enumeration();
  out.at_zero = comm(e.at(n), e.at(m));
  out.certificate = w_equal(out.value, first_copy<DElement, 'z'>(out.at_zero));
  return out;
}

struct VerbalEmbedding {
  Rational q;
  std::size_t p = 0;  ///< index with d_p = π_{ψ_n^-1}
  std::size_t r = 0;  ///< index with d_r = c
  std::string expr;   ///< the word in the expression grammar
  GVElement value;
  /// First-copy image of ψ_n^m: m/n at (z^0, c^0, 1).
  GVElement certificate;
};

inline GVElement verbal_certificate(const VerbalContext& ctx, const Rational& q) {
  return first_copy<DElement, 'z'>(first_copy<TElement, 'c'>(t_point(ctx.basis(), q)));
}

/// m/n -> [ω^{z^{-2^p}}, ω^{z^{-2^r}}]^m with d_p = π_{ψ_n^-1}, d_r = c.
inline VerbalEmbedding embed_verbal(const VerbalContext& ctx, const Rational& q) {
  VerbalEmbedding out;
  out.q = q;
  out.certificate = verbal_certificate(ctx, q);
  if (q.is_zero()) {
    out.expr = "(pow z 0)";
    return out;
  }
  out.p = DEnumeration::psi_index(q.denominator());
  out.r = 0;
  BigInt sp = BigInt(1) << static_cast<mp_bitcnt_t>(out.p);
  BigInt sr = BigInt(1) << static_cast<mp_bitcnt_t>(out.r);
  out.value = power(comm(omega_at(ctx, out.p), omega_at(ctx, out.r)), q.numerator());
  std::string c = "(comm (conj omega (pow z -" + sp.get_str() + ")) (conj omega (pow z -" + sr.get_str() + ")))";
  out.expr = q.numerator() == 1 ? c : "(pow " + c + " " + q.numerator().get_str() + ")";
  return out;
}

/// c^k π_{g_1}^{c^{k_1}} ... π_{g_s}^{c^{k_s}} with exponents.
struct DNormalForm {
  struct Factor {
    TElement g;
    std::string name;
    BigInt shift;
    int exp = 1;
  };
  BigInt k;
  std::vector<Factor> factors;

  DElement evaluate() const {
    DElement out = d_c(k);
    for (const auto& f : factors) {
      DElement x = conj(pi(f.g), d_c(f.shift));
      out = out * (f.exp > 0 ? x : x.inverse());
    }
    return out;
  }

  std::string str() const {
    std::string out = "c^" + k.get_str();
    for (const auto& f : factors)
      out += " pi(" + f.name + ")^{c^" + f.shift.get_str() + "}" + (f.exp < 0 ? "^-1" : "");
    return out;
  }
};

/// Rewrites a D-word with π_g^e c^m = c^m (π_g^{c^m})^e.
inline DNormalForm d_normal_form(const DEnumeration& e, const DWord& w) {
  BigInt k = 0;
  std::vector<std::pair<BigInt, const DLetter*>> raw;
  for (const auto& l : w) {
    if (l.is_c)
      k += l.sign;
    else
      raw.emplace_back(k, &l);
  }
  DNormalForm nf;
  nf.k = k;
  for (const auto& [k0, l] : raw) nf.factors.push_back({e.t_value(l->g), DEnumeration::t_str(l->g), k - k0, l->sign});
  return nf;
}

}  // namespace wreathord
