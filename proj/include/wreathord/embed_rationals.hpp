#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "wreathord/rational.hpp"
#include "wreathord/wreath.hpp"

namespace wreathord {

/// Q Wr C, C = <c>.
using W1 = Wreath<Rational, Cyclic<'c'>>;
/// (Q Wr C) Wr Z, Z = <z>.
using W2 = Wreath<W1, Cyclic<'z'>>;

using CPow = Cyclic<'c'>;
using ZPow = Cyclic<'z'>;

inline void require_positive(const BigInt& n, const char* what) {
  if (n <= 0) throw InvalidArgument(std::string(what) + ": n must be >= 1");
}

/// τ_n: 0 at c^i for i < 0, -1/n for i >= 0.
inline W1 tau(const BigInt& n) {
  require_positive(n, "tau");
  auto k = std::make_shared<NamedStep<Rational, 'c'>>("tau(" + n.get_str() + ")",
                                                     StepFunction<Rational>::from(0, Rational(-1, n)));
  return W1::of(std::move(k));
}

/// φ_n: 1/n at c^0, 0 elsewhere.
inline W1 phi(const BigInt& n) {
  require_positive(n, "phi");
  auto k = std::make_shared<NamedStep<Rational, 'c'>>("phi(" + n.get_str() + ")",
                                                     StepFunction<Rational>::point(0, Rational(1, n)));
  return W1::of(std::move(k));
}

inline W1 c_elem(long e = 1) { return W1::top_only(CPow(e)); }
inline W2 z_elem(long e = 1) { return W2::top_only(ZPow(e)); }

/// The rational q placed at c^0 (the first copy of Q in Q Wr C).
inline W1 point_c(const Rational& q) {
  if (q.is_zero()) return W1();
  return W1::of(std::make_shared<NamedStep<Rational, 'c'>>("", StepFunction<Rational>::point(0, q)));
}

/// α(z^j) = 1 for j < 0, c for j = 0, τ_j for j > 0.
class AlphaKernel final : public HarmonicKernel<'z', 'c'> {
 public:
  std::string name() const override { return "alpha"; }
  Rational weight() const override { return Rational(-1); }
  W1 value(const ZPow& at) const override {
    if (at.exponent < 0) return W1();
    if (at.exponent == 0) return c_elem();
    return tau(at.exponent);
  }
};

inline W2 alpha() {
  static const auto kernel = std::make_shared<const AlphaKernel>();
  return W2::of(kernel);
}

/// g placed at z^0 (first copy of Q Wr C in W2).
inline W2 lift(const W1& g) { return first_copy<W1, 'z'>(g); }

/// φ_n^* lifted: the first-copy element whose value at z^0 is φ_n.
inline W2 phi_star(const BigInt& n) { return lift(phi(n)); }

/// Word over {α, z} stored as syllables (generator, exponent); adjacent syllables merged.
class GWord {
 public:
  enum class Gen { Alpha, Z };
  struct Syllable {
    Gen gen;
    BigInt exp;
  };

  GWord() = default;
  static GWord alpha(long e = 1) { return GWord().times(Gen::Alpha, e); }
  static GWord z(const BigInt& e) { return GWord().times(Gen::Z, e); }

  GWord times(Gen g, const BigInt& e) const {
    GWord out = *this;
    out.push(g, e);
    return out;
  }

  const std::vector<Syllable>& syllables() const { return syl_; }
  bool empty() const { return syl_.empty(); }

  friend GWord operator*(const GWord& a, const GWord& b) {
    GWord out = a;
    for (const auto& s : b.syl_) out.push(s.gen, s.exp);
    return out;
  }
  GWord inverse() const {
    GWord out;
    for (auto it = syl_.rbegin(); it != syl_.rend(); ++it) out.push(it->gen, BigInt(-it->exp));
    return out;
  }
  GWord pow(const BigInt& n) const {
    GWord base = n < 0 ? inverse() : *this;
    GWord out;
    for (BigInt e = abs(n); e != 0; e >>= 1) {
      if (mpz_odd_p(e.get_mpz_t())) out = out * base;
      if (e > 1) base = base * base;
    }
    return out;
  }
  /// x^y = y^-1 x y
  GWord conj(const GWord& y) const { return y.inverse() * *this * y; }
  static GWord comm(const GWord& x, const GWord& y) { return x.inverse() * y.inverse() * x * y; }

  W2 evaluate() const {
    if (syl_.empty()) return W2();
    const auto kernel = ::wreathord::alpha().base().front().kernel;
    std::vector<W2> parts;
    parts.reserve(syl_.size());
    for (const auto& s : syl_) parts.push_back(s.gen == Gen::Z ? W2::top_only(ZPow(s.exp)) : W2::of(kernel, ZPow(), s.exp));
    return W2::product(parts);
  }

  std::string str() const {
    if (syl_.empty()) return "1";
    std::string out;
    for (const auto& s : syl_) {
      if (!out.empty()) out += " ";
      out += s.gen == Gen::Alpha ? "alpha" : "z";
      if (s.exp != 1) out += "^" + s.exp.get_str();
    }
    return out;
  }

  /// The word as an expression in the CLI grammar.
  std::string expr() const {
    std::vector<std::string> parts;
    for (const auto& s : syl_) {
      std::string g = s.gen == Gen::Alpha ? "alpha" : "z";
      parts.push_back(s.exp == 1 ? g : "(pow " + g + " " + s.exp.get_str() + ")");
    }
    if (parts.empty()) return "(pow z 0)";
    if (parts.size() == 1) return parts[0];
    std::string out = "(*";
    for (const auto& p : parts) out += " " + p;
    return out + ")";
  }

 private:
  void push(Gen g, const BigInt& e) {
    if (e == 0) return;
    if (!syl_.empty() && syl_.back().gen == g) {
      syl_.back().exp += e;
      if (syl_.back().exp == 0) syl_.pop_back();
      return;
    }
    syl_.push_back({g, e});
  }
  std::vector<Syllable> syl_;
};

/// Φ(m/n) = [α^{z^-n}, α]^m for the canonical fraction m/n.
inline GWord big_phi(const Rational& q) {
  BigInt n = q.denominator();
  GWord a = GWord::alpha();
  GWord conjugated = a.conj(GWord::z(BigInt(-n)));
  return GWord::comm(conjugated, a).pow(q.numerator());
}

/// The evaluation Φ(q) is certified to have: the first-copy element whose value at z^0 is
/// q placed at c^0.
inline W2 big_phi_certificate(const Rational& q) { return lift(point_c(q)); }

/// z^k (α^{z^k1})^n1 ... (α^{z^ks})^ns, factors in product order with adjacent equal shifts merged.
struct GNormalForm {
  BigInt k;
  std::vector<std::pair<BigInt, BigInt>> factors;  // (shift, exponent)

  /// Exponents summed per shift (the tail symbol).
  std::map<BigInt, BigInt> grouped() const {
    std::map<BigInt, BigInt> out;
    for (const auto& [s, n] : factors) out[s] += n;
    for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
  }

  std::optional<BigInt> min_shift() const {
    std::optional<BigInt> m;
    for (const auto& f : factors)
      if (!m || f.first < *m) m = f.first;
    return m;
  }

  W2 evaluate() const {
    std::vector<W2::AtomT> atoms;
    for (const auto& [s, n] : factors) atoms.push_back(W2::AtomT{alpha().base().front().kernel, ZPow(s), n});
    return W2(ZPow(k), std::move(atoms));
  }

  /// Base part only, without the z^k prefix.
  W2 base_part() const {
    auto full = evaluate();
    return W2(ZPow(), full.base());
  }

  std::string str() const {
    std::string out = "z^" + k.get_str();
    for (const auto& [s, n] : factors) out += " (alpha^{z^" + s.get_str() + "})^" + n.get_str();
    return out;
  }
};

/// Rewrites a word into normal form using α^n z^m = z^m (α^{z^m})^n.
inline GNormalForm g_normal_form(const GWord& w) {
  // A factor appended while the running z-power is k0 ends with shift k_final - k0.
  BigInt k = 0;
  std::vector<std::pair<BigInt, BigInt>> raw;  // (k0, exponent)
  for (const auto& s : w.syllables()) {
    if (s.gen == GWord::Gen::Z) {
      k += s.exp;
      continue;
    }
    if (!raw.empty() && raw.back().first == k) {
      raw.back().second += s.exp;
      if (raw.back().second == 0) raw.pop_back();
    } else {
      raw.emplace_back(k, s.exp);
    }
  }
  GNormalForm nf;
  nf.k = k;
  for (auto& [k0, n] : raw) nf.factors.emplace_back(k - k0, std::move(n));
  return nf;
}

/// [α^{z^-n}, α](z^j), computed by evaluating the commutator.
inline W1 commutator_table(const BigInt& n, const BigInt& j) {
  require_positive(n, "commutator_table");
  W2 a = alpha();
  W2 x = comm(conj(a, W2::top_only(ZPow(BigInt(-n)))), a);
  return x.at(ZPow(j));
}

/// Which of the five displayed cases (j < -n, j = -n, -n < j < 0, j = 0, j > 0) applies,
/// and the value the display assigns to it.
inline std::pair<int, W1> commutator_case(const BigInt& n, const BigInt& j) {
  if (j < -n) return {0, W1()};
  if (j == -n) return {1, W1()};
  if (j < 0) return {2, W1()};
  if (j == 0) return {3, phi(n)};
  return {4, W1()};
}

/// One factor (τ_i^{c^k})^n of a product of τ-conjugates.
struct TauFactor {
  BigInt shift;
  BigInt index;
  BigInt exp;
};

/// Canonical step function of a product of shifted τ powers, by direct evaluation.
inline StepFunction<Rational> beta_tilde(const std::vector<TauFactor>& factors) {
  W1 acc;
  for (const auto& f : factors) {
    require_positive(f.index, "beta_tilde");
    acc = acc * power(conj(tau(f.index), W1::top_only(CPow(f.shift))), f.exp);
  }
  return acc.step_form();
}

/// Canonical form of a formal product of τ/φ atoms (all over the same <c>).
inline StepFunction<Rational> stepfun_canonicalize(const W1& product) { return product.step_form(); }

}  // namespace wreathord
