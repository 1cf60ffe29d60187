#pragma once

#include <algorithm>
#include <atomic>
#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "wreathord/atom.hpp"
#include "wreathord/errors.hpp"
#include "wreathord/group.hpp"
#include "wreathord/order.hpp"

namespace wreathord {

/// Tunables of the equality engine.
struct EngineOptions {
  /// Width of the fallback scan window beyond the outermost shifts.
  std::atomic<long> window{64};
  /// Largest dyadic exponent scanned before an ω-type product is declared undecided.
  std::atomic<long> dyadic_limit{512};
};

inline EngineOptions& engine_options() {
  static EngineOptions opts;
  return opts;
}

template <class F, class C>
class Wreath;

template <class F>
struct is_wreath : std::false_type {};
template <class F, class C>
struct is_wreath<Wreath<F, C>> : std::true_type {};

template <class F>
struct inner_cyclic : std::false_type {};
template <char I>
struct inner_cyclic<Wreath<Rational, Cyclic<I>>> : std::true_type {
  static constexpr char symbol = I;
};

/// Z -> (Q Wr <c>): identity below 0, arbitrary at 0, and for j >= 1 the base-only element
/// with value weight()/j on [0, inf) and 0 below. α is the instance with weight -1.
template <char Sym, char Inner>
class HarmonicKernel : public AtomKernel<Wreath<Rational, Cyclic<Inner>>, Cyclic<Sym>> {
 public:
  virtual Rational weight() const = 0;
  AtomKind kind() const override { return AtomKind::Harmonic; }
  std::optional<Cyclic<Sym>> support_lower_bound() const override { return Cyclic<Sym>(0L); }
  bool trivially_identity_at(const Cyclic<Sym>& at) const override { return at.exponent < 0; }
};

/// Element top * f of the Cartesian wreath product F Wr C = C ⋉ F^C, with the action
/// f^b(b0) = f(b0 b^-1). The base f is a formal product of shifted atom powers, evaluated
/// lazily; it is never materialized unless an exact extensional form exists.
template <class F, class C>
class Wreath {
 public:
  using Fiber = F;
  using Coord = C;
  using AtomT = Atom<F, C>;
  using Kernel = AtomKernel<F, C>;
  using FT = group_traits<F>;
  using CT = group_traits<C>;

  Wreath() = default;
  Wreath(C top, std::vector<AtomT> base) : top_(std::move(top)), base_(std::move(base)) { canonicalize(); }

  static Wreath top_only(C t) { return Wreath(std::move(t), {}); }
  static Wreath of(std::shared_ptr<const Kernel> k, C shift = C{}, BigInt exp = 1) {
    std::vector<AtomT> atoms;
    atoms.push_back(AtomT{std::move(k), std::move(shift), std::move(exp)});
    return Wreath(C{}, std::move(atoms));
  }

  const C& top() const { return top_; }
  const std::vector<AtomT>& base() const { return base_; }

  /// Value of the base function at coordinate b.
  F at(const C& b) const {
    if constexpr (is_wreath<F>::value) {
      std::vector<F> values;
      for (const auto& a : base_)
        if (!a.kernel->trivially_identity_at(CT::mul(b, CT::inv(a.shift)))) values.push_back(a.value_at(b));
      return F::product(values);
    } else {
      F acc = FT::one();
      for (const auto& a : base_)
        if (!a.kernel->trivially_identity_at(CT::mul(b, CT::inv(a.shift)))) acc = FT::mul(acc, a.value_at(b));
      return acc;
    }
  }

  /// x_1 x_2 ... x_n, canonicalized once.
  static Wreath product(const std::vector<Wreath>& xs) {
    if (xs.size() == 1) return xs.front();
    std::vector<C> suffix(xs.size() + 1, CT::one());
    std::size_t total = 0;
    for (std::size_t i = xs.size(); i-- > 0;) {
      suffix[i] = CT::mul(xs[i].top_, suffix[i + 1]);
      total += xs[i].base_.size();
    }
    std::vector<AtomT> atoms;
    atoms.reserve(total);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const C& s = suffix[i + 1];
      bool shift = !CT::equal(s, CT::one());
      for (const auto& a : xs[i].base_) atoms.push_back(AtomT{a.kernel, shift ? CT::mul(a.shift, s) : a.shift, a.exp});
    }
    return Wreath(suffix[0], std::move(atoms));
  }

  friend Wreath operator*(const Wreath& x, const Wreath& y) {
    std::vector<AtomT> atoms;
    atoms.reserve(x.base_.size() + y.base_.size());
    bool shift = !CT::equal(y.top_, CT::one());
    for (const auto& a : x.base_) atoms.push_back(AtomT{a.kernel, shift ? CT::mul(a.shift, y.top_) : a.shift, a.exp});
    atoms.insert(atoms.end(), y.base_.begin(), y.base_.end());
    return Wreath(CT::mul(x.top_, y.top_), std::move(atoms));
  }

  Wreath inverse() const {
    C tinv = CT::inv(top_);
    bool shift = !CT::equal(tinv, CT::one());
    std::vector<AtomT> atoms;
    atoms.reserve(base_.size());
    for (auto it = base_.rbegin(); it != base_.rend(); ++it)
      atoms.push_back(AtomT{it->kernel, shift ? CT::mul(it->shift, tinv) : it->shift, BigInt(-it->exp)});
    return Wreath(tinv, std::move(atoms));
  }

  /// Pointwise inverse of the base function (the top is dropped).
  std::vector<AtomT> base_inverse() const {
    std::vector<AtomT> atoms;
    for (auto it = base_.rbegin(); it != base_.rend(); ++it) atoms.push_back(AtomT{it->kernel, it->shift, BigInt(-it->exp)});
    return atoms;
  }

  bool all_atoms(AtomKind k) const {
    return std::all_of(base_.begin(), base_.end(), [k](const AtomT& a) { return a.kernel->kind() == k; });
  }

  /// Canonical extensional form of an all-step base.
  StepFunction<F> step_form() const
    requires is_cyclic<C>::value
  {
    StepFunction<F> f;
    for (const auto& a : base_) {
      auto* k = dynamic_cast<const StepKernel<F, C::symbol>*>(a.kernel.get());
      if (!k) throw InvalidArgument("step_form: base contains a non-step atom " + a.kernel->name());
      f = f * k->steps().shifted(a.shift.exponent).pow(a.exp);
    }
    return f;
  }

  /// Canonical extensional form of an all-ray base.
  RayStepFunction<C> ray_form() const
    requires std::is_same_v<F, Rational>
  {
    RayStepFunction<C> f;
    for (const auto& a : base_) {
      auto* k = dynamic_cast<const RayKernel<C>*>(a.kernel.get());
      if (!k) throw InvalidArgument("ray_form: base contains a non-ray atom " + a.kernel->name());
      f = f + k->rays().shifted(a.shift).scaled(a.exp);
    }
    return f;
  }

  std::string str() const {
    std::string out;
    if (!CT::equal(top_, CT::one()) || base_.empty()) out = CT::str(top_);
    for (const auto& a : base_) {
      if (!out.empty()) out += " * ";
      std::string f = a.kernel->name();
      if (!CT::equal(a.shift, CT::one())) f += "^{" + CT::str(a.shift) + "}";
      if (a.exp != 1) f = "(" + f + ")^" + a.exp.get_str();
      out += f;
    }
    return out;
  }

 private:
  void canonicalize() {
    std::vector<AtomT> out;
    out.reserve(base_.size());
    for (auto& a : base_) {
      if (a.exp == 0) continue;
      if (!out.empty() && out.back().same_factor(a)) {
        out.back().exp += a.exp;
        if (out.back().exp == 0) out.pop_back();
        continue;
      }
      out.push_back(std::move(a));
    }
    base_ = std::move(out);
    if (base_.size() < 2) return;
    if constexpr (is_cyclic<C>::value) {
      if (all_atoms(AtomKind::Step)) {
        auto f = step_form();
        base_.clear();
        if (!f.is_identity())
          base_.push_back(AtomT{std::make_shared<NamedStep<F, C::symbol>>("", std::move(f)), C{}, 1});
      }
    } else if constexpr (std::is_same_v<F, Rational>) {
      if (all_atoms(AtomKind::Ray)) {
        auto f = ray_form();
        base_.clear();
        if (!f.is_zero()) base_.push_back(AtomT{std::make_shared<NamedRay<C>>("", std::move(f)), C{}, 1});
      }
    }
  }

  C top_{};
  std::vector<AtomT> base_;
};

template <class F, class C>
struct group_traits<Wreath<F, C>>;

namespace detail {

/// Least b with x(b) != y(b) for bases over Z, by the family-specific tail analysis.
template <class F, class C>
class CyclicDifference {
 public:
  using W = Wreath<F, C>;
  using FT = group_traits<F>;

  CyclicDifference(const W& x, const W& y) : x_(x), y_(y) {
    atoms_ = x.base_inverse();
    atoms_.insert(atoms_.end(), y.base().begin(), y.base().end());
  }

  Verdict<C> run() {
    if (x_.all_atoms(AtomKind::Step) && y_.all_atoms(AtomKind::Step)) {
      auto d = x_.step_form().first_difference(y_.step_form());
      return d ? Verdict<C>::distinct(C(*d)) : Verdict<C>::equal();
    }
    if constexpr (inner_cyclic<F>::value) {
      if (auto v = harmonic()) return *v;
    }
    if (auto v = dyadic()) return *v;
    return window_scan();
  }

 private:
  bool differs_at(const BigInt& j) const {
    C b(j);
    return !FT::equal(x_.at(b), y_.at(b));
  }

  /// Points of finitely supported step atoms; false if some step atom has infinite support.
  bool step_support(std::set<BigInt>& out) const {
    for (const auto& a : atoms_) {
      if (a.kernel->kind() != AtomKind::Step) continue;
      auto* k = dynamic_cast<const StepKernel<F, C::symbol>*>(a.kernel.get());
      const auto& sf = k->steps();
      if (!sf.finitely_supported()) return false;
      if (sf.steps().empty()) continue;
      BigInt lo = sf.steps().front().at + a.shift.exponent;
      BigInt hi = sf.steps().back().at + a.shift.exponent;
      if (hi - lo > 100000) return false;
      for (BigInt j = lo; j < hi; ++j) out.insert(j);
    }
    return true;
  }

  std::optional<Verdict<C>> harmonic() {
    std::map<BigInt, Rational> weights;  // shift -> sum of exp * weight
    for (const auto& a : atoms_) {
      auto kind = a.kernel->kind();
      if (kind == AtomKind::Step) continue;
      if (kind != AtomKind::Harmonic) return std::nullopt;
      auto* k = dynamic_cast<const HarmonicKernel<C::symbol, inner_cyclic<F>::symbol>*>(a.kernel.get());
      if (!k) return std::nullopt;
      weights[a.shift.exponent] += k->weight() * Rational(a.exp);
    }
    std::set<BigInt> exceptional;
    if (!step_support(exceptional)) return std::nullopt;
    for (const auto& [k, w] : weights) exceptional.insert(k);

    for (auto it = exceptional.begin(); it != exceptional.end(); ++it) {
      if (differs_at(*it)) return Verdict<C>::distinct(C(*it));
      // Off the exceptional set the value at j is the base-only element R(j) on [0, inf),
      // R(j) = sum_{k<j} W_k / (j - k). A nonzero R has fewer zeros than it has poles.
      std::vector<std::pair<BigInt, Rational>> active;
      for (const auto& [k, w] : weights)
        if (k <= *it && !w.is_zero()) active.emplace_back(k, w);
      if (active.empty()) continue;
      auto next = std::next(it);
      for (BigInt j = *it + 1, n = 0; n <= static_cast<long>(active.size()); ++j, ++n) {
        if (next != exceptional.end() && j >= *next) break;
        Rational r;
        for (const auto& [k, w] : active) r += w / Rational(BigInt(j - k));
        if (!r.is_zero()) return Verdict<C>::distinct(C(j));
      }
    }
    return Verdict<C>::equal();
  }

  std::optional<Verdict<C>> dyadic() {
    const DyadicKernel<F, C::symbol>* kernel = nullptr;
    std::map<BigInt, BigInt> grouped;
    for (const auto& a : atoms_) {
      auto kind = a.kernel->kind();
      if (kind == AtomKind::Step) continue;
      if (kind != AtomKind::Dyadic) return std::nullopt;
      auto* k = dynamic_cast<const DyadicKernel<F, C::symbol>*>(a.kernel.get());
      if (!k || (kernel && !kernel->same_function(*k))) return std::nullopt;
      kernel = k;
      grouped[a.shift.exponent] += a.exp;
    }
    std::set<BigInt> exceptional;
    if (!step_support(exceptional)) return std::nullopt;
    for (const auto& c : collisions(grouped)) exceptional.insert(c);

    // Outside the collision set a coordinate k + 2^a is hit by one shift only and carries
    // d_a^{N_k}; shifts with N_k = 0 therefore contribute nothing there.
    using Entry = std::pair<BigInt, std::pair<BigInt, long>>;  // (coordinate, (shift, a))
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    for (const auto& [k, n] : grouped)
      if (n != 0) heap.push({k + 1, {k, 0}});
    const long limit = engine_options().dyadic_limit.load();
    std::optional<BigInt> last;
    auto ex = exceptional.begin();
    while (ex != exceptional.end() || !heap.empty()) {
      BigInt j;
      if (heap.empty() || (ex != exceptional.end() && *ex <= heap.top().first)) {
        j = *ex++;
      } else {
        auto [coord, ka] = heap.top();
        heap.pop();
        j = coord;
        if (ka.second + 1 > limit) return Verdict<C>::unknown(j);
        BigInt step = BigInt(1) << static_cast<mp_bitcnt_t>(ka.second + 1);
        heap.push({ka.first + step, {ka.first, ka.second + 1}});
      }
      if (last && *last == j) continue;
      last = j;
      if (differs_at(j)) return Verdict<C>::distinct(C(j));
    }
    return Verdict<C>::equal();
  }

  Verdict<C> window_scan() const {
    const long w = engine_options().window.load();
    std::optional<BigInt> lo, hi;
    for (const auto& a : atoms_) {
      BigInt s = a.shift.exponent;
      auto lb = a.kernel->support_lower_bound();
      BigInt l = lb ? BigInt(lb->exponent + s) : BigInt(s - w);
      if (!lo || l < *lo) lo = l;
      if (!hi || s > *hi) hi = s;
    }
    if (!lo) return Verdict<C>::equal();
    BigInt end = *hi + w;
    for (BigInt j = *lo; j <= end; ++j)
      if (differs_at(j)) return Verdict<C>::distinct(C(j));
    return Verdict<C>::unknown(end);
  }

  const W& x_;
  const W& y_;
  std::vector<typename W::AtomT> atoms_;

 public:
  /// Coordinates hit by two distinct shifts: k + 2^a = k' + 2^b with k < k'.
  static std::vector<BigInt> collisions(const std::map<BigInt, BigInt>& shifts) {
    std::vector<BigInt> out;
    for (auto i = shifts.begin(); i != shifts.end(); ++i)
      for (auto j = std::next(i); j != shifts.end(); ++j) {
        BigInt delta = j->first - i->first;  // = 2^a - 2^b, a > b
        auto b = mpz_scan1(delta.get_mpz_t(), 0);
        BigInt odd = delta >> b;
        BigInt plus = odd + 1;
        if (mpz_popcount(plus.get_mpz_t()) != 1) continue;
        auto t = mpz_sizeinbase(plus.get_mpz_t(), 2) - 1;
        out.push_back(i->first + (BigInt(1) << static_cast<mp_bitcnt_t>(b + t)));
      }
    return out;
  }
};

}  // namespace detail

/// Least coordinate where the base functions of x and y differ (x and y must share their top).
template <class F, class C>
Verdict<C> support_min_difference(const Wreath<F, C>& x, const Wreath<F, C>& y) {
  if (!group_traits<C>::equal(x.top(), y.top()))
    throw InvalidArgument("support_min_difference: elements have different tops");
  if constexpr (is_cyclic<C>::value) {
    return detail::CyclicDifference<F, C>(x, y).run();
  } else if constexpr (std::is_same_v<F, Rational>) {
    if (x.all_atoms(AtomKind::Ray) && y.all_atoms(AtomKind::Ray)) {
      auto d = y.ray_form() + (-x.ray_form());
      auto m = d.support_min();
      return m ? Verdict<C>::distinct(*m) : Verdict<C>::equal();
    }
    return Verdict<C>::unknown(0);
  } else {
    return Verdict<C>::unknown(0);
  }
}

/// Equality verdict; differing tops give `Distinct` with no coordinate.
template <class F, class C>
Verdict<C> w_equal(const Wreath<F, C>& x, const Wreath<F, C>& y) {
  if (!group_traits<C>::equal(x.top(), y.top())) return Verdict<C>::distinct(std::nullopt);
  return support_min_difference(x, y);
}

/// The least-difference order: tops first, then the fiber values at the least coordinate
/// where the base functions differ. Throws UndecidedError when equality cannot be settled.
template <class F, class C>
Ordering w_compare(const Wreath<F, C>& x, const Wreath<F, C>& y) {
  auto top = group_traits<C>::compare(x.top(), y.top());
  if (top != Ordering::Equal) return top;
  auto v = support_min_difference(x, y);
  if (v.is_equal()) return Ordering::Equal;
  if (v.is_unknown()) throw UndecidedError(v.bound);
  return group_traits<F>::compare(x.at(*v.witness), y.at(*v.witness));
}

template <class F, class C>
struct group_traits<Wreath<F, C>> {
  using W = Wreath<F, C>;
  static constexpr bool abelian = false;
  static W one() { return W(); }
  static W mul(const W& a, const W& b) { return a * b; }
  static W inv(const W& a) { return a.inverse(); }
  static bool equal(const W& a, const W& b) {
    auto v = w_equal(a, b);
    if (v.is_unknown()) throw UndecidedError(v.bound);
    return v.is_equal();
  }
  static Ordering compare(const W& a, const W& b) { return w_compare(a, b); }
  static std::string str(const W& a) { return a.str(); }
};

template <class F, class C>
Wreath<F, C> w_mul(const Wreath<F, C>& x, const Wreath<F, C>& y) { return x * y; }
template <class F, class C>
Wreath<F, C> w_inv(const Wreath<F, C>& x) { return x.inverse(); }
template <class F, class C>
Wreath<F, C> w_conj(const Wreath<F, C>& x, const Wreath<F, C>& y) { return conj(x, y); }
template <class F, class C>
Wreath<F, C> w_comm(const Wreath<F, C>& x, const Wreath<F, C>& y) { return comm(x, y); }
template <class F, class C>
Wreath<F, C> w_pow(const Wreath<F, C>& x, const BigInt& n) { return power(x, n); }
template <class F, class C>
F w_eval(const Wreath<F, C>& x, const C& at) { return x.at(at); }

/// Exponents of a single-family (α-type or ω-type) product grouped by shift.
template <class F, class C>
std::map<BigInt, BigInt> tail_symbol(const Wreath<F, C>& x)
  requires is_cyclic<C>::value
{
  std::map<BigInt, BigInt> out;
  const Atom<F, C>* first = nullptr;
  for (const auto& a : x.base()) {
    auto k = a.kernel->kind();
    if ((k != AtomKind::Harmonic && k != AtomKind::Dyadic) || (first && !first->kernel->same_function(*a.kernel)))
      throw InvalidArgument("tail_symbol: base must be a product of shifts of one α- or ω-type atom");
    first = &a;
    out[a.shift.exponent] += a.exp;
  }
  return out;
}

/// Image of g in the first copy of the fiber: the base function equal to g at the identity
/// coordinate and trivial elsewhere.
template <class F, char Sym>
Wreath<F, Cyclic<Sym>> first_copy(const F& g, std::string name = "") {
  using W = Wreath<F, Cyclic<Sym>>;
  if (is_identity(g)) return W();
  return W::of(std::make_shared<NamedStep<F, Sym>>(std::move(name), StepFunction<F>::point(0, g)));
}

}  // namespace wreathord
