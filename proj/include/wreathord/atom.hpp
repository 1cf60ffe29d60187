#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "wreathord/group.hpp"
#include "wreathord/ray_step_function.hpp"
#include "wreathord/step_function.hpp"

namespace wreathord {

/// How the least-difference engine may reason about an atom's base function.
enum class AtomKind {
  Step,      ///< piecewise constant on Z with finitely many breakpoints
  Ray,       ///< rational-valued, supported on finitely many rays {a^i g}
  Harmonic,  ///< Z -> (Q Wr C): 1 below 0, anything at 0, base-only w/j on [0, inf) at j >= 1
  Dyadic,    ///< Z -> F: supported on {2^k : k >= 0}
  Opaque,    ///< only pointwise evaluation is available
};

/// A named function B -> A that serves as a building block of base functions.
template <class F, class C>
class AtomKernel {
 public:
  virtual ~AtomKernel() = default;
  virtual std::string name() const = 0;
  virtual F value(const C& at) const = 0;
  virtual AtomKind kind() const { return AtomKind::Opaque; }
  /// Least coordinate of the support, when known.
  virtual std::optional<C> support_lower_bound() const { return std::nullopt; }
  /// Cheap test; `true` guarantees value(at) is the identity.
  virtual bool trivially_identity_at(const C&) const { return false; }
  virtual bool same_function(const AtomKernel& other) const { return this == &other || name() == other.name(); }
};

template <class F, char Sym>
class StepKernel : public AtomKernel<F, Cyclic<Sym>> {
 public:
  virtual const StepFunction<F>& steps() const = 0;
  F value(const Cyclic<Sym>& at) const override { return steps().at(at.exponent); }
  AtomKind kind() const override { return AtomKind::Step; }
  std::optional<Cyclic<Sym>> support_lower_bound() const override {
    const auto& s = steps();
    if (!group_traits<F>::equal(s.left_tail(), group_traits<F>::one()) || s.steps().empty()) return std::nullopt;
    return Cyclic<Sym>(s.steps().front().at);
  }
  bool same_function(const AtomKernel<F, Cyclic<Sym>>& other) const override {
    if (this == &other) return true;
    auto* o = dynamic_cast<const StepKernel*>(&other);
    return o && steps() == o->steps();
  }
};

template <class F, char Sym>
class NamedStep final : public StepKernel<F, Sym> {
 public:
  NamedStep(std::string name, StepFunction<F> steps) : name_(std::move(name)), steps_(std::move(steps)) {}
  std::string name() const override { return name_.empty() ? steps_.str() : name_; }
  const StepFunction<F>& steps() const override { return steps_; }

 private:
  std::string name_;
  StepFunction<F> steps_;
};

template <class S>
class RayKernel : public AtomKernel<Rational, S> {
 public:
  virtual const RayStepFunction<S>& rays() const = 0;
  Rational value(const S& at) const override { return rays().at(at); }
  AtomKind kind() const override { return AtomKind::Ray; }
  bool same_function(const AtomKernel<Rational, S>& other) const override {
    if (this == &other) return true;
    auto* o = dynamic_cast<const RayKernel*>(&other);
    return o && rays() == o->rays();
  }
};

template <class S>
class NamedRay final : public RayKernel<S> {
 public:
  NamedRay(std::string name, RayStepFunction<S> rays) : name_(std::move(name)), rays_(std::move(rays)) {}
  std::string name() const override { return name_.empty() ? rays_.str() : name_; }
  const RayStepFunction<S>& rays() const override { return rays_; }

 private:
  std::string name_;
  RayStepFunction<S> rays_;
};

/// Supported on {2^k : k >= 0}; the value at 2^k is `at_power(k)`.
template <class F, char Sym>
class DyadicKernel : public AtomKernel<F, Cyclic<Sym>> {
 public:
  virtual F at_power(std::size_t k) const = 0;
  AtomKind kind() const override { return AtomKind::Dyadic; }
  std::optional<Cyclic<Sym>> support_lower_bound() const override { return Cyclic<Sym>(1L); }
  bool trivially_identity_at(const Cyclic<Sym>& at) const override { return !dyadic_exponent(at.exponent); }
  F value(const Cyclic<Sym>& at) const override {
    auto k = dyadic_exponent(at.exponent);
    return k ? at_power(*k) : group_traits<F>::one();
  }

  static std::optional<std::size_t> dyadic_exponent(const BigInt& i) {
    if (i <= 0 || mpz_popcount(i.get_mpz_t()) != 1) return std::nullopt;
    return mpz_sizeinbase(i.get_mpz_t(), 2) - 1;
  }
};

/// One factor (kernel^shift)^exp of a formal base product; its value at b is
/// kernel(b * shift^-1)^exp.
template <class F, class C>
struct Atom {
  std::shared_ptr<const AtomKernel<F, C>> kernel;
  C shift{};
  BigInt exp = 1;

  F value_at(const C& b) const {
    using CT = group_traits<C>;
    C local = CT::mul(b, CT::inv(shift));
    if (kernel->trivially_identity_at(local)) return group_traits<F>::one();
    F v = kernel->value(local);
    if (exp == 1) return v;
    if (exp == -1) return group_traits<F>::inv(v);
    return power(v, exp);
  }

  bool same_factor(const Atom& o) const {
    return group_traits<C>::equal(shift, o.shift) && kernel->same_function(*o.kernel);
  }
};

}  // namespace wreathord
