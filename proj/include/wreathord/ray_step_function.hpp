#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "wreathord/malcev.hpp"
#include "wreathord/rational.hpp"
#include "wreathord/step_function.hpp"

namespace wreathord {

/// s = a^j * rep with rep a canonical representative of the right coset <a>s.
///
/// The representative is chosen by the first nonzero coordinate p of a: j = floor(s_p / a_p),
/// so rep_p lies between 0 and a_p. This needs coordinate p to be additive under left
/// multiplication by a, which holds when p is a generator coordinate or when a is central.
inline std::pair<BigInt, MalcevElement> ray_decompose(const MalcevElement& a, const MalcevElement& s) {
  if (a.rank() == 0 || a.is_identity()) throw InvalidArgument("ray_decompose: a must be nontrivial");
  const auto& ae = a.generator_exponents();
  const auto& af = a.commutator_exponents();
  MalcevElement sx = s.rank() == 0 ? MalcevElement::identity(a.rank(), a.order_sign()) : s;
  BigInt ap, sp;
  bool found = false;
  for (std::size_t i = 0; i < ae.size() && !found; ++i)
    if (ae[i] != 0) ap = ae[i], sp = sx.generator_exponents()[i], found = true;
  for (std::size_t i = 0; i < af.size() && !found; ++i)
    if (af[i] != 0) ap = af[i], sp = sx.commutator_exponents()[i], found = true;
  BigInt j;
  mpz_fdiv_q(j.get_mpz_t(), sp.get_mpz_t(), ap.get_mpz_t());
  MalcevElement rep = power(a, BigInt(-j)) * sx;
  return {j, rep};
}

/// The coset decomposition used by ray-step functions, fixed by the positive element a.
template <class S>
class RayBasis {
 public:
  explicit RayBasis(S a) : a_(std::move(a)) {
    if (group_traits<S>::compare(group_traits<S>::one(), a_) != Ordering::Less)
      throw InvalidArgument("ray basis element must be positive");
  }
  const S& a() const { return a_; }
  std::pair<BigInt, S> decompose(const S& s) const { return ray_decompose(a_, s); }
  S point(const BigInt& i, const S& rep) const { return group_traits<S>::mul(power(a_, i), rep); }

 private:
  S a_;
};

/// Function S -> Q supported on finitely many rays {a^i g}. Each ray is keyed by its
/// canonical representative g and carries a step function in the ray index i.
template <class S>
class RayStepFunction {
 public:
  using Ray = StepFunction<Rational>;
  using Basis = std::shared_ptr<const RayBasis<S>>;

  RayStepFunction() = default;
  explicit RayStepFunction(Basis basis) : basis_(std::move(basis)) {}

  /// q on {a^i g : i >= from}.
  static RayStepFunction ray(Basis basis, const S& g, const BigInt& from, const Rational& q) {
    RayStepFunction f(basis);
    auto [j, rep] = basis->decompose(g);
    f.add_ray(rep, Ray::from(from + j, q));
    return f;
  }

  static RayStepFunction point(Basis basis, const S& at, const Rational& q) {
    RayStepFunction f(basis);
    auto [j, rep] = basis->decompose(at);
    f.add_ray(rep, Ray::point(j, q));
    return f;
  }

  const Basis& basis() const { return basis_; }
  const std::map<S, Ray>& rays() const { return rays_; }
  bool is_zero() const { return rays_.empty(); }

  Rational at(const S& x) const {
    if (!basis_) return Rational();
    auto [j, rep] = basis_->decompose(x);
    auto it = rays_.find(rep);
    return it == rays_.end() ? Rational() : it->second.at(j);
  }

  /// f^s(x) = f(x s^-1).
  RayStepFunction shifted(const S& s) const {
    RayStepFunction out(basis_);
    for (const auto& [g, f] : rays_) {
      auto [j, rep] = basis_->decompose(group_traits<S>::mul(g, s));
      out.add_ray(rep, f.shifted(j));
    }
    return out;
  }

  RayStepFunction scaled(const BigInt& n) const {
    RayStepFunction out(basis_);
    if (n == 0) return out;
    for (const auto& [g, f] : rays_) out.rays_.emplace(g, f.pow(n));
    return out;
  }

  friend RayStepFunction operator+(const RayStepFunction& x, const RayStepFunction& y) {
    RayStepFunction out = x.basis_ ? x : RayStepFunction(y.basis_);
    if (!x.basis_) return y;
    for (const auto& [g, f] : y.rays_) out.add_ray(g, f);
    return out;
  }

  RayStepFunction operator-() const { return scaled(BigInt(-1)); }

  friend bool operator==(const RayStepFunction& x, const RayStepFunction& y) {
    if (x.rays_.size() != y.rays_.size()) return false;
    for (auto i = x.rays_.begin(), j = y.rays_.begin(); i != x.rays_.end(); ++i, ++j)
      if (!(i->first == j->first) || !(i->second == j->second)) return false;
    return true;
  }

  /// Least point of the support in the order of S (a finite union of rays, each bounded below).
  std::optional<S> support_min() const {
    std::optional<S> best;
    for (const auto& [g, f] : rays_) {
      auto i0 = f.support_min();
      if (!i0) continue;
      S p = basis_->point(*i0, g);
      if (!best || group_traits<S>::compare(p, *best) == Ordering::Less) best = p;
    }
    return best;
  }

  std::string str() const {
    if (rays_.empty()) return "0";
    std::string out;
    for (const auto& [g, f] : rays_) {
      if (!out.empty()) out += " + ";
      out += "ray[" + group_traits<S>::str(g) + "]" + f.str();
    }
    return out;
  }

 private:
  void add_ray(const S& rep, const Ray& f) {
    auto it = rays_.find(rep);
    if (it == rays_.end()) {
      if (!f.is_identity()) rays_.emplace(rep, f);
      return;
    }
    it->second = it->second * f;
    if (it->second.is_identity()) rays_.erase(it);
  }

  Basis basis_;
  std::map<S, Ray> rays_;
};

}  // namespace wreathord
