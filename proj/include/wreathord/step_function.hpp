#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wreathord/errors.hpp"
#include "wreathord/group.hpp"

namespace wreathord {

/// Function Z -> F with finitely many value changes.
///
/// `left_tail()` is the value on (-inf, b1); step i holds the value on [b_i, b_{i+1}), the last
/// step extending to +inf. Canonical form: breakpoints strictly increasing and every step's
/// value differs from its predecessor, so equal functions have equal representations.
template <class F>
class StepFunction {
 public:
  using T = group_traits<F>;
  struct Step {
    BigInt at;
    F value;
  };

  StepFunction() : left_(T::one()) {}
  explicit StepFunction(F left, std::vector<Step> steps = {}) : left_(std::move(left)), steps_(std::move(steps)) {
    canonicalize();
  }

  static StepFunction constant(F v) { return StepFunction(std::move(v)); }

  /// value on [from, +inf), identity before.
  static StepFunction from(const BigInt& at, F value) { return StepFunction(T::one(), {{at, std::move(value)}}); }

  /// value at a single point, identity elsewhere.
  static StepFunction point(const BigInt& at, F value) {
    return StepFunction(T::one(), {{at, std::move(value)}, {at + 1, T::one()}});
  }

  const F& left_tail() const { return left_; }
  const F& right_tail() const { return steps_.empty() ? left_ : steps_.back().value; }
  const std::vector<Step>& steps() const { return steps_; }

  bool is_identity() const { return steps_.empty() && T::equal(left_, T::one()); }

  /// Finite support: both tails are the identity.
  bool finitely_supported() const { return T::equal(left_, T::one()) && T::equal(right_tail(), T::one()); }

  const F& at(const BigInt& i) const {
    auto it = std::upper_bound(steps_.begin(), steps_.end(), i, [](const BigInt& x, const Step& s) { return x < s.at; });
    if (it == steps_.begin()) return left_;
    return std::prev(it)->value;
  }

  /// g(i) = f(i - k): the action of the k-th power of the generator.
  StepFunction shifted(const BigInt& k) const {
    StepFunction out = *this;
    for (auto& s : out.steps_) s.at += k;
    return out;
  }

  template <class Op>
  static StepFunction combine(const StepFunction& a, const StepFunction& b, Op op) {
    std::vector<Step> out;
    std::size_t i = 0, j = 0;
    while (i < a.steps_.size() || j < b.steps_.size()) {
      BigInt at;
      if (j >= b.steps_.size() || (i < a.steps_.size() && a.steps_[i].at < b.steps_[j].at))
        at = a.steps_[i].at;
      else
        at = b.steps_[j].at;
      while (i < a.steps_.size() && a.steps_[i].at == at) ++i;
      while (j < b.steps_.size() && b.steps_[j].at == at) ++j;
      const F& va = i == 0 ? a.left_ : a.steps_[i - 1].value;
      const F& vb = j == 0 ? b.left_ : b.steps_[j - 1].value;
      out.push_back({at, op(va, vb)});
    }
    return StepFunction(op(a.left_, b.left_), std::move(out));
  }

  /// Pointwise group product.
  friend StepFunction operator*(const StepFunction& a, const StepFunction& b) {
    return combine(a, b, [](const F& x, const F& y) { return T::mul(x, y); });
  }

  StepFunction inverse() const { return map([](const F& v) { return T::inv(v); }); }

  StepFunction pow(const BigInt& n) const { return map([&](const F& v) { return power(v, n); }); }

  template <class Fn>
  StepFunction map(Fn fn) const {
    std::vector<Step> out;
    out.reserve(steps_.size());
    for (const auto& s : steps_) out.push_back({s.at, fn(s.value)});
    return StepFunction(fn(left_), std::move(out));
  }

  friend bool operator==(const StepFunction& a, const StepFunction& b) {
    if (a.steps_.size() != b.steps_.size() || !T::equal(a.left_, b.left_)) return false;
    for (std::size_t i = 0; i < a.steps_.size(); ++i)
      if (a.steps_[i].at != b.steps_[i].at || !T::equal(a.steps_[i].value, b.steps_[i].value)) return false;
    return true;
  }

  /// Least coordinate where the two functions differ, or nothing if they are equal.
  /// Throws NotWellOrdered when the left tails differ (no least coordinate exists).
  std::optional<BigInt> first_difference(const StepFunction& other) const {
    if (!T::equal(left_, other.left_)) throw NotWellOrdered("step functions differ on an unbounded-below set");
    std::size_t i = 0, j = 0;
    while (i < steps_.size() || j < other.steps_.size()) {
      BigInt at;
      if (j >= other.steps_.size() || (i < steps_.size() && steps_[i].at < other.steps_[j].at))
        at = steps_[i].at;
      else
        at = other.steps_[j].at;
      while (i < steps_.size() && steps_[i].at == at) ++i;
      while (j < other.steps_.size() && other.steps_[j].at == at) ++j;
      const F& va = i == 0 ? left_ : steps_[i - 1].value;
      const F& vb = j == 0 ? other.left_ : other.steps_[j - 1].value;
      if (!T::equal(va, vb)) return at;
    }
    return std::nullopt;
  }

  /// Lowest coordinate of the support, if the left tail is the identity.
  std::optional<BigInt> support_min() const {
    if (!T::equal(left_, T::one())) throw NotWellOrdered("support not bounded below");
    return steps_.empty() ? std::nullopt : std::optional<BigInt>(steps_.front().at);
  }

  std::vector<BigInt> breakpoints() const {
    std::vector<BigInt> out;
    for (const auto& s : steps_) out.push_back(s.at);
    return out;
  }

  std::string str() const {
    std::string out = "step(" + T::str(left_);
    for (const auto& s : steps_) out += " | " + s.at.get_str() + ": " + T::str(s.value);
    return out + ")";
  }

 private:
  void canonicalize() {
    std::stable_sort(steps_.begin(), steps_.end(), [](const Step& a, const Step& b) { return a.at < b.at; });
    std::vector<Step> out;
    out.reserve(steps_.size());
    for (auto& s : steps_) {
      if (!out.empty() && out.back().at == s.at) out.pop_back();  // later entry wins
      const F& prev = out.empty() ? left_ : out.back().value;
      if (T::equal(prev, s.value)) continue;
      out.push_back(std::move(s));
    }
    steps_ = std::move(out);
  }

  F left_;
  std::vector<Step> steps_;
};

}  // namespace wreathord
