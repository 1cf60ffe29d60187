#pragma once

#include <concepts>
#include <string>

#include "wreathord/errors.hpp"
#include "wreathord/order.hpp"
#include "wreathord/rational.hpp"

namespace wreathord {

/// Group operations for a value type. Specialized per group; the primary template is undefined.
///
/// Every specialization provides `one()`, `mul`, `inv`, `equal` (exact, may throw
/// `UndecidedError`), `compare` (a bi-invariant total order), `str` and the constant `abelian`.
template <class G>
struct group_traits;

template <class G>
concept OrderedGroup = requires(const G& a, const G& b) {
  { group_traits<G>::one() } -> std::convertible_to<G>;
  { group_traits<G>::mul(a, b) } -> std::convertible_to<G>;
  { group_traits<G>::inv(a) } -> std::convertible_to<G>;
  { group_traits<G>::equal(a, b) } -> std::convertible_to<bool>;
  { group_traits<G>::compare(a, b) } -> std::same_as<Ordering>;
  { group_traits<G>::str(a) } -> std::convertible_to<std::string>;
  { group_traits<G>::abelian } -> std::convertible_to<bool>;
};

template <class G>
G power(const G& x, const BigInt& n) {
  using T = group_traits<G>;
  if (n == 0) return T::one();
  if (n < 0) return power(T::inv(x), BigInt(-n));
  G result = T::one();
  G base = x;
  BigInt e = n;
  while (true) {
    if (mpz_odd_p(e.get_mpz_t())) result = T::mul(result, base);
    e >>= 1;
    if (e == 0) break;
    base = T::mul(base, base);
  }
  return result;
}

template <class G>
bool is_identity(const G& x) {
  return group_traits<G>::equal(x, group_traits<G>::one());
}

/// x^y = y^-1 x y
template <class G>
G conj(const G& x, const G& y) {
  using T = group_traits<G>;
  return T::mul(T::mul(T::inv(y), x), y);
}

/// [x, y] = x^-1 y^-1 x y
template <class G>
G comm(const G& x, const G& y) {
  using T = group_traits<G>;
  return T::mul(T::mul(T::inv(x), T::inv(y)), T::mul(x, y));
}

/// The additive group of rationals with its natural order.
template <>
struct group_traits<Rational> {
  static constexpr bool abelian = true;
  static Rational one() { return Rational(); }
  static Rational mul(const Rational& a, const Rational& b) { return a + b; }
  static Rational inv(const Rational& a) { return -a; }
  static bool equal(const Rational& a, const Rational& b) { return a == b; }
  static Ordering compare(const Rational& a, const Rational& b) { return rat_cmp(a, b); }
  static std::string str(const Rational& a) { return a.str(); }
};

template <>
inline Rational power(const Rational& x, const BigInt& n) {
  return x * Rational(n);
}

/// Infinite cyclic group written multiplicatively as powers of the generator `Sym`.
template <char Sym>
struct Cyclic {
  BigInt exponent;

  Cyclic() = default;
  explicit Cyclic(BigInt e) : exponent(std::move(e)) {}
  explicit Cyclic(long e) : exponent(e) {}

  static constexpr char symbol = Sym;

  friend Cyclic operator*(const Cyclic& a, const Cyclic& b) { return Cyclic(BigInt(a.exponent + b.exponent)); }
  Cyclic inverse() const { return Cyclic(BigInt(-exponent)); }
  friend bool operator==(const Cyclic& a, const Cyclic& b) { return a.exponent == b.exponent; }
  friend bool operator<(const Cyclic& a, const Cyclic& b) { return a.exponent < b.exponent; }

  std::string str() const {
    if (exponent == 0) return "1";
    if (exponent == 1) return std::string(1, Sym);
    return std::string(1, Sym) + "^" + exponent.get_str();
  }
};

template <char Sym>
struct group_traits<Cyclic<Sym>> {
  using C = Cyclic<Sym>;
  static constexpr bool abelian = true;
  static C one() { return C(); }
  static C mul(const C& a, const C& b) { return a * b; }
  static C inv(const C& a) { return a.inverse(); }
  static bool equal(const C& a, const C& b) { return a == b; }
  static Ordering compare(const C& a, const C& b) { return three_way(a.exponent, b.exponent); }
  static std::string str(const C& a) { return a.str(); }
};

template <class C>
struct is_cyclic : std::false_type {};
template <char Sym>
struct is_cyclic<Cyclic<Sym>> : std::true_type {};

}  // namespace wreathord
