#pragma once

#include <cctype>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "wreathord/errors.hpp"
#include "wreathord/order.hpp"

namespace wreathord {

/// Exact rational number kept in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(const BigInt& v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw InvalidArgument("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }

  BigInt numerator() const { return v_.get_num(); }
  BigInt denominator() const { return v_.get_den(); }
  bool is_zero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ + b.v_)); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ - b.v_)); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ * b.v_)); }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw InvalidArgument("division by zero");
    return Rational(mpq_class(a.v_ / b.v_));
  }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }

  std::string str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  explicit Rational(mpq_class v) : v_(std::move(v)) {}
  mpq_class v_;
};

inline Rational rat_add(const Rational& a, const Rational& b) { return a + b; }

/// Sign of a - b, computed exactly.
inline Ordering rat_cmp(const Rational& a, const Rational& b) {
  if (a < b) return Ordering::Less;
  if (b < a) return Ordering::Greater;
  return Ordering::Equal;
}

inline Rational canonical_fraction(const BigInt& m, const BigInt& n) {
  if (n == 0) throw InvalidArgument("canonical_fraction: denominator must be nonzero");
  return Rational(m, n);
}

/// Parses `m/n` or `m` with an optional leading `-`. Whole input must be consumed.
inline Rational parse_rational(std::string_view text) {
  auto digits = [&](std::size_t from, std::size_t to) {
    if (from >= to) return false;
    for (std::size_t i = from; i < to; ++i)
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
    return true;
  };
  std::size_t start = (!text.empty() && text[0] == '-') ? 1 : 0;
  auto slash = text.find('/');
  std::size_t num_end = slash == std::string_view::npos ? text.size() : slash;
  if (!digits(start, num_end)) throw ParseError(start, "integer", std::string(text));
  BigInt num(std::string(text.substr(start, num_end - start)));
  if (start == 1) num = -num;
  if (slash == std::string_view::npos) return Rational(num);
  if (!digits(slash + 1, text.size())) throw ParseError(slash + 1, "positive integer denominator", std::string(text));
  BigInt den(std::string(text.substr(slash + 1)));
  if (den == 0) throw InvalidArgument("rational literal with zero denominator");
  return Rational(num, den);
}

}  // namespace wreathord
