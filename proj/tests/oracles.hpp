#pragma once

// Independent reference models used by the unit tests. None of them shares code with the
// library: fractions use machine integers, nilpotent elements are integer matrices, and
// wreath elements are plain closures evaluated pointwise.

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <random>
#include <string>

#include "wreathord/rational.hpp"

namespace oracle {

struct Frac {
  long num = 0, den = 1;

  Frac() = default;
  Frac(long n, long d = 1) : num(n), den(d) {
    if (den < 0) num = -num, den = -den;
    long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) num /= g, den /= g;
  }
  friend Frac operator+(Frac a, Frac b) { return Frac(a.num * b.den + b.num * a.den, a.den * b.den); }
  friend Frac operator-(Frac a) { return Frac(-a.num, a.den); }
  friend Frac operator-(Frac a, Frac b) { return a + (-b); }
  friend bool operator==(Frac a, Frac b) { return a.num == b.num && a.den == b.den; }
  friend bool operator<(Frac a, Frac b) { return a.num * b.den < b.num * a.den; }
  bool zero() const { return num == 0; }
};

inline bool same(const wreathord::Rational& r, Frac f) {
  return r.numerator() == f.num && r.denominator() == f.den;
}

/// 3x3 upper unitriangular integer matrix: [[1,a,c],[0,1,b],[0,0,1]].
struct Heis {
  long a = 0, b = 0, c = 0;
  friend Heis operator*(Heis x, Heis y) { return {x.a + y.a, x.b + y.b, x.c + y.c + x.a * y.b}; }
  Heis inv() const { return {-a, -b, -c + a * b}; }
  friend bool operator==(Heis x, Heis y) { return x.a == y.a && x.b == y.b && x.c == y.c; }
};

inline Heis heis_pow(Heis x, long n) {
  Heis out;
  Heis base = n < 0 ? x.inv() : x;
  for (long i = 0; i < (n < 0 ? -n : n); ++i) out = out * base;
  return out;
}

/// Free class-2 nilpotent group of rank k as the product of the pairwise Heisenberg
/// projections x_p -> X, x_q -> Y, other generators -> 1. Faithful for k >= 2.
struct FreeNil2 {
  int k;
  std::vector<Heis> proj;  // one per pair p < q
  std::vector<long> e;  // abelianization, kept for rank 1 as well

  explicit FreeNil2(int rank) : k(rank), proj(rank * (rank - 1) / 2), e(rank, 0) {}

  static FreeNil2 generator(int rank, int i) {
    FreeNil2 g(rank);
    g.e[i - 1] = 1;
    std::size_t idx = 0;
    for (int p = 1; p <= rank; ++p)
      for (int q = p + 1; q <= rank; ++q, ++idx) {
        if (i == p) g.proj[idx] = {1, 0, 0};
        if (i == q) g.proj[idx] = {0, 1, 0};
      }
    return g;
  }
  friend FreeNil2 operator*(const FreeNil2& x, const FreeNil2& y) {
    FreeNil2 r(x.k);
    for (int i = 0; i < x.k; ++i) r.e[i] = x.e[i] + y.e[i];
    for (std::size_t i = 0; i < x.proj.size(); ++i) r.proj[i] = x.proj[i] * y.proj[i];
    return r;
  }
  FreeNil2 inv() const {
    FreeNil2 r(k);
    for (int i = 0; i < k; ++i) r.e[i] = -e[i];
    for (std::size_t i = 0; i < proj.size(); ++i) r.proj[i] = proj[i].inv();
    return r;
  }
  friend bool operator==(const FreeNil2& x, const FreeNil2& y) { return x.e == y.e && x.proj == y.proj; }

  /// Collected coordinates: exponent of [x_p, x_q] in x1^e1..xk^ek prod [x_p,x_q]^f.
  /// In the (p, q) projection X^a Y^b has corner ab and [X, Y] has corner 1.
  std::vector<long> commutators() const {
    std::vector<long> f;
    std::size_t idx = 0;
    for (int p = 0; p < k; ++p)
      for (int q = p + 1; q < k; ++q, ++idx) f.push_back(proj[idx].c - e[p] * e[q]);
    return f;
  }
};

/// Element (t, f) of Q Wr C with f evaluated lazily: (xy)(j) = x(j - t_y) + y(j).
struct PW1 {
  long top = 0;
  std::function<Frac(long)> f = [](long) { return Frac(); };

  static PW1 c(long e = 1) { return {e, [](long) { return Frac(); }}; }
  static PW1 tau(long n) { return {0, [n](long j) { return j >= 0 ? Frac(-1, n) : Frac(); }}; }
  static PW1 phi(long n) { return {0, [n](long j) { return j == 0 ? Frac(1, n) : Frac(); }}; }
  static PW1 point(Frac q) { return {0, [q](long j) { return j == 0 ? q : Frac(); }}; }

  friend PW1 operator*(const PW1& x, const PW1& y) {
    long ty = y.top;
    auto fx = x.f, fy = y.f;
    return {x.top + y.top, [=](long j) { return fx(j - ty) + fy(j); }};
  }
  PW1 inv() const {
    long t = top;
    auto g = f;
    return {-t, [=](long j) { return -g(j + t); }};
  }
};

/// Element of (Q Wr C) Wr Z with W1-valued base.
struct PW2 {
  long top = 0;
  std::function<PW1(long)> f = [](long) { return PW1(); };

  static PW2 z(long e = 1) { return {e, [](long) { return PW1(); }}; }
  static PW2 alpha() {
    return {0, [](long j) { return j < 0 ? PW1() : j == 0 ? PW1::c() : PW1::tau(j); }};
  }
  static PW2 lift(const PW1& g) {
    return {0, [g](long j) { return j == 0 ? g : PW1(); }};
  }

  friend PW2 operator*(const PW2& x, const PW2& y) {
    long ty = y.top;
    auto fx = x.f, fy = y.f;
    return {x.top + y.top, [=](long j) { return fx(j - ty) * fy(j); }};
  }
  PW2 inv() const {
    long t = top;
    auto g = f;
    return {-t, [=](long j) { return g(j + t).inv(); }};
  }
};

template <class P>
P comm(const P& x, const P& y) {
  return x.inv() * y.inv() * x * y;
}

template <class P>
P conj(const P& x, const P& y) {
  return y.inv() * x * y;
}

/// -1, 0, 1 for the least-difference order on [-w, w], or 2 if no difference was found.
inline int brute_cmp(const PW1& x, const PW1& y, long w) {
  if (x.top != y.top) return x.top < y.top ? -1 : 1;
  for (long j = -w; j <= w; ++j) {
    Frac a = x.f(j), b = y.f(j);
    if (!(a == b)) return a < b ? -1 : 1;
  }
  return 2;
}

inline int brute_cmp(const PW2& x, const PW2& y, long w) {
  if (x.top != y.top) return x.top < y.top ? -1 : 1;
  for (long j = -w; j <= w; ++j) {
    int c = brute_cmp(x.f(j), y.f(j), w);
    if (c != 2) return c;
  }
  return 2;
}

}  // namespace oracle
