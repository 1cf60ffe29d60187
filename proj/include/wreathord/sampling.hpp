#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "wreathord/embed_rationals.hpp"
#include "wreathord/embed_verbal.hpp"

namespace wreathord {

/// Sample count for a suite run at `budget` percent of the default size.
inline std::size_t scaled(std::size_t base, long budget) {
  if (budget <= 0) return 1;
  auto n = base * static_cast<std::size_t>(budget) / 100;
  return n == 0 ? 1 : n;
}

/// Seeded generator for all sampling. Every draw goes through `uniform`, so a suite run is a
/// function of (seed, budget) only.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen_); }
  bool coin() { return uniform(0, 1) == 1; }
  int sign() { return coin() ? 1 : -1; }

  /// m/n with 1 <= n <= max_den and |m| <= max_num, canonicalized.
  Rational rational(long max_den, long max_num) { return canonical_fraction(uniform(-max_num, max_num), uniform(1, max_den)); }

  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(uniform(0, static_cast<long>(v.size()) - 1))];
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

/// Product of up to `len` factors from {c, τ_n, φ_n}^{±1}, n <= 10, each conjugated by c^k, |k| <= 8.
inline W1 random_w1(Rng& r, long len = 4) {
  W1 out;
  long n = r.uniform(1, len);
  for (long i = 0; i < n; ++i) {
    W1 f;
    switch (r.uniform(0, 2)) {
      case 0: f = c_elem(); break;
      case 1: f = tau(r.uniform(1, 10)); break;
      default: f = phi(r.uniform(1, 10)); break;
    }
    f = conj(f, c_elem(r.uniform(-8, 8)));
    out = out * (r.coin() ? f : f.inverse());
  }
  return out;
}

/// Random word of length 1..len over {α, z}^{±1}.
inline GWord random_gword(Rng& r, long len = 8) {
  GWord w;
  long n = r.uniform(1, len);
  for (long i = 0; i < n; ++i) w = w * (r.coin() ? GWord::alpha(r.sign()) : GWord::z(r.sign()));
  return w;
}

/// Product of up to `len` factors: z^{±1}, (α^{z^k})^{±1} with |k| <= 8, or a lifted random W1 element.
inline W2 random_w2(Rng& r, long len = 4) {
  W2 out;
  long n = r.uniform(1, len);
  for (long i = 0; i < n; ++i) {
    W2 f;
    switch (r.uniform(0, 2)) {
      case 0: f = z_elem(r.sign()); break;
      case 1: f = conj(alpha(), z_elem(r.uniform(-8, 8))); break;
      default: f = conj(lift(random_w1(r, 2)), z_elem(r.uniform(-8, 8))); break;
    }
    out = out * (r.coin() ? f : f.inverse());
  }
  return out;
}

/// Random T-word of length 1..len over {a_i, χ_n}^{±1}, n <= 10.
inline TWord random_tword(Rng& r, std::size_t rank, long len = 10) {
  TWord w;
  long n = r.uniform(1, len);
  for (long i = 0; i < n; ++i) {
    TLetter l;
    l.sign = r.sign();
    if (r.coin()) {
      l.kind = TLetter::Kind::Chi;
      l.index = r.uniform(1, 10);
    } else {
      l.index = r.uniform(1, static_cast<long>(rank));
    }
    w.push_back(l);
  }
  return w;
}

/// Random D-word of length 1..len over c^{±1} and π_g^{±1} for short random T-words g.
inline DWord random_dword(Rng& r, std::size_t rank, long len = 6) {
  DWord w;
  long n = r.uniform(1, len);
  for (long i = 0; i < n; ++i) {
    if (r.coin())
      w.push_back(DLetter{true, {}, r.sign()});
    else
      w.push_back(DLetter{false, random_tword(r, rank, 3), r.sign()});
  }
  return w;
}

/// Random element of G = <ω, z>: a word of length 1..len over {ω, z}^{±1}.
inline GVElement random_gv(Rng& r, const VerbalContext& ctx, long len = 4) {
  GVElement out;
  long n = r.uniform(1, len);
  for (long i = 0; i < n; ++i) {
    GVElement f = r.coin() ? omega(ctx) : gv_z();
    out = out * (r.coin() ? f : f.inverse());
  }
  return out;
}

}  // namespace wreathord
