#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "wreathord/errors.hpp"
#include "wreathord/group.hpp"

namespace wreathord {

/// Element of the free nilpotent group of class at most 2 and rank k, in collected form
///
///   x1^e1 * ... * xk^ek * prod_{p<q} [xp, xq]^f_pq,   with [x, y] = x^-1 y^-1 x y.
///
/// Rank 1 is the infinite cyclic group (no commutator coordinates). Rank 0 is reserved for a
/// rank-agnostic identity that adopts the parameters of whatever it is multiplied with.
///
/// The order is lexicographic on (e1..ek) and then on the f_pq in (1,2), (1,3), .., (2,3), ..
/// order; `order_sign = -1` selects the inverse order. Conjugation acts trivially on both
/// layers of the lower central series, which is what makes this order bi-invariant.
class MalcevElement {
 public:
  MalcevElement() = default;

  static MalcevElement identity(int rank, int order_sign = 1) {
    check_rank(rank);
    MalcevElement m;
    m.rank_ = rank;
    m.sign_ = order_sign;
    m.e_.assign(rank, 0);
    m.f_.assign(pairs(rank), 0);
    return m;
  }

  /// The i-th generator, 1-based.
  static MalcevElement generator(int rank, int i, int order_sign = 1) {
    if (i < 1 || i > rank) throw InvalidArgument("generator index out of range");
    auto m = identity(rank, order_sign);
    m.e_[i - 1] = 1;
    return m;
  }

  /// The basic commutator [xp, xq], p < q, 1-based.
  static MalcevElement basic_commutator(int rank, int p, int q, int order_sign = 1) {
    if (p < 1 || q <= p || q > rank) throw InvalidArgument("basic commutator index out of range");
    auto m = identity(rank, order_sign);
    m.f_[pair_index(rank, p, q)] = 1;
    return m;
  }

  static MalcevElement from_coordinates(std::vector<BigInt> e, std::vector<BigInt> f, int order_sign = 1) {
    int rank = static_cast<int>(e.size());
    check_rank(rank);
    if (f.size() != pairs(rank)) throw InvalidArgument("commutator coordinate count does not match rank");
    MalcevElement m;
    m.rank_ = rank;
    m.sign_ = order_sign;
    m.e_ = std::move(e);
    m.f_ = std::move(f);
    return m;
  }

  int rank() const { return rank_; }
  int order_sign() const { return sign_; }
  const std::vector<BigInt>& generator_exponents() const { return e_; }
  const std::vector<BigInt>& commutator_exponents() const { return f_; }

  /// Exponent of [xp, xq] (1-based, p < q).
  BigInt commutator_exponent(int p, int q) const {
    if (rank_ == 0) return 0;
    return f_[pair_index(rank_, p, q)];
  }

  bool is_identity() const {
    for (const auto& v : e_)
      if (v != 0) return false;
    for (const auto& v : f_)
      if (v != 0) return false;
    return true;
  }

  /// Same element with the order inverted (or set to `sign`).
  MalcevElement with_order_sign(int sign) const {
    auto m = *this;
    m.sign_ = sign;
    return m;
  }

  friend MalcevElement operator*(const MalcevElement& x, const MalcevElement& y) {
    if (x.rank_ == 0) return y;
    if (y.rank_ == 0) return x;
    check_compatible(x, y);
    MalcevElement r = x;
    const int k = x.rank_;
    for (int i = 0; i < k; ++i) r.e_[i] += y.e_[i];
    std::size_t idx = 0;
    for (int p = 0; p < k; ++p)
      for (int q = p + 1; q < k; ++q, ++idx) r.f_[idx] += y.f_[idx] - x.e_[q] * y.e_[p];
    return r;
  }

  MalcevElement inverse() const {
    MalcevElement r = *this;
    const int k = rank_;
    for (int i = 0; i < k; ++i) r.e_[i] = -e_[i];
    std::size_t idx = 0;
    for (int p = 0; p < k; ++p)
      for (int q = p + 1; q < k; ++q, ++idx) r.f_[idx] = -f_[idx] - e_[p] * e_[q];
    return r;
  }

  /// Exact order comparison; a rank-0 identity compares as the identity of the other operand.
  friend Ordering nil2_compare(const MalcevElement& x, const MalcevElement& y) {
    if (x.rank_ != 0 && y.rank_ != 0) check_compatible(x, y);
    const MalcevElement& ref = x.rank_ != 0 ? x : y;
    const int k = ref.rank_;
    auto coord = [](const MalcevElement& m, const std::vector<BigInt>& v, std::size_t i) -> BigInt {
      return m.rank_ == 0 ? BigInt(0) : v[i];
    };
    int c = 0;
    for (int i = 0; i < k && c == 0; ++i) c = cmp(coord(x, x.e_, i), coord(y, y.e_, i));
    for (std::size_t i = 0; i < pairs(k) && c == 0; ++i) c = cmp(coord(x, x.f_, i), coord(y, y.f_, i));
    c *= ref.sign_;
    return c < 0 ? Ordering::Less : (c > 0 ? Ordering::Greater : Ordering::Equal);
  }

  friend bool operator==(const MalcevElement& x, const MalcevElement& y) {
    if (x.rank_ == 0 || y.rank_ == 0) return x.is_identity() && y.is_identity();
    return x.rank_ == y.rank_ && x.sign_ == y.sign_ && x.e_ == y.e_ && x.f_ == y.f_;
  }

  /// Coordinate-lexicographic key order (independent of `order_sign`), for use in maps.
  friend bool operator<(const MalcevElement& x, const MalcevElement& y) {
    if (x.is_identity() && y.is_identity()) return false;
    if (x.rank_ != y.rank_) return x.rank_ < y.rank_;
    if (x.e_ != y.e_) return x.e_ < y.e_;
    return x.f_ < y.f_;
  }

  std::string str() const {
    std::string out;
    auto append = [&](const std::string& base, const BigInt& exp) {
      if (exp == 0) return;
      if (!out.empty()) out += "*";
      out += base;
      if (exp != 1) out += "^" + exp.get_str();
    };
    for (int i = 0; i < rank_; ++i) append("x" + std::to_string(i + 1), e_[i]);
    std::size_t idx = 0;
    for (int p = 1; p <= rank_; ++p)
      for (int q = p + 1; q <= rank_; ++q, ++idx)
        append("[x" + std::to_string(p) + ",x" + std::to_string(q) + "]", f_[idx]);
    return out.empty() ? "1" : out;
  }

 private:
  static void check_rank(int rank) {
    if (rank < 1) throw InvalidArgument("rank must be positive");
  }
  static std::size_t pairs(int rank) { return static_cast<std::size_t>(rank) * (rank - 1) / 2; }
  static std::size_t pair_index(int rank, int p, int q) {
    // pairs (1,2),(1,3),..,(1,k),(2,3),..
    std::size_t idx = 0;
    for (int i = 1; i < p; ++i) idx += rank - i;
    return idx + (q - p - 1);
  }
  static void check_compatible(const MalcevElement& x, const MalcevElement& y) {
    if (x.rank_ != y.rank_) throw ParameterMismatch("rank mismatch in Mal'cev arithmetic");
    if (x.sign_ != y.sign_) throw ParameterMismatch("order mismatch in Mal'cev arithmetic");
  }

  int rank_ = 0;
  int sign_ = 1;
  std::vector<BigInt> e_;
  std::vector<BigInt> f_;
};

inline MalcevElement nil2_mul(const MalcevElement& x, const MalcevElement& y) { return x * y; }

template <>
struct group_traits<MalcevElement> {
  static constexpr bool abelian = false;
  static MalcevElement one() { return MalcevElement(); }
  static MalcevElement mul(const MalcevElement& a, const MalcevElement& b) { return a * b; }
  static MalcevElement inv(const MalcevElement& a) { return a.inverse(); }
  static bool equal(const MalcevElement& a, const MalcevElement& b) { return a == b; }
  static Ordering compare(const MalcevElement& a, const MalcevElement& b) { return nil2_compare(a, b); }
  static std::string str(const MalcevElement& a) { return a.str(); }
};

}  // namespace wreathord
