#pragma once

#include <optional>
#include <string>

#include <gmpxx.h>

namespace wreathord {

enum class Ordering { Less, Equal, Greater };

inline const char* to_string(Ordering o) {
  switch (o) {
    case Ordering::Less: return "Less";
    case Ordering::Equal: return "Equal";
    case Ordering::Greater: return "Greater";
  }
  return "?";
}

inline Ordering reverse(Ordering o) {
  if (o == Ordering::Less) return Ordering::Greater;
  if (o == Ordering::Greater) return Ordering::Less;
  return o;
}

template <class T>
Ordering three_way(const T& a, const T& b) {
  if (a < b) return Ordering::Less;
  if (b < a) return Ordering::Greater;
  return Ordering::Equal;
}

/// Outcome of an equality test between two base functions.
///
/// `Distinct` carries the least coordinate at which the functions were seen to differ (absent
/// only when the elements already differ in their top component). `UnknownBeyond` means every
/// coordinate up to `bound` was checked and agreed, and no exact tail criterion applied.
template <class Coord>
struct Verdict {
  enum class Kind { Equal, Distinct, UnknownBeyond };

  Kind kind = Kind::Equal;
  std::optional<Coord> witness;
  mpz_class bound;

  static Verdict equal() { return {}; }
  static Verdict distinct(std::optional<Coord> at) { return {Kind::Distinct, std::move(at), 0}; }
  static Verdict unknown(mpz_class bound) { return {Kind::UnknownBeyond, std::nullopt, std::move(bound)}; }

  bool is_equal() const { return kind == Kind::Equal; }
  bool is_distinct() const { return kind == Kind::Distinct; }
  bool is_unknown() const { return kind == Kind::UnknownBeyond; }
};

}  // namespace wreathord
