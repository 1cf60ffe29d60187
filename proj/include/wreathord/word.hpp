#pragma once

#include <algorithm>
#include <cctype>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wreathord/errors.hpp"
#include "wreathord/group.hpp"

namespace wreathord {

/// A letter x_var^sign of a group word; `var` is 1-based.
struct Letter {
  int var = 1;
  int sign = 1;
  friend bool operator==(const Letter&, const Letter&) = default;
};

/// Element of the free group F_inf on x1, x2, ...
///
/// Text syntax (EBNF):
///
///   word    := factor { "*" factor }
///   factor  := primary [ "^" ["-"] digits ]
///   primary := "x" digits | "[" word "," word "]" | "(" word ")" | "1"
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  static Word variable(int var) {
    if (var < 1) throw InvalidArgument("word variables are numbered from 1");
    return Word({Letter{var, 1}});
  }

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }

  /// Highest variable index used (0 for the empty word).
  int arity() const {
    int a = 0;
    for (const auto& l : letters_) a = std::max(a, l.var);
    return a;
  }

  friend Word operator*(const Word& a, const Word& b) {
    auto v = a.letters_;
    v.insert(v.end(), b.letters_.begin(), b.letters_.end());
    return Word(std::move(v)).reduced();
  }

  Word inverse() const {
    std::vector<Letter> v(letters_.rbegin(), letters_.rend());
    for (auto& l : v) l.sign = -l.sign;
    return Word(std::move(v));
  }

  Word pow(long n) const {
    Word base = n < 0 ? inverse() : *this;
    Word out;
    for (long i = 0; i < (n < 0 ? -n : n); ++i) out = out * base;
    return out;
  }

  static Word commutator(const Word& a, const Word& b) { return a.inverse() * b.inverse() * a * b; }

  /// Freely reduced form: no adjacent x^+1 x^-1 pairs.
  Word reduced() const {
    std::vector<Letter> out;
    for (const auto& l : letters_) {
      if (!out.empty() && out.back().var == l.var && out.back().sign == -l.sign)
        out.pop_back();
      else
        out.push_back(l);
    }
    return Word(std::move(out));
  }

  /// Exponent sum of each variable, indexed from 1 (index 0 unused).
  std::vector<long> exponent_sums() const {
    std::vector<long> s(arity() + 1, 0);
    for (const auto& l : letters_) s[l.var] += l.sign;
    return s;
  }

  friend bool operator==(const Word& a, const Word& b) { return a.reduced().letters_ == b.reduced().letters_; }

  std::string str() const {
    if (letters_.empty()) return "1";
    std::string out;
    std::size_t i = 0;
    while (i < letters_.size()) {
      std::size_t j = i;
      while (j < letters_.size() && letters_[j] == letters_[i]) ++j;
      long run = static_cast<long>(j - i) * letters_[i].sign;
      if (!out.empty()) out += "*";
      out += "x" + std::to_string(letters_[i].var);
      if (run != 1) out += "^" + std::to_string(run);
      i = j;
    }
    return out;
  }

 private:
  std::vector<Letter> letters_;
};

namespace detail {

class WordParser {
 public:
  explicit WordParser(std::string_view s) : s_(s) {}

  Word parse() {
    Word w = word();
    skip();
    if (pos_ != s_.size()) fail("end of word");
    return w;
  }

 private:
  Word word() {
    Word w = factor();
    skip();
    while (pos_ < s_.size() && s_[pos_] == '*') {
      ++pos_;
      w = w * factor();
      skip();
    }
    return w;
  }

  Word factor() {
    Word p = primary();
    skip();
    if (pos_ < s_.size() && s_[pos_] == '^') {
      ++pos_;
      skip();
      bool neg = false;
      if (pos_ < s_.size() && s_[pos_] == '-') {
        neg = true;
        ++pos_;
      }
      long n = number();
      p = p.pow(neg ? -n : n);
    }
    return p;
  }

  Word primary() {
    skip();
    if (pos_ >= s_.size()) fail("'x', '[', '(' or '1'");
    char ch = s_[pos_];
    if (ch == 'x') {
      ++pos_;
      long v = number();
      if (v < 1) fail("variable index >= 1");
      return Word::variable(static_cast<int>(v));
    }
    if (ch == '1') {
      ++pos_;
      return Word();
    }
    if (ch == '[') {
      ++pos_;
      Word a = word();
      expect(',');
      Word b = word();
      expect(']');
      return Word::commutator(a, b);
    }
    if (ch == '(') {
      ++pos_;
      Word a = word();
      expect(')');
      return a;
    }
    fail("'x', '[', '(' or '1'");
  }

  long number() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_ || pos_ - start > 9) fail("small non-negative integer");
    return std::stol(std::string(s_.substr(start, pos_ - start)));
  }

  void expect(char ch) {
    skip();
    if (pos_ >= s_.size() || s_[pos_] != ch) fail(std::string("'") + ch + "'");
    ++pos_;
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& expected) {
    throw ParseError(pos_, expected, pos_ < s_.size() ? std::string(1, s_[pos_]) : std::string());
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Word parse_word(std::string_view text) { return detail::WordParser(text).parse(); }

/// Image of `w` under x_i -> args[i-1], in any group.
template <OrderedGroup G>
G eval_word(const Word& w, std::span<const G> args) {
  if (static_cast<std::size_t>(w.arity()) > args.size())
    throw InvalidArgument("eval_word: word uses x" + std::to_string(w.arity()) + " but only " +
                          std::to_string(args.size()) + " arguments were supplied");
  using T = group_traits<G>;
  G out = T::one();
  for (const auto& l : w.letters()) {
    const G& g = args[l.var - 1];
    out = T::mul(out, l.sign > 0 ? g : T::inv(g));
  }
  return out;
}

template <OrderedGroup G>
G eval_word(const Word& w, const std::vector<G>& args) {
  return eval_word<G>(w, std::span<const G>(args));
}

/// Derived word delta_k on 2^k arguments: delta_1 = [x1, x2], delta_{k+1} = [delta_k, delta_k'].
template <OrderedGroup G>
G derived_value(std::span<const G> args) {
  if (args.size() == 1) return args[0];
  if (args.size() < 2 || (args.size() & (args.size() - 1)) != 0)
    throw InvalidArgument("derived word needs a power-of-two number of arguments");
  auto half = args.size() / 2;
  return comm(derived_value<G>(args.first(half)), derived_value<G>(args.subspan(half)));
}

}  // namespace wreathord
