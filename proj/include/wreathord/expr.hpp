#pragma once

#include <cctype>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "wreathord/embed_rationals.hpp"
#include "wreathord/embed_verbal.hpp"
#include "wreathord/errors.hpp"

namespace wreathord {

/// Expression tree of the element grammar
///   expr := atom | "(" "*" expr+ ")" | "(inv" expr ")" | "(pow" expr int ")"
///         | "(conj" expr expr ")" | "(comm" expr expr ")"
///   atom := c | z | tau(int) | phi(int) | alpha | omega | chi(int) | psi(int) | pi(expr)
///         | shift(atom, int)
struct Expr {
  enum class Kind { C, Z, Tau, Phi, Alpha, Omega, Chi, Psi, Pi, Shift, Product, Inv, Pow, Conj, Comm };
  Kind kind = Kind::C;
  BigInt n;  ///< index of tau/phi/chi/psi, exponent of pow, amount of shift
  std::vector<Expr> kids;

  friend bool operator==(const Expr& a, const Expr& b) { return a.kind == b.kind && a.n == b.n && a.kids == b.kids; }

  bool is_atom() const { return kind <= Kind::Shift; }

  std::string str() const {
    switch (kind) {
      case Kind::C: return "c";
      case Kind::Z: return "z";
      case Kind::Alpha: return "alpha";
      case Kind::Omega: return "omega";
      case Kind::Tau: return "tau(" + n.get_str() + ")";
      case Kind::Phi: return "phi(" + n.get_str() + ")";
      case Kind::Chi: return "chi(" + n.get_str() + ")";
      case Kind::Psi: return "psi(" + n.get_str() + ")";
      case Kind::Pi: return "pi(" + kids[0].str() + ")";
      case Kind::Shift: return "shift(" + kids[0].str() + "," + n.get_str() + ")";
      case Kind::Product: {
        std::string out = "(*";
        for (const auto& k : kids) out += " " + k.str();
        return out + ")";
      }
      case Kind::Inv: return "(inv " + kids[0].str() + ")";
      case Kind::Pow: return "(pow " + kids[0].str() + " " + n.get_str() + ")";
      case Kind::Conj: return "(conj " + kids[0].str() + " " + kids[1].str() + ")";
      case Kind::Comm: return "(comm " + kids[0].str() + " " + kids[1].str() + ")";
    }
    return "?";
  }

  /// True if the expression uses an atom of the verbal construction.
  bool verbal() const {
    if (kind == Kind::Omega || kind == Kind::Chi || kind == Kind::Psi || kind == Kind::Pi) return true;
    for (const auto& k : kids)
      if (k.verbal()) return true;
    return false;
  }
};

namespace detail {

class ExprParser {
 public:
  explicit ExprParser(std::string_view s) : s_(s) {}

  Expr parse() {
    Expr e = expr();
    skip();
    if (pos_ != s_.size()) fail("end of input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& expected) const {
    std::string found = pos_ < s_.size() ? std::string(s_.substr(pos_, 8)) : "";
    throw ParseError(pos_, expected, found);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(std::string_view tok) {
    skip();
    if (s_.substr(pos_, tok.size()) != tok) return false;
    pos_ += tok.size();
    return true;
  }

  void expect(std::string_view tok) {
    if (!eat(tok)) fail("'" + std::string(tok) + "'");
  }

  std::string ident() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  BigInt integer() {
    skip();
    std::size_t start = pos_;
    if (pos_ < s_.size() && s_[pos_] == '-') ++pos_;
    std::size_t digits = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == digits) {
      pos_ = start;
      fail("integer");
    }
    return BigInt(std::string(s_.substr(start, pos_ - start)));
  }

  BigInt index() {
    std::size_t at = (skip(), pos_);
    BigInt n = integer();
    if (n < 1) {
      pos_ = at;
      fail("integer >= 1 (n must be >= 1)");
    }
    return n;
  }

  Expr expr() {
    skip();
    if (pos_ < s_.size() && s_[pos_] == '(') return compound();
    return atom();
  }

  Expr compound() {
    expect("(");
    Expr e;
    if (eat("*")) {
      e.kind = Expr::Kind::Product;
      do e.kids.push_back(expr());
      while ((skip(), pos_ < s_.size() && s_[pos_] != ')'));
      expect(")");
      return e;
    }
    std::size_t at = (skip(), pos_);
    std::string op = ident();
    if (op == "inv") {
      e.kind = Expr::Kind::Inv;
      e.kids.push_back(expr());
    } else if (op == "pow") {
      e.kind = Expr::Kind::Pow;
      e.kids.push_back(expr());
      e.n = integer();
    } else if (op == "conj" || op == "comm") {
      e.kind = op == "conj" ? Expr::Kind::Conj : Expr::Kind::Comm;
      e.kids.push_back(expr());
      e.kids.push_back(expr());
    } else {
      pos_ = at;
      fail("one of '*', 'inv', 'pow', 'conj', 'comm'");
    }
    expect(")");
    return e;
  }

  Expr atom() {
    std::size_t at = (skip(), pos_);
    std::string name = ident();
    Expr e;
    if (name == "c") {
      e.kind = Expr::Kind::C;
    } else if (name == "z") {
      e.kind = Expr::Kind::Z;
    } else if (name == "alpha") {
      e.kind = Expr::Kind::Alpha;
    } else if (name == "omega") {
      e.kind = Expr::Kind::Omega;
    } else if (name == "tau" || name == "phi" || name == "chi" || name == "psi") {
      e.kind = name == "tau" ? Expr::Kind::Tau : name == "phi" ? Expr::Kind::Phi : name == "chi" ? Expr::Kind::Chi : Expr::Kind::Psi;
      expect("(");
      e.n = index();
      expect(")");
    } else if (name == "pi") {
      e.kind = Expr::Kind::Pi;
      expect("(");
      e.kids.push_back(expr());
      expect(")");
    } else if (name == "shift") {
      e.kind = Expr::Kind::Shift;
      expect("(");
      e.kids.push_back(atom());
      expect(",");
      e.n = integer();
      expect(")");
    } else {
      pos_ = at;
      fail("an atom (c, z, tau(n), phi(n), alpha, omega, chi(n), psi(n), pi(expr), shift(atom,k)) or '('");
    }
    return e;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Expr parse_expr(std::string_view text) { return detail::ExprParser(text).parse(); }

/// An evaluated expression. Rational-universe values live in W1 or W2, verbal ones in T, D or
/// the wreath containing G = <ω, z>.
using Value = std::variant<W1, W2, TElement, DElement, GVElement>;

inline std::string value_str(const Value& v) {
  return std::visit([](const auto& x) { return x.str(); }, v);
}

inline const char* level_name(const Value& v) {
  static const char* names[] = {"Q Wr C", "(Q Wr C) Wr Z", "T", "D", "D Wr Z"};
  return names[v.index()];
}

namespace detail {

/// Level of an expression within its universe: 0 for the innermost group.
inline int level(const Expr& e, bool verbal) {
  using K = Expr::Kind;
  switch (e.kind) {
    case K::C: return verbal ? 1 : 0;
    case K::Z: return verbal ? 2 : 1;
    case K::Tau:
    case K::Phi: return 0;
    case K::Alpha: return 1;
    case K::Chi:
    case K::Psi: return 0;
    case K::Pi: return 1;
    case K::Omega: return 2;
    default: break;
  }
  int out = 0;
  for (const auto& k : e.kids) out = std::max(out, level(k, verbal));
  return out;
}

template <class To, class From>
To lift_to(const From& x) {
  if constexpr (std::is_same_v<To, From>) {
    return x;
  } else if constexpr (std::is_same_v<From, W1> && std::is_same_v<To, W2>) {
    return lift(x);
  } else if constexpr (std::is_same_v<From, TElement> && std::is_same_v<To, DElement>) {
    return first_copy<TElement, 'c'>(x);
  } else if constexpr (std::is_same_v<From, DElement> && std::is_same_v<To, GVElement>) {
    return first_copy<DElement, 'z'>(x);
  } else if constexpr (std::is_same_v<From, TElement> && std::is_same_v<To, GVElement>) {
    return first_copy<DElement, 'z'>(first_copy<TElement, 'c'>(x));
  } else {
    throw InvalidArgument("cannot lift this element to a lower level");
  }
}

class Evaluator {
 public:
  explicit Evaluator(const VerbalContext* ctx) : ctx_(ctx) {}

  template <class W>
  W eval(const Expr& e) const {
    using K = Expr::Kind;
    switch (e.kind) {
      case K::Product: {
        std::vector<W> parts;
        for (const auto& k : e.kids) parts.push_back(eval<W>(k));
        return W::product(parts);
      }
      case K::Inv: return eval<W>(e.kids[0]).inverse();
      case K::Pow: return power(eval<W>(e.kids[0]), e.n);
      case K::Conj: return conj(eval<W>(e.kids[0]), eval<W>(e.kids[1]));
      case K::Comm: return comm(eval<W>(e.kids[0]), eval<W>(e.kids[1]));
      default: return std::visit([](const auto& x) { return lift_to<W>(x); }, atom(e));
    }
  }

  Value evaluate(const Expr& e) const {
    bool verbal = verbal_mode_;
    if (verbal) need_ctx();
    switch (level(e, verbal) + (verbal ? 2 : 0)) {
      case 0: return eval<W1>(e);
      case 1: return eval<W2>(e);
      case 2: return eval<TElement>(e);
      case 3: return eval<DElement>(e);
      default: return eval<GVElement>(e);
    }
  }

 private:
  void need_ctx() const {
    if (!ctx_) throw InvalidArgument("verbal atoms (omega, chi, psi, pi) need a word set");
  }

  /// An atom at its own level.
  Value atom(const Expr& e) const {
    using K = Expr::Kind;
    bool verbal = ctx_ != nullptr && verbal_mode_;
    switch (e.kind) {
      case K::C: return verbal ? Value(d_c()) : Value(c_elem());
      case K::Z: return verbal ? Value(gv_z()) : Value(z_elem());
      case K::Tau: return tau(e.n);
      case K::Phi: return phi(e.n);
      case K::Alpha: return alpha();
      case K::Omega: need_ctx(); return omega(*ctx_);
      case K::Chi: need_ctx(); return chi(*ctx_, e.n);
      case K::Psi: need_ctx(); return psi(*ctx_, e.n);
      case K::Pi: need_ctx(); return pi(eval<TElement>(e.kids[0]));
      case K::Shift: {
        Value base = atom(e.kids[0]);
        return std::visit([&](const auto& x) -> Value { return shifted(x, e.n); }, base);
      }
      default: break;
    }
    throw InvalidArgument("not an atom: " + e.str());
  }

  Value shifted(const W1& x, const BigInt& k) const { return conj(x, W1::top_only(CPow(k))); }
  Value shifted(const W2& x, const BigInt& k) const { return conj(x, W2::top_only(ZPow(k))); }
  Value shifted(const TElement& x, const BigInt& k) const { return conj(x, power(ctx_->a(), k)); }
  Value shifted(const DElement& x, const BigInt& k) const { return conj(x, d_c(k)); }
  Value shifted(const GVElement& x, const BigInt& k) const { return conj(x, gv_z(k)); }

  const VerbalContext* ctx_;

 public:
  /// c and z denote the verbal-universe generators when set.
  bool verbal_mode_ = false;
};

}  // namespace detail

/// Evaluates an expression. Verbal atoms need `ctx`; in an expression that uses them, c and z
/// denote the generators of D and of D Wr Z. Lower-level parts are lifted into first copies.
inline Value evaluate(const Expr& e, const VerbalContext* ctx = nullptr) {
  detail::Evaluator ev(ctx);
  ev.verbal_mode_ = e.verbal();
  return ev.evaluate(e);
}

/// Brings two values to a common level of the same universe.
template <class Fn>
auto with_common_level(const Value& a, const Value& b, Fn fn) {
  bool va = a.index() >= 2, vb = b.index() >= 2;
  if (va != vb) throw ParameterMismatch("cannot combine a rational-universe element with a verbal one");
  std::size_t top = std::max(a.index(), b.index());
  auto lifted = [&](const Value& v, auto tag) {
    using W = decltype(tag);
    return std::visit([](const auto& x) { return detail::lift_to<W>(x); }, v);
  };
  switch (top) {
    case 0: return fn(lifted(a, W1()), lifted(b, W1()));
    case 1: return fn(lifted(a, W2()), lifted(b, W2()));
    case 2: return fn(lifted(a, TElement()), lifted(b, TElement()));
    case 3: return fn(lifted(a, DElement()), lifted(b, DElement()));
    default: return fn(lifted(a, GVElement()), lifted(b, GVElement()));
  }
}

/// The word over {α, z} denoted by an expression built from alpha, z and the operations.
inline GWord to_gword(const Expr& e) {
  using K = Expr::Kind;
  switch (e.kind) {
    case K::Alpha: return GWord::alpha();
    case K::Z: return GWord::z(1);
    case K::Shift:
      if (e.kids[0].kind == K::Alpha) return GWord::alpha().conj(GWord::z(e.n));
      if (e.kids[0].kind == K::Z) return GWord::z(1);
      break;
    case K::Product: {
      GWord w;
      for (const auto& k : e.kids) w = w * to_gword(k);
      return w;
    }
    case K::Inv: return to_gword(e.kids[0]).inverse();
    case K::Pow: return to_gword(e.kids[0]).pow(e.n);
    case K::Conj: return to_gword(e.kids[0]).conj(to_gword(e.kids[1]));
    case K::Comm: return GWord::comm(to_gword(e.kids[0]), to_gword(e.kids[1]));
    default: break;
  }
  throw InvalidArgument("not a word in alpha and z: " + e.str());
}

}  // namespace wreathord
