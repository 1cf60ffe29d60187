#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "wreathord/expr.hpp"
#include "wreathord/verify_orders.hpp"
#include "wreathord/verify_section2.hpp"
#include "wreathord/verify_verbal.hpp"

using namespace wreathord;
using Json = nlohmann::ordered_json;

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kUndecided = 3 };

struct Options {
  std::uint64_t seed = 1;
  long budget = 100;
  long window = 64;
  bool json = false;
  std::string word = "[x1,x2]";
};

/// Expressions from the arguments, or one per non-empty stdin line when none are given.
std::vector<std::string> inputs(const std::vector<std::string>& args) {
  if (!args.empty()) return args;
  std::vector<std::string> out;
  std::string line;
  while (std::getline(std::cin, line))
    if (line.find_first_not_of(" \t\r") != std::string::npos) out.push_back(line);
  return out;
}

void require_count(const std::vector<std::string>& xs, std::size_t lo, std::size_t hi, const char* what) {
  if (xs.size() < lo || xs.size() > hi) throw InvalidArgument(std::string(what));
}

using Fiber = std::variant<Rational, MalcevElement, W1, W2, TElement, DElement, GVElement>;

std::string fiber_str(const Fiber& f) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Rational> || std::is_same_v<T, MalcevElement>) {
          return x.str();
        } else if constexpr (std::is_same_v<T, W1>) {
          std::string s = x.str(), sf = x.step_form().str();
          return s == sf ? s : s + "  = " + sf;
        } else {
          return x.str();
        }
      },
      f);
}

bool fiber_trivial(const Fiber& f) {
  return std::visit(
      [](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Rational>) return x.is_zero();
        else if constexpr (std::is_same_v<T, MalcevElement>) return x.is_identity();
        else return is_identity(x);
      },
      f);
}

/// The coordinate symbol of the top group at each level.
char level_symbol(const Fiber& f) {
  switch (f.index()) {
    case 2: return 'c';
    case 3: return 'z';
    case 4: return 'a';
    case 5: return 'c';
    case 6: return 'z';
    default: return 0;
  }
}

Fiber coordinate(const Fiber& f, char sym, const BigInt& k, const VerbalContext* ctx) {
  if (sym != level_symbol(f))
    throw InvalidArgument(std::string("coordinate '") + sym + "' does not index this level (expected '" +
                          (level_symbol(f) ? std::string(1, level_symbol(f)) : std::string("none")) + "')");
  switch (f.index()) {
    case 2: return std::get<W1>(f).at(CPow(k));
    case 3: return std::get<W2>(f).at(ZPow(k));
    case 4: return std::get<TElement>(f).at(power(ctx->selected().a, k));
    case 5: return std::get<DElement>(f).at(CPow(k));
    default: return std::get<GVElement>(f).at(ZPow(k));
  }
}

std::string top_str(const Fiber& f) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Rational> || std::is_same_v<T, MalcevElement>) return "";
        else return decltype(x.top())(x.top()).str();
      },
      f);
}

Fiber to_fiber(const Value& v) {
  return std::visit([](const auto& x) -> Fiber { return x; }, v);
}

std::optional<VerbalContext> make_context(const Expr& e, const Options& o) {
  if (!e.verbal()) return std::nullopt;
  return VerbalContext(parse_word(o.word));
}

int cmd_eval(const std::vector<std::string>& args, const std::string& at, const Options& o) {
  auto texts = inputs(args);
  require_count(texts, 1, 1, "eval takes one expression");
  Expr e = parse_expr(texts[0]);
  auto ctx = make_context(e, o);
  Value v = evaluate(e, ctx ? &*ctx : nullptr);
  Fiber f = to_fiber(v);
  Json out{{"expr", e.str()}, {"level", level_name(v)}, {"value", value_str(v)}};

  if (!at.empty()) {
    std::string path;
    std::stringstream ss(at);
    std::string part;
    while (std::getline(ss, part, ',')) {
      auto colon = part.find(':');
      if (colon != 1) throw InvalidArgument("--at expects entries like z:3,c:0");
      BigInt k;
      if (k.set_str(part.substr(2), 10) != 0) throw InvalidArgument("--at: bad integer in '" + part + "'");
      f = coordinate(f, part[0], k, ctx ? &*ctx : nullptr);
      path += (path.empty() ? "" : ",") + part;
    }
    out["at"] = path;
    out["result"] = fiber_str(f);
    if (o.json) std::cout << out.dump(2) << "\n";
    else std::cout << fiber_str(f) << "\n";
    return kPass;
  }

  char sym = level_symbol(f);
  Json values = Json::array();
  std::string text = std::string(level_name(v)) + ": " + value_str(v) + "\n";
  text += "top: " + top_str(f) + "\n";
  for (long j = -o.window; j <= o.window; ++j) {
    Fiber g = coordinate(f, sym, BigInt(j), ctx ? &*ctx : nullptr);
    if (fiber_trivial(g)) continue;
    std::string coord = std::string(1, sym) + "^" + std::to_string(j);
    values.push_back({{"at", coord}, {"value", fiber_str(g)}});
    text += "  " + coord + ": " + fiber_str(g) + "\n";
  }
  out["top"] = top_str(f);
  out["window"] = o.window;
  out["values"] = values;
  if (o.json) std::cout << out.dump(2) << "\n";
  else std::cout << text;
  return kPass;
}

Expr product_of(const std::vector<std::string>& texts) {
  Expr p;
  p.kind = Expr::Kind::Product;
  for (const auto& t : texts) p.kids.push_back(parse_expr(t));
  return p;
}

int cmd_mul(const std::vector<std::string>& args, const Options& o) {
  auto texts = inputs(args);
  require_count(texts, 1, SIZE_MAX, "mul takes at least one expression");
  Expr p = product_of(texts);
  auto ctx = make_context(p, o);
  Value v = evaluate(p, ctx ? &*ctx : nullptr);
  if (o.json) std::cout << Json{{"expr", p.str()}, {"level", level_name(v)}, {"value", value_str(v)}}.dump(2) << "\n";
  else std::cout << value_str(v) << "\n";
  return kPass;
}

int cmd_cmp(const std::vector<std::string>& args, const Options& o) {
  auto texts = inputs(args);
  require_count(texts, 2, 2, "cmp takes two expressions");
  Expr a = parse_expr(texts[0]), b = parse_expr(texts[1]);
  std::optional<VerbalContext> ctx;
  if (a.verbal() || b.verbal()) ctx.emplace(parse_word(o.word));
  const VerbalContext* cp = ctx ? &*ctx : nullptr;
  // c and z follow the universe of the pair, not of each side alone.
  detail::Evaluator ev(cp);
  ev.verbal_mode_ = cp != nullptr;
  Value va = ev.evaluate(a), vb = ev.evaluate(b);
  Json out{{"lhs", a.str()}, {"rhs", b.str()}};
  try {
    Ordering ord = with_common_level(va, vb, [](const auto& x, const auto& y) { return w_compare(x, y); });
    out["result"] = to_string(ord);
    if (o.json) std::cout << out.dump(2) << "\n";
    else std::cout << to_string(ord) << "\n";
    return kPass;
  } catch (const UndecidedError& e) {
    out["result"] = "UnknownBeyond";
    out["bound"] = e.bound().get_str();
    if (o.json) std::cout << out.dump(2) << "\n";
    else std::cout << "UnknownBeyond " << e.bound().get_str() << "\n";
    return kUndecided;
  }
}

std::string verdict_str(const Verdict<ZPow>& v) {
  if (v.is_equal()) return "verified";
  if (v.is_unknown()) return "UnknownBeyond " + v.bound.get_str();
  return "FAILED" + (v.witness ? " at " + v.witness->str() : std::string());
}

int verdict_exit(bool equal, bool unknown) { return equal ? kPass : unknown ? kUndecided : kFail; }

int cmd_embed_q(const std::vector<std::string>& args, const Options& o) {
  auto texts = inputs(args);
  require_count(texts, 1, 1, "embed-q takes one rational");
  Rational q = parse_rational(texts[0]);
  GWord w = big_phi(q);
  std::string expr = q.is_zero() ? "(pow z 0)"
                                 : "(comm (conj alpha (pow z -" + q.denominator().get_str() + ")) alpha)";
  if (!q.is_zero() && q.numerator() != 1) expr = "(pow " + expr + " " + q.numerator().get_str() + ")";
  W2 value = w.evaluate(), cert = big_phi_certificate(q);
  auto v = w_equal(value, cert);
  Json out{{"q", q.str()}, {"expr", expr}, {"word", w.str()}, {"certificate", cert.str()},
           {"value_at_z^0", value.at(ZPow(0L)).step_form().str()}, {"check", verdict_str(v)}};
  if (o.json) {
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "q = " << q.str() << "\nexpr: " << expr << "\nword: " << w.str() << "\nvalue at z^0: "
              << out["value_at_z^0"].get<std::string>() << "\ncertificate (" << q.str() << " at z^0, c^0): " << verdict_str(v)
              << "\n";
  }
  return verdict_exit(v.is_equal(), v.is_unknown());
}

int cmd_embed_verbal(const std::vector<std::string>& args, const Options& o) {
  auto texts = inputs(args);
  require_count(texts, 1, 1, "embed-verbal takes one rational");
  Rational q = parse_rational(texts[0]);
  VerbalContext ctx(parse_word(o.word));
  auto emb = embed_verbal(ctx, q);
  auto v = w_equal(emb.value, emb.certificate);
  const auto& sel = ctx.selected();
  Json out{{"q", q.str()},
           {"word_set", o.word},
           {"family", sel.family_name()},
           {"class", sel.nilpotency_class},
           {"expr", emb.expr},
           {"p", emb.p},
           {"d_p", q.is_zero() ? "" : ctx.enumeration().str(ctx.enumeration().word(emb.p))},
           {"value", emb.value.str()},
           {"check", verdict_str(v)}};
  if (o.json) {
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "q = " << q.str() << "  (word set " << o.word << ", " << sel.family_name() << ", class "
              << sel.nilpotency_class << ")\nexpr: " << emb.expr << "\n";
    if (!q.is_zero()) std::cout << "d_" << emb.p << " = " << out["d_p"].get<std::string>() << "\n";
    std::cout << "certificate (" << q.str() << " at z^0, c^0, 1): " << verdict_str(v) << "\n";
  }
  return verdict_exit(v.is_equal(), v.is_unknown());
}

int cmd_verify(const std::string& suite, const Options& o) {
  engine_options().window = o.window;
  Report r;
  if (suite == "section2") {
    r = verify_theorem1(o.seed, o.budget);
    Report chain = subnormal_chain(o.seed, o.budget);
    for (auto c : chain.checks()) r.add(std::move(c));
  } else if (suite == "verbal") {
    r = verify_theorem2(parse_word(o.word), o.seed, o.budget);
  } else {
    r = verify_orders(o.seed, o.budget, o.window);
  }
  if (o.json) std::cout << r.json().dump(2) << "\n";
  else std::cout << r.text();
  if (r.count(Status::Fail)) return kFail;
  if (r.count(Status::Unknown)) return kUndecided;
  return kPass;
}

int cmd_normal_form(const std::vector<std::string>& args, const Options& o) {
  auto texts = inputs(args);
  require_count(texts, 1, 1, "normal-form takes one expression in alpha and z");
  Expr e = parse_expr(texts[0]);
  GWord w = to_gword(e);
  auto nf = g_normal_form(w);
  auto v = w_equal(w.evaluate(), nf.evaluate());
  Json out{{"expr", e.str()}, {"word", w.str()}, {"normal_form", nf.str()}, {"check", verdict_str(v)}};
  if (o.json) std::cout << out.dump(2) << "\n";
  else std::cout << nf.str() << "\nequal to input: " << verdict_str(v) << "\n";
  return verdict_exit(v.is_equal(), v.is_unknown());
}

int cmd_table(long n, const Options& o) {
  if (n < 1) throw InvalidArgument("table: n must be >= 1");
  Json rows = Json::array();
  bool ok = true;
  std::string text = "[alpha^{z^-" + std::to_string(n) + "}, alpha](z^j)\n";
  for (long j = -2 * n - 4; j <= 2 * n + 4; ++j) {
    W1 got = commutator_table(n, j);
    auto [kase, shown] = commutator_case(n, j);
    bool match = w_equal(got, shown).is_equal();
    ok = ok && match;
    rows.push_back({{"j", j}, {"case", kase}, {"value", got.str()}, {"matches_display", match}});
    text += "  j=" + std::to_string(j) + "  case " + std::to_string(kase) + "  " + got.str() + (match ? "" : "  MISMATCH") + "\n";
  }
  if (o.json) std::cout << Json{{"n", n}, {"rows", rows}}.dump(2) << "\n";
  else std::cout << text;
  return ok ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact order-preserving embeddings of Q into wreath products"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--seed", o.seed, "Random seed for verify suites");
  app.add_option("--budget", o.budget, "Sample-count scale in percent")->check(CLI::PositiveNumber);
  app.add_option("--window", o.window, "Coordinate window for scans and eval")->check(CLI::PositiveNumber);
  app.add_flag("--json", o.json, "Machine-readable output");
  app.add_option("--word", o.word, "Word set for the verbal construction, e.g. \"[x1,x2]\" or \"x1^2\"");

  std::vector<std::string> args;
  std::string at, suite;
  long table_n = 3;

  auto* eval = app.add_subcommand("eval", "Evaluate an expression and print its coordinate values");
  eval->add_option("expr", args, "Expression (stdin if omitted)");
  eval->add_option("--at", at, "Coordinate path such as z:3,c:0 (a:k indexes the ray in T)");
  auto* mul = app.add_subcommand("mul", "Multiply expressions");
  mul->add_option("expr", args, "Expressions (stdin lines if omitted)");
  auto* cmp = app.add_subcommand("cmp", "Compare two expressions in the full order");
  cmp->add_option("expr", args, "Two expressions (stdin lines if omitted)");
  auto* embq = app.add_subcommand("embed-q", "Image of a rational in <alpha, z>");
  embq->add_option("q", args, "Rational m/n");
  auto* embv = app.add_subcommand("embed-verbal", "Image of a rational in <omega, z>");
  embv->add_option("q", args, "Rational m/n");
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", suite, "section2 | verbal | orders")->required()->check(CLI::IsMember({"section2", "verbal", "orders"}));
  auto* nf = app.add_subcommand("normal-form", "Normal form z^k prod (alpha^{z^ki})^ni of a word in alpha and z");
  nf->add_option("expr", args, "Expression in alpha and z");
  auto* table = app.add_subcommand("table", "Commutator [alpha^{z^-n}, alpha] over j in [-2n-4, 2n+4]");
  table->add_option("--n", table_n, "n >= 1");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*eval) return cmd_eval(args, at, o);
    if (*mul) return cmd_mul(args, o);
    if (*cmp) return cmd_cmp(args, o);
    if (*embq) return cmd_embed_q(args, o);
    if (*embv) return cmd_embed_verbal(args, o);
    if (*verify) return cmd_verify(suite, o);
    if (*nf) return cmd_normal_form(args, o);
    if (*table) return cmd_table(table_n, o);
  } catch (const UndecidedError& e) {
    std::cerr << "undecided: " << e.what() << "\n";
    return kUndecided;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
