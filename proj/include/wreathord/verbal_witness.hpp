#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "wreathord/malcev.hpp"
#include "wreathord/report.hpp"
#include "wreathord/word.hpp"

namespace wreathord {

/// A nontrivial element a of V(S) together with its presentation
/// a = v1(a11, .., a1t)^eps1 * ... * vd(ad1, .., adt)^epsd.
template <class S>
struct VerbalWitness {
  struct Term {
    Word word;
    std::vector<S> args;
    int eps = 1;
  };
  S a;
  std::vector<Term> terms;

  /// Re-evaluates the presentation.
  S replay() const {
    using T = group_traits<S>;
    S out = T::one();
    for (const auto& t : terms) {
      S v = eval_word<S>(t.word, t.args);
      out = T::mul(out, t.eps > 0 ? v : T::inv(v));
    }
    return out;
  }
};

enum class WordFamily { Power, Commutator };

/// The fiber/top group S chosen for a word set, with a positive witness a in V(S).
template <class S>
struct SelectedGroup {
  WordFamily family = WordFamily::Power;
  Word word;
  long power = 0;     ///< n for power words
  int rank = 1;
  int nilpotency_class = 1;  ///< least c with N_c not inside the variety defined by the word
  int order_sign = 1;
  bool order_inverted = false;  ///< order was flipped to make the witness positive
  S a;
  VerbalWitness<S> witness;
  std::vector<S> generators;  ///< the distinct a_ij used by the witness, in variable order

  std::string family_name() const {
    return family == WordFamily::Power ? "PowerWord(" + std::to_string(power) + ")" : "CommutatorWord";
  }
};

namespace detail {

inline SelectedGroup<MalcevElement> finish_selection(SelectedGroup<MalcevElement> sel, const Word& word,
                                                    const std::vector<MalcevElement>& args) {
  sel.word = word;
  sel.witness.terms.push_back({word, args, 1});
  sel.a = sel.witness.replay();
  if (sel.a.is_identity()) throw ConstructionViolated("witness evaluates to the identity");
  if (nil2_compare(sel.a, MalcevElement()) == Ordering::Less) {
    // Replace the order by its inverse so that a is positive.
    sel.order_sign = -sel.order_sign;
    sel.order_inverted = true;
    for (auto& g : sel.generators) g = g.with_order_sign(sel.order_sign);
    for (auto& t : sel.witness.terms)
      for (auto& g : t.args) g = g.with_order_sign(sel.order_sign);
    sel.a = sel.witness.replay();
  }
  sel.witness.a = sel.a;
  return sel;
}

}  // namespace detail

/// Chooses S for the built-in word families:
///  - x_i^n (|n| >= 2): S = Z (rank 1), a = generator^n;
///  - [x_i, x_j], i != j: S = free nilpotent class 2 of rank 2, a = [y1, y2].
/// Other word sets need a plugin and raise UnsupportedWordset.
inline SelectedGroup<MalcevElement> select_S(const Word& v, int initial_order_sign = 1) {
  Word w = v.reduced();
  const auto& ls = w.letters();
  SelectedGroup<MalcevElement> sel;
  sel.order_sign = initial_order_sign;

  bool single_power = !ls.empty() && std::all_of(ls.begin(), ls.end(), [&](const Letter& l) { return l == ls.front(); });
  if (single_power) {
    long n = static_cast<long>(ls.size()) * ls.front().sign;
    if (n >= 2 || n <= -2) {
      sel.family = WordFamily::Power;
      sel.power = n < 0 ? -n : n;
      sel.rank = 1;
      sel.nilpotency_class = 1;
      auto y = MalcevElement::generator(1, 1, initial_order_sign);
      std::vector<MalcevElement> args(w.arity(), MalcevElement::identity(1, initial_order_sign));
      args[ls.front().var - 1] = y;
      sel.generators = {y};
      return detail::finish_selection(std::move(sel), w, args);
    }
  }
  if (ls.size() == 4 && ls[0].sign == -1 && ls[1].sign == -1 && ls[2].sign == 1 && ls[3].sign == 1 &&
      ls[0].var == ls[2].var && ls[1].var == ls[3].var && ls[0].var != ls[1].var) {
    sel.family = WordFamily::Commutator;
    sel.rank = 2;
    sel.nilpotency_class = 2;
    auto y1 = MalcevElement::generator(2, 1, initial_order_sign);
    auto y2 = MalcevElement::generator(2, 2, initial_order_sign);
    std::vector<MalcevElement> args(w.arity(), MalcevElement::identity(2, initial_order_sign));
    args[ls[0].var - 1] = y1;
    args[ls[1].var - 1] = y2;
    sel.generators = {y1, y2};
    return detail::finish_selection(std::move(sel), w, args);
  }
  throw UnsupportedWordset("word set '" + v.str() +
                           "' is not a built-in family (x_i^n with |n|>=2, or [x_i,x_j]); supply a plugin group");
}

/// Recomputes the witness presentation and checks that it reproduces a, that a != 1 and 1 < a.
template <class S>
Report verify_witness(const VerbalWitness<S>& w) {
  using T = group_traits<S>;
  Report r("witness", 0, 0);
  S recomputed = w.replay();
  bool replay_ok = T::equal(recomputed, w.a);
  nlohmann::ordered_json data;
  data["a"] = T::str(w.a);
  data["recomputed"] = T::str(recomputed);
  r.add("witness.replay", replay_ok, 1, data);
  r.add("witness.nontrivial", !is_identity(w.a), 1, {{"a", T::str(w.a)}});
  r.add("witness.positive", T::compare(T::one(), w.a) == Ordering::Less, 1, {{"a", T::str(w.a)}});
  return r;
}

}  // namespace wreathord
