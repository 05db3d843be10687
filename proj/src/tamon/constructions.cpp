#include "tamon/constructions.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

#include "tamon/error.hpp"

namespace tamon {

// ---- sliding window ------------------------------------------------------

TimedAutomaton sliding_window(const TimedAutomaton& nfa, const Constant& window) {
  if (nfa.clock_count() != 0) {
    throw Error(ErrorKind::InvalidArgument, "sliding window input must not use clocks");
  }
  if (!window.is_param() && !window.value().is_positive()) {
    throw Error(ErrorKind::InvalidArgument, "window length must be positive");
  }
  TimedAutomaton out;
  for (const auto& s : nfa.states()) out.add_state(s);
  for (const auto& a : nfa.alphabet()) out.add_letter(a);
  ClockId x = out.add_clock("x");
  std::string end_name = "window_end";
  for (int i = 1; out.find_state(end_name); ++i) end_name = "window_end" + std::to_string(i);
  StateId end = out.add_state(end_name);
  if (window.is_param()) out.add_param(window.name());
  for (StateId q = 0; q < nfa.state_count(); ++q) out.set_initial(q, nfa.is_initial(q));
  out.set_final(end);

  Guard at_window = Guard::atom(x, Relation::Equal, window);
  for (const auto& t : nfa.transitions()) {
    if (!t.guard.is_true() || t.resets_any()) {
      throw Error(ErrorKind::InvalidArgument, "sliding window input must have unguarded transitions");
    }
    out.add_transition({t.source, t.letter, Guard::always(), t.target, {}});
    if (nfa.is_final(t.target)) out.add_transition({t.source, t.letter, at_window, end, {}});
  }
  // Initial states may restart the window at any letter.
  nfa.initial().for_each([&](StateId q) {
    for (LetterId a = 0; a < out.letter_count(); ++a) {
      out.add_transition({q, a, Guard::always(), q, {x}});
    }
  });
  return out;
}

bool nfa_accepts(const TimedAutomaton& nfa, std::span<const LetterId> word) {
  StateSet current = nfa.initial();
  for (LetterId a : word) {
    StateSet next;
    for (const auto& t : nfa.transitions()) {
      if (t.letter == a && current.contains(t.source)) next.insert(t.target);
    }
    current = next;
  }
  return current.intersects(nfa.final_states());
}

std::vector<StreamElement> encode_with_span(std::span<const std::string> word, const Rat& span) {
  std::vector<StreamElement> out;
  out.reserve(2 * word.size());
  for (const auto& a : word) {
    out.push_back(StreamElement::span(span));
    out.push_back(StreamElement::letter(a));
  }
  return out;
}

std::vector<StreamElement> encode_discrete(std::span<const std::string> word) {
  return encode_with_span(word, Rat(1));
}

// ---- event patterns ------------------------------------------------------

CelExpr CelExpr::letter(std::string token) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Letter;
  n->token = std::move(token);
  return CelExpr(std::move(n));
}

CelExpr CelExpr::seq(CelExpr lhs, CelExpr rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Seq;
  n->lhs = std::make_shared<const CelExpr>(std::move(lhs));
  n->rhs = std::make_shared<const CelExpr>(std::move(rhs));
  return CelExpr(std::move(n));
}

CelExpr CelExpr::within(CelExpr body, std::uint64_t t) {
  if (t == 0) throw Error(ErrorKind::InvalidArgument, "WITHIN bound must be positive");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Within;
  n->lhs = std::make_shared<const CelExpr>(std::move(body));
  n->window = t;
  return CelExpr(std::move(n));
}

std::string CelExpr::str() const {
  switch (kind()) {
    case Kind::Letter: return token();
    case Kind::Seq: return "(" + lhs().str() + " ; " + rhs().str() + ")";
    case Kind::Within: return "(" + body().str() + " WITHIN " + std::to_string(window()) + ")";
  }
  return "?";
}

bool cel_matches(std::span<const std::string> word, const CelExpr& expr) {
  const std::size_t n = word.size();
  if (n == 0) return false;
  // memo[node][i * (n + 1) + j]: -1 unknown, else the answer for word[i, j).
  std::unordered_map<const CelExpr*, std::vector<signed char>> memo;
  std::function<bool(const CelExpr&, std::size_t, std::size_t)> match =
      [&](const CelExpr& e, std::size_t i, std::size_t j) -> bool {
    auto& table = memo[&e];
    if (table.empty()) table.assign((n + 1) * (n + 1), -1);
    signed char& slot = table[i * (n + 1) + j];
    if (slot >= 0) return slot != 0;
    bool result = false;
    switch (e.kind()) {
      case CelExpr::Kind::Letter:
        result = word[j - 1] == e.token();
        break;
      case CelExpr::Kind::Seq:
        for (std::size_t k = i + 1; k < j && !result; ++k) {
          result = match(e.lhs(), i, k) && match(e.rhs(), k, j);
        }
        break;
      case CelExpr::Kind::Within: {
        // Positions 1..len within the subword; keep m = max(1, len - t) onward.
        std::size_t len = j - i;
        std::size_t m = len > e.window() ? len - e.window() : 1;
        result = match(e.body(), i + m - 1, j);
        break;
      }
    }
    // `table` may have been invalidated by recursive inserts into `memo`.
    memo[&e][i * (n + 1) + j] = result ? 1 : 0;
    return result;
  };
  return match(expr, 0, n);
}

CelExpr cel_example_expr() {
  CelExpr ab = CelExpr::seq(CelExpr::letter("a"), CelExpr::letter("b"));
  return CelExpr::within(CelExpr::seq(CelExpr::within(ab, 4), CelExpr::letter("c")), 10);
}

TimedAutomaton cel_example_automaton() {
  TimedAutomaton aut;
  for (const char* a : {"a", "b", "c"}) aut.add_letter(a);
  ClockId x = aut.add_clock("x");
  aut.add_param("WAB");
  aut.add_param("WAC");
  StateId p = aut.add_state("p");
  StateId q = aut.add_state("q");
  StateId r = aut.add_state("r");
  StateId s = aut.add_state("s");
  aut.set_initial(p);
  aut.set_final(s);
  auto at_most = [&](const char* bound) {
    return Guard::either(Guard::atom(x, Relation::Less, Constant::param(bound)),
                         Guard::atom(x, Relation::Equal, Constant::param(bound)));
  };
  // Waiting states skip arbitrary letters between the three events.
  for (StateId w : {p, q, r}) {
    for (LetterId a = 0; a < 3; ++a) aut.add_transition({w, a, Guard::always(), w, {}});
  }
  aut.add_transition({p, 0, Guard::always(), q, {x}});
  aut.add_transition({q, 1, at_most("WAB"), r, {}});
  aut.add_transition({r, 2, at_most("WAC"), s, {}});
  return aut;
}

Bindings cel_example_bindings() { return {{"WAB", Rat(4)}, {"WAC", Rat(10)}}; }

// ---- coin sums -----------------------------------------------------------

TimedAutomaton frobenius_automaton(std::span<const std::uint64_t> ks) {
  if (ks.empty()) throw Error(ErrorKind::InvalidArgument, "need at least one coin value");
  TimedAutomaton aut;
  LetterId a = aut.add_letter("a");
  ClockId x = aut.add_clock("x");
  StateId p = aut.add_state("p");
  StateId q = aut.add_state("q");
  aut.set_initial(p);
  aut.set_final(q);
  std::optional<Guard> hit;
  for (std::uint64_t k : ks) {
    if (k == 0) throw Error(ErrorKind::InvalidArgument, "coin values must be positive");
    Guard g = Guard::atom(x, Relation::Equal, Constant::literal(Rat(static_cast<std::int64_t>(k))));
    hit = hit ? Guard::either(*hit, g) : g;
  }
  aut.add_transition({p, a, Guard::always(), p, {}});
  aut.add_transition({p, a, *hit, q, {x}});
  aut.add_transition({q, a, Guard::always(), p, {}});
  return aut;
}

bool coin_dp_oracle(std::span<const std::uint64_t> ks, std::uint64_t h) {
  std::vector<bool> reach(h + 1, false);
  reach[0] = true;
  for (std::uint64_t v = 1; v <= h; ++v) {
    for (std::uint64_t k : ks) {
      if (k != 0 && k <= v && reach[v - k]) {
        reach[v] = true;
        break;
      }
    }
  }
  return reach[h];
}

// ---- 3SUM ---------------------------------------------------------------

const char* const kDiamond = "♦";
const char* const kSpade = "♠";

ThreeSumInstance threesum_instance(std::vector<Rat> set) {
  if (set.empty()) throw Error(ErrorKind::InvalidArgument, "3SUM instance needs a non-empty set");
  for (const auto& s : set) {
    if (!s.is_positive()) throw Error(ErrorKind::InvalidArgument, "3SUM elements must be positive");
  }
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());

  ThreeSumInstance inst;
  inst.bound = set.back() + Rat(1);
  const Rat& m = inst.bound;
  const std::size_t n = set.size();

  // Gaps from the top: M - s_n, s_n - s_{n-1}, ..., s_2 - s_1.
  std::vector<Rat> gaps;
  gaps.push_back(m - set[n - 1]);
  for (std::size_t i = n - 1; i >= 1; --i) gaps.push_back(set[i] - set[i - 1]);

  auto& w = inst.word;
  auto letter = [&](const char* a) { w.push_back(StreamElement::letter(a)); };
  auto span = [&](const Rat& r) { w.push_back(StreamElement::span(r)); };
  auto push_u = [&] {
    for (const auto& g : gaps) {
      span(Rat(2) * g);
      letter(kDiamond);
    }
    span(Rat(2) * set[0]);
  };
  push_u();
  letter(kSpade);
  push_u();
  letter(kSpade);
  for (const auto& g : gaps) {
    span(g);
    letter(kDiamond);
  }

  TimedAutomaton& aut = inst.automaton;
  LetterId dia = aut.add_letter(kDiamond);
  LetterId spa = aut.add_letter(kSpade);
  ClockId x = aut.add_clock("x");
  ClockId y = aut.add_clock("y");
  StateId p1 = aut.add_state("p1");
  StateId p2 = aut.add_state("p2");
  StateId q1 = aut.add_state("q1");
  StateId q2 = aut.add_state("q2");
  StateId r1 = aut.add_state("r1");
  StateId r2 = aut.add_state("r2");
  aut.set_initial(p1);
  aut.set_final(r2);
  for (StateId s = p1; s <= r2; ++s) aut.add_transition({s, dia, Guard::always(), s, {}});
  aut.add_transition({p1, dia, Guard::always(), p2, {x}});
  aut.add_transition({p2, spa, Guard::always(), q1, {y}});
  aut.add_transition({q1, dia, Guard::always(), q2, {y}});
  aut.add_transition({q2, spa, Guard::always(), r1, {}});
  aut.add_transition({r1, dia, Guard::sum_atom({x, y}, Relation::Equal, Constant::literal(Rat(4) * m)),
                      r2, {}});
  inst.set = std::move(set);
  return inst;
}

bool threesum_brute(std::span<const Rat> set) {
  std::vector<Rat> sorted(set.begin(), set.end());
  std::sort(sorted.begin(), sorted.end());
  for (const auto& a : sorted) {
    for (const auto& b : sorted) {
      if (std::binary_search(sorted.begin(), sorted.end(), a + b)) return true;
    }
  }
  return false;
}

}  // namespace tamon
