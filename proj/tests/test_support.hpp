#pragma once

// Helpers shared by the unit tests and the acceptance runner.
#include <algorithm>
#include <span>
#include <string>
#include <vector>

#include "tamon/automaton.hpp"
#include "tamon/naive_oracle.hpp"
#include "tamon/stream.hpp"

namespace tamon::testing {

inline Guard scale_guard(const Guard& g, const Rat& factor) {
  switch (g.kind()) {
    case Guard::Kind::True: return g;
    case Guard::Kind::Atom: {
      const Constant& c = g.constant();
      Constant scaled = c.is_param() ? c : Constant::literal(c.value() * factor);
      return Guard::sum_atom(g.clocks(), g.relation(), scaled);
    }
    case Guard::Kind::And: return Guard::both(scale_guard(g.lhs(), factor), scale_guard(g.rhs(), factor));
    case Guard::Kind::Or: return Guard::either(scale_guard(g.lhs(), factor), scale_guard(g.rhs(), factor));
  }
  return g;
}

// Same automaton with every literal constant multiplied by `factor`.
inline TimedAutomaton scale_constants(const TimedAutomaton& aut, const Rat& factor) {
  TimedAutomaton out;
  for (const auto& s : aut.states()) out.add_state(s);
  for (const auto& a : aut.alphabet()) out.add_letter(a);
  for (const auto& x : aut.clocks()) out.add_clock(x);
  for (const auto& p : aut.params()) out.add_param(p);
  for (StateId q = 0; q < aut.state_count(); ++q) {
    out.set_initial(q, aut.is_initial(q));
    out.set_final(q, aut.is_final(q));
  }
  for (Transition t : aut.transitions()) {
    t.guard = scale_guard(t.guard, factor);
    out.add_transition(std::move(t));
  }
  return out;
}

inline Bindings scale_bindings(Bindings b, const Rat& factor) {
  for (auto& [name, value] : b) value = value * factor;
  return b;
}

inline std::vector<StreamElement> scale_stream(std::span<const StreamElement> s, const Rat& factor) {
  std::vector<StreamElement> out;
  out.reserve(s.size());
  for (const auto& e : s) out.push_back(e.is_span() ? StreamElement::span(e.span() * factor) : e);
  return out;
}

// The naive oracle's configurations flattened to (state, clock) pairs, sorted
// like the monitor's output. One-clock automata only.
inline std::vector<ClockConfig> flatten(const ConfigSet& k) {
  std::vector<ClockConfig> out;
  for (const auto& c : k) out.push_back({c.state, c.valuation.at(0)});
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace tamon::testing
