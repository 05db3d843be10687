#include "tamon/naive_oracle.hpp"

#include "tamon/error.hpp"

namespace tamon {

ConfigSet oracle_init(const TimedAutomaton& aut) {
  ConfigSet k;
  aut.initial().for_each([&](StateId q) {
    k.insert({q, std::vector<Rat>(aut.clock_count(), Rat(0))});
  });
  return k;
}

ConfigSet oracle_read(const TimedAutomaton& aut, const ConfigSet& k, const StreamElement& e) {
  ConfigSet next;
  if (e.is_span()) {
    for (const auto& c : k) {
      Configuration shifted = c;
      for (auto& v : shifted.valuation) v += e.span();
      next.insert(next.end(), std::move(shifted));
    }
    return next;
  }
  auto a = aut.find_letter(e.letter());
  if (!a) throw Error(ErrorKind::UnknownLetter, "letter '" + e.letter() + "' is not in the alphabet");
  for (const auto& c : k) {
    for (const auto& t : aut.transitions()) {
      if (t.source != c.state || t.letter != *a) continue;
      if (!eval_condition(t.guard, c.valuation)) continue;
      Configuration succ{t.target, c.valuation};
      for (ClockId x : t.resets) succ.valuation[x] = Rat(0);
      next.insert(std::move(succ));
    }
  }
  return next;
}

bool oracle_accepted(const ConfigSet& k, StateSet final_states) {
  for (const auto& c : k) {
    if (final_states.contains(c.state)) return true;
  }
  return false;
}

NaiveOracle::NaiveOracle(const TimedAutomaton& aut, const Bindings& bindings)
    : aut_(bind_parameters(aut, bindings)), k_(oracle_init(aut_)) {}

void NaiveOracle::read(const StreamElement& e) {
  k_ = oracle_read(aut_, k_, e);
  ++step_;
}

}  // namespace tamon
