#pragma once

#include <set>
#include <string>
#include <vector>

#include "tamon/automaton.hpp"
#include "tamon/stream.hpp"

namespace tamon {

/// A state with a full clock valuation (indexed by clock id).
struct Configuration {
  StateId state = 0;
  std::vector<Rat> valuation;

  friend bool operator==(const Configuration&, const Configuration&) = default;
  friend auto operator<=>(const Configuration& a, const Configuration& b) {
    if (auto c = a.state <=> b.state; c != 0) return c;
    return a.valuation <=> b.valuation;
  }
};

using ConfigSet = std::set<Configuration>;

// Direct run semantics over explicit configuration sets. Any number of clocks
// and additive atoms; cost grows with the number of distinct valuations.
// `aut` must have all parameters bound (see `bind_parameters`).

ConfigSet oracle_init(const TimedAutomaton& aut);
/// Throws `UnknownLetter` for a letter outside the alphabet.
ConfigSet oracle_read(const TimedAutomaton& aut, const ConfigSet& k, const StreamElement& e);
bool oracle_accepted(const ConfigSet& k, StateSet final_states);

/// Stateful wrapper with the same interface shape as `OuterMonitor`.
class NaiveOracle {
 public:
  explicit NaiveOracle(const TimedAutomaton& aut, const Bindings& bindings = {});

  void read(const StreamElement& e);
  bool accepted() const { return oracle_accepted(k_, aut_.final_states()); }
  std::uint64_t step() const noexcept { return step_; }
  const ConfigSet& configurations() const noexcept { return k_; }
  const TimedAutomaton& automaton() const noexcept { return aut_; }

 private:
  TimedAutomaton aut_;
  ConfigSet k_;
  std::uint64_t step_ = 0;
};

}  // namespace tamon
