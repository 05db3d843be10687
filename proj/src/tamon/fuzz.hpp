#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "tamon/automaton.hpp"
#include "tamon/stream.hpp"

namespace tamon {

struct FuzzLimits {
  std::size_t max_states = 4;
  std::size_t max_letters = 3;
  std::size_t max_constants = 3;
  std::size_t max_stream = 200;
};

/// Random one-clock automaton: random guards over at most
/// `max_constants` rational constants, random resets, random initial and
/// final sets.
TimedAutomaton random_automaton(std::mt19937_64& rng, const FuzzLimits& limits = {});

/// Random clock-free automaton over letters `a`, `b`, ... .
TimedAutomaton random_nfa(std::mt19937_64& rng, std::size_t max_states, std::size_t letters);

/// Random mix of letters and spans; span denominators are small so that
/// clock values regularly land exactly on constants.
std::vector<StreamElement> random_stream(std::mt19937_64& rng, const TimedAutomaton& aut,
                                         std::size_t max_len);

struct Divergence {
  std::uint64_t step = 0;
  bool fast = false;
  bool naive = false;
};

/// Runs the fast monitor and the naive oracle side by side; the first step
/// where verdicts differ, if any. Step 0 is the verdict before any input.
std::optional<Divergence> compare_engines(const TimedAutomaton& aut, const Bindings& bindings,
                                          std::span<const StreamElement> stream);

}  // namespace tamon
