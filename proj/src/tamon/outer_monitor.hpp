#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tamon/automaton.hpp"
#include "tamon/counters.hpp"
#include "tamon/inner_structure.hpp"
#include "tamon/partition.hpp"
#include "tamon/stream.hpp"

namespace tamon {

/// Streaming acceptance monitor for one-clock automata.
///
/// Keeps one `InnerStructure` per interval of the partition induced by the
/// clock constants; structure i holds exactly the active configurations whose
/// clock value lies in interval i. Each read costs amortised O(1) in the
/// stream length and in the magnitudes of the constants.
class OuterMonitor {
 public:
  /// Letter tables hold 2^|Q| entries, so state counts are capped.
  static constexpr std::size_t kMaxStates = 16;

  /// Binds `bindings`, completes the automaton with a sink and builds the
  /// per-(interval, letter) tables. Throws `Unsupported` for automata with
  /// more than one clock, additive atoms or too many states.
  explicit OuterMonitor(const TimedAutomaton& aut, const Bindings& bindings = {},
                        bool check_promises = false);

  void read(const StreamElement& e);
  void read_letter(LetterId a);
  /// Throws `UnknownLetter` for a token outside the alphabet.
  void read_letter(const std::string& token);
  void read_span(const Rat& r);

  bool accepted() const;
  /// Number of elements read so far.
  std::uint64_t step() const noexcept { return step_; }
  OpCounters counters() const;

  /// The bound, completed automaton actually monitored.
  const TimedAutomaton& automaton() const noexcept { return aut_; }
  const IntervalPartition& partition() const noexcept { return partition_; }
  std::size_t inner_count() const noexcept { return inners_.size(); }
  const InnerStructure& inner(std::size_t i) const { return inners_.at(i); }

  /// All active configurations, ordered by clock then state.
  std::vector<ClockConfig> configurations() const;
  /// First failing inner-structure check, if any.
  InvariantReport check_invariants() const;

 private:
  const LetterTable& table(std::size_t interval, LetterId a) const {
    return tables_[interval * aut_.letter_count() + a];
  }
  void build_tables();

  TimedAutomaton aut_;
  IntervalPartition partition_;
  std::vector<InnerStructure> inners_;
  std::vector<LetterTable> tables_;
  std::vector<std::vector<ClockConfig>> evicted_;
  std::uint64_t migrations_ = 0;
  std::uint64_t step_ = 0;
};

struct Verdict {
  std::uint64_t step = 0;
  bool accepted = false;

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

/// Verdict before any input (step 0), then one per element.
std::vector<Verdict> run_stream(OuterMonitor& monitor, std::span<const StreamElement> elements);

/// `<step> accept` or `<step> reject`.
std::string format_verdict(const Verdict& v);

}  // namespace tamon
