#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tamon/automaton.hpp"
#include "tamon/counters.hpp"
#include "tamon/partition.hpp"
#include "tamon/rational.hpp"

namespace tamon {

/// Successor sets for one (interval, letter) pair, indexed by the bitmask of
/// the source set: `keep[X]` via non-resetting transitions, `reset[X]` via
/// resetting ones.
struct LetterTable {
  std::vector<StateSet> keep;
  std::vector<StateSet> reset;
};

enum class InvariantKind {
  None,
  ClockOutsideInterval,  // some stored clock value has left the interval
  ListOrder,             // timestamps not strictly decreasing along the list
  ForestShape,           // leaf/list mismatch, wrong child count, dangling node
  RootSets,              // root sets empty or repeated, ranks repeated or out of range
  DepthOverRank,         // a tree is deeper than its root's rank
};

const char* to_string(InvariantKind kind);

struct InvariantReport {
  InvariantKind violated = InvariantKind::None;
  std::string detail;

  bool ok() const noexcept { return violated == InvariantKind::None; }
};

/// Set of configurations whose clock values lie in one interval J.
///
/// Clock values are stored relative to a global clock: a list node with
/// timestamp s represents the value `clock() - s`, so advancing time is one
/// addition. The list is ordered by increasing clock value. Its nodes are the
/// leaves of a forest whose roots carry state sets; the states attached to a
/// clock value are those of the root above its node. Ranks on the roots keep
/// every tree shallow (depth <= rank <= 2^|Q|).
class InnerStructure {
 public:
  /// `check_promises` turns on validation of `insert`'s preconditions.
  InnerStructure(Interval interval, std::size_t state_count, bool check_promises = false);

  const Interval& interval() const noexcept { return interval_; }
  const Rat& clock() const noexcept { return y_; }
  bool empty() const noexcept { return list_head_ == kNil; }
  std::size_t list_size() const noexcept { return list_size_; }
  std::size_t root_count() const noexcept { return root_count_; }

  /// True iff some stored configuration has a state in `final_states`.
  bool accepted(StateSet final_states) const;

  /// Adds (q, t). Caller promises t is in the interval and no larger than any
  /// stored clock value; with promise checking on, a violation throws
  /// `Contract`.
  void insert(StateId q, const Rat& t);

  /// Advances every clock by r > 0 and removes the configurations that leave
  /// the interval, appending them to `out` ordered by non-decreasing clock.
  void update_time(const Rat& r, std::vector<ClockConfig>& out);
  std::vector<ClockConfig> update_time(const Rat& r);

  /// Applies one letter: every root set X becomes `table.keep[X]`, and roots
  /// that now coincide are merged. Returns the states entered by resetting
  /// transitions (all at clock 0).
  StateSet update_letter(const LetterTable& table);

  /// Stored configurations, ordered by clock then state.
  std::vector<ClockConfig> configurations() const;
  /// Union of all root sets.
  StateSet all_states() const;

  InvariantReport check_invariants() const;

  const OpCounters& counters() const noexcept { return counters_; }

 private:
  friend struct InnerStructureProbe;

  using Index = std::int32_t;
  static constexpr Index kNil = -1;

  // One pool for both list leaves and forest nodes. A leaf uses the list
  // links and the timestamp; a root uses the root-list links, states and
  // rank. Demoted roots keep their fields but are off the root list.
  struct Node {
    Index parent = kNil;
    std::uint32_t children = 0;
    Index prev = kNil;
    Index next = kNil;
    Rat timestamp;
    StateSet states;
    std::uint32_t rank = 0;
    bool leaf = false;
    bool live = false;
  };

  Index allocate();
  void release(Index i);
  Index root_of(Index leaf);
  Index root_of_quiet(Index leaf) const;
  Rat clock_of(Index leaf) const { return y_ - nodes_[leaf].timestamp; }
  // New front leaf with the given timestamp, under the root for `states`.
  void push_front_leaf(const Rat& timestamp, StateSet states);
  Index find_or_make_root(StateSet states);
  std::uint32_t smallest_free_rank();
  void unlink_leaf(Index i);
  void unlink_root(Index i);
  void push_root_front(Index i);
  // Unlinks a leaf and frees every ancestor left without children.
  void cascade_remove(Index leaf);

  Interval interval_;
  std::uint64_t max_rank_;
  bool check_promises_;
  Rat y_;
  std::vector<Node> nodes_;
  std::vector<Index> free_;
  Index list_head_ = kNil;  // smallest clock value
  Index list_tail_ = kNil;  // largest clock value
  Index roots_head_ = kNil;
  std::size_t list_size_ = 0;
  std::size_t root_count_ = 0;
  OpCounters counters_;
  // Scratch buffers reused across calls.
  std::vector<std::uint32_t> rank_scratch_;
  std::vector<Index> root_scratch_;
};

}  // namespace tamon
