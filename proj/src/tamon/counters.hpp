#pragma once

#include <cstdint>

namespace tamon {

/// Structural-operation tallies. Each inner structure keeps its own; the
/// monitor reports their sum plus its own migrations.
struct OpCounters {
  std::uint64_t node_inserts = 0;   // list nodes and fresh roots created
  std::uint64_t node_removals = 0;  // list or forest nodes freed
  std::uint64_t forest_links = 0;   // leaf attached under a root
  std::uint64_t root_merges = 0;    // root demoted under an equal-set root
  std::uint64_t parent_hops = 0;    // steps taken while looking up a root
  std::uint64_t evictions = 0;      // configurations pushed out of an interval
  std::uint64_t migrations = 0;     // evicted configurations re-inserted elsewhere

  std::uint64_t total() const noexcept {
    return node_inserts + node_removals + forest_links + root_merges + parent_hops + evictions +
           migrations;
  }

  OpCounters& operator+=(const OpCounters& o) noexcept {
    node_inserts += o.node_inserts;
    node_removals += o.node_removals;
    forest_links += o.forest_links;
    root_merges += o.root_merges;
    parent_hops += o.parent_hops;
    evictions += o.evictions;
    migrations += o.migrations;
    return *this;
  }
  friend OpCounters operator+(OpCounters a, const OpCounters& b) noexcept { return a += b; }
  friend bool operator==(const OpCounters&, const OpCounters&) = default;
};

}  // namespace tamon
