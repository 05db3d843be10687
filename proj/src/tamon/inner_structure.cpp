#include "tamon/inner_structure.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>
#include <unordered_set>

#include "tamon/error.hpp"

namespace tamon {

const char* to_string(InvariantKind kind) {
  switch (kind) {
    case InvariantKind::None: return "none";
    case InvariantKind::ClockOutsideInterval: return "clock-outside-interval";
    case InvariantKind::ListOrder: return "list-order";
    case InvariantKind::ForestShape: return "forest-shape";
    case InvariantKind::RootSets: return "root-sets";
    case InvariantKind::DepthOverRank: return "depth-over-rank";
  }
  return "?";
}

InnerStructure::InnerStructure(Interval interval, std::size_t state_count, bool check_promises)
    : interval_(std::move(interval)),
      max_rank_(state_count >= 63 ? ~std::uint64_t{0} : std::uint64_t{1} << state_count),
      check_promises_(check_promises) {}

InnerStructure::Index InnerStructure::allocate() {
  Index i;
  if (!free_.empty()) {
    i = free_.back();
    free_.pop_back();
    nodes_[i] = Node{};
  } else {
    i = static_cast<Index>(nodes_.size());
    nodes_.emplace_back();
  }
  nodes_[i].live = true;
  return i;
}

void InnerStructure::release(Index i) {
  nodes_[i].live = false;
  free_.push_back(i);
}

InnerStructure::Index InnerStructure::root_of(Index leaf) {
  Index i = nodes_[leaf].parent;
  ++counters_.parent_hops;
  while (nodes_[i].parent != kNil) {
    i = nodes_[i].parent;
    ++counters_.parent_hops;
  }
  return i;
}

InnerStructure::Index InnerStructure::root_of_quiet(Index leaf) const {
  Index i = nodes_[leaf].parent;
  while (nodes_[i].parent != kNil) i = nodes_[i].parent;
  return i;
}

bool InnerStructure::accepted(StateSet final_states) const {
  for (Index r = roots_head_; r != kNil; r = nodes_[r].next) {
    if (nodes_[r].states.intersects(final_states)) return true;
  }
  return false;
}

StateSet InnerStructure::all_states() const {
  StateSet all;
  for (Index r = roots_head_; r != kNil; r = nodes_[r].next) all |= nodes_[r].states;
  return all;
}

void InnerStructure::push_root_front(Index i) {
  nodes_[i].prev = kNil;
  nodes_[i].next = roots_head_;
  if (roots_head_ != kNil) nodes_[roots_head_].prev = i;
  roots_head_ = i;
  ++root_count_;
}

void InnerStructure::unlink_root(Index i) {
  Node& n = nodes_[i];
  if (n.prev != kNil) nodes_[n.prev].next = n.next;
  else roots_head_ = n.next;
  if (n.next != kNil) nodes_[n.next].prev = n.prev;
  n.prev = n.next = kNil;
  --root_count_;
}

void InnerStructure::unlink_leaf(Index i) {
  Node& n = nodes_[i];
  if (n.prev != kNil) nodes_[n.prev].next = n.next;
  else list_head_ = n.next;
  if (n.next != kNil) nodes_[n.next].prev = n.prev;
  else list_tail_ = n.prev;
  n.prev = n.next = kNil;
  --list_size_;
}

std::uint32_t InnerStructure::smallest_free_rank() {
  rank_scratch_.clear();
  for (Index r = roots_head_; r != kNil; r = nodes_[r].next) rank_scratch_.push_back(nodes_[r].rank);
  std::sort(rank_scratch_.begin(), rank_scratch_.end());
  std::uint32_t k = 1;
  for (std::uint32_t used : rank_scratch_) {
    if (used == k) ++k;
    else if (used > k) break;
  }
  return k;
}

InnerStructure::Index InnerStructure::find_or_make_root(StateSet states) {
  for (Index r = roots_head_; r != kNil; r = nodes_[r].next) {
    if (nodes_[r].states == states) return r;
  }
  std::uint32_t rank = smallest_free_rank();
  Index r = allocate();
  nodes_[r].states = states;
  nodes_[r].rank = rank;
  push_root_front(r);
  ++counters_.node_inserts;
  return r;
}

void InnerStructure::push_front_leaf(const Rat& timestamp, StateSet states) {
  Index root = find_or_make_root(states);
  Index i = allocate();
  Node& n = nodes_[i];
  n.leaf = true;
  n.timestamp = timestamp;
  n.parent = root;
  n.next = list_head_;
  if (list_head_ != kNil) nodes_[list_head_].prev = i;
  else list_tail_ = i;
  list_head_ = i;
  ++list_size_;
  ++nodes_[root].children;
  ++counters_.node_inserts;
  ++counters_.forest_links;
}

void InnerStructure::cascade_remove(Index leaf) {
  unlink_leaf(leaf);
  Index p = nodes_[leaf].parent;
  release(leaf);
  ++counters_.node_removals;
  while (p != kNil) {
    Node& n = nodes_[p];
    if (--n.children > 0) break;
    Index up = n.parent;
    if (up == kNil) unlink_root(p);
    release(p);
    ++counters_.node_removals;
    p = up;
  }
}

void InnerStructure::insert(StateId q, const Rat& t) {
  StateSet states = StateSet::single(q);
  if (check_promises_) {
    if (!interval_.contains(t)) {
      throw Error(ErrorKind::Contract,
                  "insert: clock value " + t.str() + " outside " + interval_.str());
    }
    if (list_head_ != kNil && clock_of(list_head_) < t) {
      throw Error(ErrorKind::Contract, "insert: clock value " + t.str() +
                                           " exceeds the smallest stored value " +
                                           clock_of(list_head_).str());
    }
  }
  if (list_head_ == kNil || t < clock_of(list_head_)) {
    push_front_leaf(y_ - t, states);
    return;
  }
  // t equals the smallest stored value: widen its state set.
  StateSet current = nodes_[root_of(list_head_)].states;
  if ((current | states) == current) return;
  Rat timestamp = nodes_[list_head_].timestamp;
  cascade_remove(list_head_);
  push_front_leaf(timestamp, current | states);
}

void InnerStructure::update_time(const Rat& r, std::vector<ClockConfig>& out) {
  if (!r.is_positive()) {
    throw Error(ErrorKind::InvalidArgument, "time spans must be strictly positive");
  }
  y_ += r;
  const std::size_t start = out.size();
  while (list_tail_ != kNil) {
    Rat t = clock_of(list_tail_);
    if (interval_.contains(t)) break;
    StateSet states = nodes_[root_of(list_tail_)].states;
    // Highest state first, so the final reversal leaves ties ascending.
    for (std::uint64_t b = states.bits(); b != 0; b &= ~(std::uint64_t{1} << (63 - std::countl_zero(b)))) {
      out.push_back({static_cast<StateId>(63 - std::countl_zero(b)), t});
    }
    counters_.evictions += static_cast<std::uint64_t>(states.size());
    cascade_remove(list_tail_);
  }
  // Collected from the largest clock down.
  std::reverse(out.begin() + static_cast<std::ptrdiff_t>(start), out.end());
}

std::vector<ClockConfig> InnerStructure::update_time(const Rat& r) {
  std::vector<ClockConfig> out;
  update_time(r, out);
  return out;
}

StateSet InnerStructure::update_letter(const LetterTable& table) {
  if (roots_head_ == kNil) return {};
  StateSet reached_by_reset = table.reset[all_states().bits()];

  root_scratch_.clear();
  for (Index r = roots_head_; r != kNil; r = nodes_[r].next) {
    Node& n = nodes_[r];
    n.states = table.keep[n.states.bits()];
    if (check_promises_ && n.states.empty()) {
      throw Error(ErrorKind::Contract, "letter table maps a non-empty set to the empty set");
    }
    root_scratch_.push_back(r);
  }
  // Each root goes under the highest-ranked root now carrying the same set.
  // That root is never demoted itself, so one pass suffices.
  for (Index r : root_scratch_) {
    Index best = r;
    for (Index o : root_scratch_) {
      if (nodes_[o].states == nodes_[r].states && nodes_[o].rank > nodes_[best].rank) best = o;
    }
    if (best == r) continue;
    unlink_root(r);
    nodes_[r].parent = best;
    ++nodes_[best].children;
    ++counters_.root_merges;
  }
  return reached_by_reset;
}

std::vector<ClockConfig> InnerStructure::configurations() const {
  std::vector<ClockConfig> out;
  for (Index i = list_head_; i != kNil; i = nodes_[i].next) {
    Rat t = clock_of(i);
    nodes_[root_of_quiet(i)].states.for_each([&](StateId q) { out.push_back({q, t}); });
  }
  return out;
}

InvariantReport InnerStructure::check_invariants() const {
  auto fail = [](InvariantKind k, std::string d) { return InvariantReport{k, std::move(d)}; };
  const std::size_t n_nodes = nodes_.size();

  // The list: values inside J, strictly increasing clock (decreasing timestamp).
  std::size_t count = 0;
  Index prev = kNil;
  for (Index i = list_head_; i != kNil; i = nodes_[i].next) {
    if (++count > n_nodes) return fail(InvariantKind::ListOrder, "list has a cycle");
    const Node& n = nodes_[i];
    if (!n.live || !n.leaf) return fail(InvariantKind::ForestShape, "list holds a non-leaf node");
    if (n.prev != prev) return fail(InvariantKind::ListOrder, "broken back link");
    if (!interval_.contains(clock_of(i))) {
      return fail(InvariantKind::ClockOutsideInterval,
                  "clock " + clock_of(i).str() + " not in " + interval_.str());
    }
    if (prev != kNil && !(n.timestamp < nodes_[prev].timestamp)) {
      return fail(InvariantKind::ListOrder, "timestamps not strictly decreasing");
    }
    prev = i;
  }
  if (prev != list_tail_) return fail(InvariantKind::ListOrder, "tail does not end the list");
  if (count != list_size_) return fail(InvariantKind::ListOrder, "list size mismatch");

  // Forest shape: leaves are exactly the list nodes, counts are exact, and
  // every internal node has at least one child.
  std::vector<std::uint32_t> actual(n_nodes, 0);
  std::size_t live_leaves = 0;
  std::size_t live_roots = 0;
  for (std::size_t i = 0; i < n_nodes; ++i) {
    const Node& n = nodes_[i];
    if (!n.live) continue;
    if (n.leaf) {
      ++live_leaves;
      if (n.parent == kNil) return fail(InvariantKind::ForestShape, "leaf without a root");
    }
    if (n.parent != kNil) {
      const Node& p = nodes_[n.parent];
      if (!p.live || p.leaf) return fail(InvariantKind::ForestShape, "parent is not a live inner node");
      ++actual[n.parent];
    } else if (!n.leaf) {
      ++live_roots;
    }
  }
  if (live_leaves != list_size_) return fail(InvariantKind::ForestShape, "leaf not on the list");
  for (std::size_t i = 0; i < n_nodes; ++i) {
    const Node& n = nodes_[i];
    if (!n.live || n.leaf) continue;
    if (actual[i] != n.children) return fail(InvariantKind::ForestShape, "child count mismatch");
    if (n.children == 0) return fail(InvariantKind::ForestShape, "childless inner node");
  }

  // Roots: distinct non-empty sets, distinct ranks in 1..2^|Q|.
  std::unordered_set<std::uint64_t> sets;
  std::unordered_set<std::uint32_t> ranks;
  std::unordered_map<Index, std::uint32_t> depth;
  count = 0;
  prev = kNil;
  for (Index r = roots_head_; r != kNil; r = nodes_[r].next) {
    if (++count > n_nodes) return fail(InvariantKind::ForestShape, "root list has a cycle");
    const Node& n = nodes_[r];
    if (!n.live || n.leaf || n.parent != kNil) {
      return fail(InvariantKind::ForestShape, "root list holds a non-root");
    }
    if (n.prev != prev) return fail(InvariantKind::ForestShape, "broken root back link");
    if (n.states.empty()) return fail(InvariantKind::RootSets, "root with an empty set");
    if (!sets.insert(n.states.bits()).second) return fail(InvariantKind::RootSets, "two roots share a set");
    if (n.rank < 1 || n.rank > max_rank_) return fail(InvariantKind::RootSets, "rank out of range");
    if (!ranks.insert(n.rank).second) return fail(InvariantKind::RootSets, "two roots share a rank");
    depth[r] = 0;
    prev = r;
  }
  if (count != live_roots || count != root_count_) {
    return fail(InvariantKind::ForestShape, "root list misses a root");
  }

  // Depth of each tree, measured in edges from the root down to its leaves.
  for (Index i = list_head_; i != kNil; i = nodes_[i].next) {
    std::uint32_t d = 0;
    Index a = i;
    while (nodes_[a].parent != kNil) {
      a = nodes_[a].parent;
      if (++d > n_nodes) return fail(InvariantKind::ForestShape, "parent chain has a cycle");
    }
    auto it = depth.find(a);
    if (it == depth.end()) return fail(InvariantKind::ForestShape, "leaf under an unlisted root");
    it->second = std::max(it->second, d);
  }
  for (const auto& [r, d] : depth) {
    if (d > nodes_[r].rank) {
      return fail(InvariantKind::DepthOverRank, "depth " + std::to_string(d) + " exceeds rank " +
                                                    std::to_string(nodes_[r].rank));
    }
  }
  return {};
}

}  // namespace tamon
