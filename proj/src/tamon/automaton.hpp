#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "tamon/rational.hpp"

namespace tamon {

using StateId = std::uint32_t;
using LetterId = std::uint32_t;
using ClockId = std::uint32_t;

/// Subset of control states as a bitmask. Automata with more than 64 states
/// cannot be represented; the fast monitor further limits itself to
/// `kMaxFastStates`.
class StateSet {
 public:
  static constexpr std::size_t kCapacity = 64;

  constexpr StateSet() noexcept = default;
  explicit constexpr StateSet(std::uint64_t bits) noexcept : bits_(bits) {}

  static constexpr StateSet single(StateId q) noexcept {
    return StateSet(std::uint64_t{1} << q);
  }

  constexpr std::uint64_t bits() const noexcept { return bits_; }
  constexpr bool empty() const noexcept { return bits_ == 0; }
  constexpr bool contains(StateId q) const noexcept { return (bits_ >> q) & 1U; }
  constexpr int size() const noexcept { return std::popcount(bits_); }
  constexpr bool intersects(StateSet o) const noexcept { return (bits_ & o.bits_) != 0; }

  constexpr StateSet& insert(StateId q) noexcept {
    bits_ |= std::uint64_t{1} << q;
    return *this;
  }
  constexpr StateSet& operator|=(StateSet o) noexcept {
    bits_ |= o.bits_;
    return *this;
  }
  friend constexpr StateSet operator|(StateSet a, StateSet b) noexcept {
    return StateSet(a.bits_ | b.bits_);
  }
  friend constexpr StateSet operator&(StateSet a, StateSet b) noexcept {
    return StateSet(a.bits_ & b.bits_);
  }
  friend constexpr bool operator==(StateSet a, StateSet b) noexcept = default;

  template <class F>
  void for_each(F&& f) const {
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
      f(static_cast<StateId>(std::countr_zero(b)));
    }
  }

 private:
  std::uint64_t bits_ = 0;
};

enum class Relation : std::uint8_t { Less, Greater, Equal };

const char* to_string(Relation rel);

/// A clock constant: either a literal rational or a named parameter that is
/// bound when a monitor is initialised.
class Constant {
 public:
  static Constant literal(Rat value) { return Constant(std::move(value)); }
  static Constant param(std::string name) { return Constant(std::move(name)); }

  bool is_param() const noexcept { return std::holds_alternative<std::string>(v_); }
  /// Throws `MalformedGuard` for an unbound parameter.
  const Rat& value() const;
  const std::string& name() const { return std::get<std::string>(v_); }
  std::string str() const;

  friend bool operator==(const Constant&, const Constant&) = default;

 private:
  explicit Constant(Rat v) : v_(std::move(v)) {}
  explicit Constant(std::string n) : v_(std::move(n)) {}

  std::variant<Rat, std::string> v_;
};

/// Clock condition tree: `true`, atoms `(sum of clocks) ~ c` and the binary
/// connectives. A plain atom `x ~ c` is a sum over a single clock.
/// Immutable; copies share structure.
class Guard {
 public:
  enum class Kind : std::uint8_t { True, Atom, And, Or };

  Guard();

  static Guard always() { return Guard(); }
  static Guard atom(ClockId clock, Relation rel, Constant c);
  static Guard sum_atom(std::vector<ClockId> clocks, Relation rel, Constant c);
  static Guard both(Guard lhs, Guard rhs);
  static Guard either(Guard lhs, Guard rhs);

  Kind kind() const noexcept;
  bool is_true() const noexcept { return kind() == Kind::True; }
  // Atom accessors.
  const std::vector<ClockId>& clocks() const;
  Relation relation() const;
  const Constant& constant() const;
  // Connective accessors.
  const Guard& lhs() const;
  const Guard& rhs() const;

  /// Number of atoms, counting `true` as zero.
  std::size_t atom_count() const;

  template <class F>
  void for_each_atom(F&& f) const {
    switch (kind()) {
      case Kind::True: return;
      case Kind::Atom: f(*this); return;
      case Kind::And:
      case Kind::Or:
        lhs().for_each_atom(f);
        rhs().for_each_atom(f);
        return;
    }
  }

  friend bool operator==(const Guard& a, const Guard& b);

 private:
  struct Node;
  explicit Guard(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// Truth value of `guard` under `valuation` (indexed by clock id). Throws
/// `MalformedGuard` if the guard mentions a clock outside the valuation or an
/// unbound parameter.
bool eval_condition(const Guard& guard, std::span<const Rat> valuation);

/// Negation, pushed down to atoms. `std::nullopt` stands for the unsatisfiable
/// condition, which the grammar cannot express.
std::optional<Guard> negate(const Guard& guard);

struct Transition {
  StateId source = 0;
  LetterId letter = 0;
  Guard guard;
  StateId target = 0;
  std::vector<ClockId> resets;

  bool resets_any() const noexcept { return !resets.empty(); }
  friend bool operator==(const Transition&, const Transition&) = default;
};

/// A configuration of a one-clock automaton: control state plus clock value.
struct ClockConfig {
  StateId state = 0;
  Rat clock;

  friend bool operator==(const ClockConfig&, const ClockConfig&) = default;
  friend auto operator<=>(const ClockConfig& a, const ClockConfig& b) {
    if (auto c = a.clock <=> b.clock; c != 0) return c;
    return a.state <=> b.state;
  }
};

using Bindings = std::map<std::string, Rat>;

/// Timed automaton (alphabet, states, clocks, initial/final sets, guarded
/// transitions with reset sets). Clock constants may be named parameters
/// declared with `add_param`.
class TimedAutomaton {
 public:
  StateId add_state(const std::string& name);
  LetterId add_letter(const std::string& token);
  ClockId add_clock(const std::string& name);
  void add_param(const std::string& name);
  void set_initial(StateId q, bool value = true);
  void set_final(StateId q, bool value = true);
  /// Validates ids and reset sets before appending.
  void add_transition(Transition t);

  std::size_t state_count() const noexcept { return states_.size(); }
  std::size_t letter_count() const noexcept { return alphabet_.size(); }
  std::size_t clock_count() const noexcept { return clocks_.size(); }
  bool single_clock() const noexcept { return clocks_.size() == 1; }

  const std::vector<std::string>& states() const noexcept { return states_; }
  const std::vector<std::string>& alphabet() const noexcept { return alphabet_; }
  const std::vector<std::string>& clocks() const noexcept { return clocks_; }
  const std::vector<std::string>& params() const noexcept { return params_; }
  const std::vector<Transition>& transitions() const noexcept { return transitions_; }

  bool is_initial(StateId q) const { return initial_.contains(q); }
  bool is_final(StateId q) const { return final_.contains(q); }
  StateSet initial() const noexcept { return initial_; }
  StateSet final_states() const noexcept { return final_; }

  std::optional<StateId> find_state(const std::string& name) const;
  std::optional<LetterId> find_letter(const std::string& token) const;
  std::optional<ClockId> find_clock(const std::string& name) const;
  bool has_param(const std::string& name) const;

  /// Throws `InvalidArgument` when a structural invariant is broken.
  void validate() const;

  /// |Q| + |X| + total number of guard atoms; constants' magnitudes do not count.
  std::size_t size() const;

  friend bool operator==(const TimedAutomaton& a, const TimedAutomaton& b);

 private:
  std::vector<std::string> states_;
  std::vector<std::string> alphabet_;
  std::vector<std::string> clocks_;
  std::vector<std::string> params_;
  StateSet initial_;
  StateSet final_;
  std::vector<Transition> transitions_;
  std::unordered_map<std::string, StateId> state_index_;
  std::unordered_map<std::string, LetterId> letter_index_;
  std::unordered_map<std::string, ClockId> clock_index_;
};

/// Replaces every named parameter by its bound value. Throws
/// `UnboundParameter` for a missing binding, `InvalidArgument` for a negative
/// value or a binding naming no declared parameter.
TimedAutomaton bind_parameters(const TimedAutomaton& aut, const Bindings& bindings);

/// Adds (at most) one non-final sink so that from every state, on every
/// letter, some non-resetting transition is enabled for every valuation. The
/// sink transition from (q, a) is guarded by the negation of the disjunction
/// of q's non-resetting guards on a. Returns the automaton unchanged when no
/// sink transition is needed; re-applying it is a no-op.
TimedAutomaton complete_with_sink(const TimedAutomaton& aut);

/// Sorted, deduplicated clock constants with 0 prepended if absent.
std::vector<Rat> collect_constants(const TimedAutomaton& aut, const Bindings& bindings);

}  // namespace tamon
