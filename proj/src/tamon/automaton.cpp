#include "tamon/automaton.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "tamon/error.hpp"

namespace tamon {

const char* to_string(Relation rel) {
  switch (rel) {
    case Relation::Less: return "<";
    case Relation::Greater: return ">";
    case Relation::Equal: return "=";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Constant

const Rat& Constant::value() const {
  if (const auto* r = std::get_if<Rat>(&v_)) return *r;
  throw Error(ErrorKind::MalformedGuard,
              "parameter '" + std::get<std::string>(v_) + "' is not bound");
}

std::string Constant::str() const {
  if (const auto* r = std::get_if<Rat>(&v_)) return r->str();
  return std::get<std::string>(v_);
}

// ---------------------------------------------------------------------------
// Guard

struct Guard::Node {
  Kind kind = Kind::True;
  std::vector<ClockId> clocks;
  Relation rel = Relation::Equal;
  std::optional<Constant> constant;
  std::optional<Guard> lhs;
  std::optional<Guard> rhs;
};

Guard::Guard() : node_(nullptr) {}

Guard Guard::atom(ClockId clock, Relation rel, Constant c) {
  return sum_atom({clock}, rel, std::move(c));
}

Guard Guard::sum_atom(std::vector<ClockId> clocks, Relation rel, Constant c) {
  if (clocks.empty()) {
    throw Error(ErrorKind::MalformedGuard, "atom over an empty clock sum");
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::Atom;
  n->clocks = std::move(clocks);
  n->rel = rel;
  n->constant = std::move(c);
  return Guard(std::move(n));
}

Guard Guard::both(Guard lhs, Guard rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::And;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return Guard(std::move(n));
}

Guard Guard::either(Guard lhs, Guard rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Or;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return Guard(std::move(n));
}

// A null node is `true`.
Guard::Kind Guard::kind() const noexcept { return node_ ? node_->kind : Kind::True; }

const std::vector<ClockId>& Guard::clocks() const { return node_->clocks; }
Relation Guard::relation() const { return node_->rel; }
const Constant& Guard::constant() const { return *node_->constant; }
const Guard& Guard::lhs() const { return *node_->lhs; }
const Guard& Guard::rhs() const { return *node_->rhs; }

std::size_t Guard::atom_count() const {
  std::size_t n = 0;
  for_each_atom([&](const Guard&) { ++n; });
  return n;
}

bool operator==(const Guard& a, const Guard& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Guard::Kind::True: return true;
    case Guard::Kind::Atom:
      return a.clocks() == b.clocks() && a.relation() == b.relation() &&
             a.constant() == b.constant();
    case Guard::Kind::And:
    case Guard::Kind::Or:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
  return false;
}

bool eval_condition(const Guard& guard, std::span<const Rat> valuation) {
  switch (guard.kind()) {
    case Guard::Kind::True: return true;
    case Guard::Kind::Atom: {
      Rat sum;
      for (ClockId x : guard.clocks()) {
        if (x >= valuation.size()) {
          throw Error(ErrorKind::MalformedGuard,
                      "guard mentions clock #" + std::to_string(x) +
                          " which the valuation does not bind");
        }
        sum += valuation[x];
      }
      const Rat& c = guard.constant().value();
      switch (guard.relation()) {
        case Relation::Less: return sum < c;
        case Relation::Greater: return sum > c;
        case Relation::Equal: return sum == c;
      }
      return false;
    }
    case Guard::Kind::And:
      return eval_condition(guard.lhs(), valuation) &&
             eval_condition(guard.rhs(), valuation);
    case Guard::Kind::Or:
      return eval_condition(guard.lhs(), valuation) ||
             eval_condition(guard.rhs(), valuation);
  }
  return false;
}

std::optional<Guard> negate(const Guard& guard) {
  switch (guard.kind()) {
    case Guard::Kind::True: return std::nullopt;
    case Guard::Kind::Atom: {
      const auto& z = guard.clocks();
      const auto& c = guard.constant();
      auto at = [&](Relation r) { return Guard::sum_atom(z, r, c); };
      switch (guard.relation()) {
        case Relation::Less: return Guard::either(at(Relation::Greater), at(Relation::Equal));
        case Relation::Greater: return Guard::either(at(Relation::Less), at(Relation::Equal));
        case Relation::Equal: return Guard::either(at(Relation::Less), at(Relation::Greater));
      }
      return std::nullopt;
    }
    case Guard::Kind::And: {
      // not(a & b) = not a | not b; false | g = g
      auto l = negate(guard.lhs());
      auto r = negate(guard.rhs());
      if (!l) return r;
      if (!r) return l;
      return Guard::either(*l, *r);
    }
    case Guard::Kind::Or: {
      // not(a | b) = not a & not b; false & g = false
      auto l = negate(guard.lhs());
      auto r = negate(guard.rhs());
      if (!l || !r) return std::nullopt;
      return Guard::both(*l, *r);
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// TimedAutomaton

StateId TimedAutomaton::add_state(const std::string& name) {
  if (state_index_.count(name)) {
    throw Error(ErrorKind::InvalidArgument, "duplicate state '" + name + "'");
  }
  if (states_.size() >= StateSet::kCapacity) {
    throw Error(ErrorKind::Unsupported, "more than 64 states");
  }
  auto id = static_cast<StateId>(states_.size());
  states_.push_back(name);
  state_index_.emplace(name, id);
  return id;
}

LetterId TimedAutomaton::add_letter(const std::string& token) {
  if (token.empty() ||
      std::any_of(token.begin(), token.end(), [](unsigned char ch) { return std::isspace(ch); })) {
    throw Error(ErrorKind::InvalidArgument, "letters must be non-empty and whitespace-free");
  }
  if (token[0] == '+' || token[0] == '#') {
    throw Error(ErrorKind::InvalidArgument,
                "letter '" + token + "' would be confused with a time span or comment");
  }
  if (letter_index_.count(token)) {
    throw Error(ErrorKind::InvalidArgument, "duplicate letter '" + token + "'");
  }
  auto id = static_cast<LetterId>(alphabet_.size());
  alphabet_.push_back(token);
  letter_index_.emplace(token, id);
  return id;
}

ClockId TimedAutomaton::add_clock(const std::string& name) {
  if (clock_index_.count(name)) {
    throw Error(ErrorKind::InvalidArgument, "duplicate clock '" + name + "'");
  }
  auto id = static_cast<ClockId>(clocks_.size());
  clocks_.push_back(name);
  clock_index_.emplace(name, id);
  return id;
}

void TimedAutomaton::add_param(const std::string& name) {
  if (has_param(name)) {
    throw Error(ErrorKind::InvalidArgument, "duplicate parameter '" + name + "'");
  }
  params_.push_back(name);
}

void TimedAutomaton::set_initial(StateId q, bool value) {
  if (q >= states_.size()) throw Error(ErrorKind::InvalidArgument, "no such state");
  StateSet bit = StateSet::single(q);
  initial_ = value ? (initial_ | bit) : StateSet(initial_.bits() & ~bit.bits());
}

void TimedAutomaton::set_final(StateId q, bool value) {
  if (q >= states_.size()) throw Error(ErrorKind::InvalidArgument, "no such state");
  StateSet bit = StateSet::single(q);
  final_ = value ? (final_ | bit) : StateSet(final_.bits() & ~bit.bits());
}

void TimedAutomaton::add_transition(Transition t) {
  if (t.source >= states_.size() || t.target >= states_.size()) {
    throw Error(ErrorKind::InvalidArgument, "transition refers to an unknown state");
  }
  if (t.letter >= alphabet_.size()) {
    throw Error(ErrorKind::InvalidArgument, "transition refers to an unknown letter");
  }
  for (ClockId x : t.resets) {
    if (x >= clocks_.size()) {
      throw Error(ErrorKind::InvalidArgument, "transition resets an unknown clock");
    }
  }
  std::sort(t.resets.begin(), t.resets.end());
  t.resets.erase(std::unique(t.resets.begin(), t.resets.end()), t.resets.end());
  std::string problem;
  t.guard.for_each_atom([&](const Guard& a) {
    for (ClockId x : a.clocks()) {
      if (x >= clocks_.size()) problem = "guard mentions an unknown clock";
    }
    const Constant& c = a.constant();
    if (c.is_param()) {
      if (!has_param(c.name())) problem = "guard mentions undeclared parameter '" + c.name() + "'";
    } else if (c.value().is_negative()) {
      problem = "negative clock constant";
    }
  });
  if (!problem.empty()) throw Error(ErrorKind::MalformedGuard, problem);
  transitions_.push_back(std::move(t));
}

std::optional<StateId> TimedAutomaton::find_state(const std::string& name) const {
  auto it = state_index_.find(name);
  if (it == state_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<LetterId> TimedAutomaton::find_letter(const std::string& token) const {
  auto it = letter_index_.find(token);
  if (it == letter_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<ClockId> TimedAutomaton::find_clock(const std::string& name) const {
  auto it = clock_index_.find(name);
  if (it == clock_index_.end()) return std::nullopt;
  return it->second;
}

bool TimedAutomaton::has_param(const std::string& name) const {
  return std::find(params_.begin(), params_.end(), name) != params_.end();
}

void TimedAutomaton::validate() const {
  std::uint64_t all = states_.size() == 64 ? ~std::uint64_t{0}
                                           : (std::uint64_t{1} << states_.size()) - 1;
  if ((initial_.bits() & ~all) || (final_.bits() & ~all)) {
    throw Error(ErrorKind::InvalidArgument, "initial/final set outside Q");
  }
  for (const auto& t : transitions_) {
    if (t.source >= states_.size() || t.target >= states_.size() ||
        t.letter >= alphabet_.size()) {
      throw Error(ErrorKind::InvalidArgument, "ill-formed transition");
    }
  }
}

std::size_t TimedAutomaton::size() const {
  std::size_t n = states_.size() + clocks_.size();
  for (const auto& t : transitions_) n += t.guard.atom_count();
  return n;
}

bool operator==(const TimedAutomaton& a, const TimedAutomaton& b) {
  return a.states_ == b.states_ && a.alphabet_ == b.alphabet_ && a.clocks_ == b.clocks_ &&
         a.params_ == b.params_ && a.initial_ == b.initial_ && a.final_ == b.final_ &&
         a.transitions_ == b.transitions_;
}

// ---------------------------------------------------------------------------
// Operations

namespace {

Guard bind_guard(const Guard& g, const Bindings& bindings) {
  switch (g.kind()) {
    case Guard::Kind::True: return g;
    case Guard::Kind::Atom: {
      if (!g.constant().is_param()) return g;
      auto it = bindings.find(g.constant().name());
      if (it == bindings.end()) {
        throw Error(ErrorKind::UnboundParameter,
                    "parameter '" + g.constant().name() + "' is not bound");
      }
      return Guard::sum_atom(g.clocks(), g.relation(), Constant::literal(it->second));
    }
    case Guard::Kind::And:
      return Guard::both(bind_guard(g.lhs(), bindings), bind_guard(g.rhs(), bindings));
    case Guard::Kind::Or:
      return Guard::either(bind_guard(g.lhs(), bindings), bind_guard(g.rhs(), bindings));
  }
  return g;
}

void check_bindings(const TimedAutomaton& aut, const Bindings& bindings) {
  for (const auto& [name, value] : bindings) {
    if (!aut.has_param(name)) {
      throw Error(ErrorKind::InvalidArgument, "binding for undeclared parameter '" + name + "'");
    }
    if (value.is_negative()) {
      throw Error(ErrorKind::InvalidArgument, "parameter '" + name + "' bound to a negative value");
    }
  }
  for (const auto& p : aut.params()) {
    if (!bindings.count(p)) {
      throw Error(ErrorKind::UnboundParameter, "parameter '" + p + "' is not bound");
    }
  }
}

// A sink: not initial, not final, a `true` non-resetting self-loop on every
// letter and no other outgoing transitions.
std::optional<StateId> find_sink(const TimedAutomaton& aut) {
  for (StateId s = 0; s < aut.state_count(); ++s) {
    if (aut.is_initial(s) || aut.is_final(s)) continue;
    std::vector<bool> looped(aut.letter_count(), false);
    bool other = false;
    for (const auto& t : aut.transitions()) {
      if (t.source != s) continue;
      if (t.target == s && t.guard.is_true() && t.resets.empty()) {
        looped[t.letter] = true;
      } else {
        other = true;
      }
    }
    if (!other && std::all_of(looped.begin(), looped.end(), [](bool b) { return b; })) {
      return s;
    }
  }
  return std::nullopt;
}

}  // namespace

TimedAutomaton bind_parameters(const TimedAutomaton& aut, const Bindings& bindings) {
  check_bindings(aut, bindings);
  TimedAutomaton out;
  for (const auto& s : aut.states()) out.add_state(s);
  for (const auto& a : aut.alphabet()) out.add_letter(a);
  for (const auto& x : aut.clocks()) out.add_clock(x);
  for (StateId q = 0; q < aut.state_count(); ++q) {
    out.set_initial(q, aut.is_initial(q));
    out.set_final(q, aut.is_final(q));
  }
  for (const auto& t : aut.transitions()) {
    Transition b = t;
    b.guard = bind_guard(t.guard, bindings);
    out.add_transition(std::move(b));
  }
  return out;
}

TimedAutomaton complete_with_sink(const TimedAutomaton& aut) {
  std::optional<StateId> sink = find_sink(aut);

  struct Missing {
    StateId source;
    LetterId letter;
    Guard guard;
  };
  std::vector<Missing> missing;
  for (StateId q = 0; q < aut.state_count(); ++q) {
    if (sink && q == *sink) continue;
    for (LetterId a = 0; a < aut.letter_count(); ++a) {
      std::optional<Guard> covered;  // disjunction of non-resetting guards
      bool has_any = false;
      for (const auto& t : aut.transitions()) {
        if (t.source != q || t.letter != a || t.resets_any()) continue;
        if (sink && t.target == *sink) continue;
        covered = has_any ? Guard::either(*covered, t.guard) : t.guard;
        has_any = true;
      }
      std::optional<Guard> uncovered = has_any ? negate(*covered) : Guard::always();
      if (!uncovered) continue;
      if (sink) {
        bool present = std::any_of(
            aut.transitions().begin(), aut.transitions().end(), [&](const Transition& t) {
              return t.source == q && t.letter == a && t.target == *sink && t.resets.empty() &&
                     (t.guard.is_true() || t.guard == *uncovered);
            });
        if (present) continue;
      }
      missing.push_back({q, a, *uncovered});
    }
  }
  if (missing.empty()) return aut;

  TimedAutomaton out = aut;
  if (!sink) {
    std::string name = "sink";
    for (int i = 1; out.find_state(name); ++i) name = "sink" + std::to_string(i);
    sink = out.add_state(name);
    for (LetterId a = 0; a < out.letter_count(); ++a) {
      out.add_transition({*sink, a, Guard::always(), *sink, {}});
    }
  }
  for (auto& m : missing) {
    out.add_transition({m.source, m.letter, std::move(m.guard), *sink, {}});
  }
  return out;
}

std::vector<Rat> collect_constants(const TimedAutomaton& aut, const Bindings& bindings) {
  check_bindings(aut, bindings);
  std::set<Rat> values{Rat(0)};
  for (const auto& t : aut.transitions()) {
    t.guard.for_each_atom([&](const Guard& a) {
      const Constant& c = a.constant();
      Rat v = c.is_param() ? bindings.at(c.name()) : c.value();
      if (v.is_negative()) throw Error(ErrorKind::InvalidArgument, "negative clock constant");
      values.insert(v);
    });
  }
  return {values.begin(), values.end()};
}

}  // namespace tamon
