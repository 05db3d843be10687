#include "tamon/fuzz.hpp"

#include "tamon/naive_oracle.hpp"
#include "tamon/outer_monitor.hpp"

namespace tamon {
namespace {

std::uint64_t pick(std::mt19937_64& rng, std::uint64_t bound) { return rng() % bound; }

Rat random_quarter(std::mt19937_64& rng, std::int64_t max_num) {
  static constexpr std::int64_t kDens[] = {1, 2, 4};
  return Rat(1 + static_cast<std::int64_t>(pick(rng, static_cast<std::uint64_t>(max_num))),
             kDens[pick(rng, 3)]);
}

Guard random_atom(std::mt19937_64& rng, ClockId x, const std::vector<Rat>& pool) {
  Constant c = Constant::literal(pool[pick(rng, pool.size())]);
  switch (pick(rng, 5)) {
    case 0: return Guard::atom(x, Relation::Less, c);
    case 1: return Guard::atom(x, Relation::Greater, c);
    case 2: return Guard::atom(x, Relation::Equal, c);
    case 3:
      return Guard::either(Guard::atom(x, Relation::Less, c), Guard::atom(x, Relation::Equal, c));
    default:
      return Guard::either(Guard::atom(x, Relation::Greater, c), Guard::atom(x, Relation::Equal, c));
  }
}

Guard random_guard(std::mt19937_64& rng, ClockId x, const std::vector<Rat>& pool, int depth) {
  if (pool.empty() || pick(rng, 4) == 0) return Guard::always();
  if (depth == 0 || pick(rng, 2) == 0) return random_atom(rng, x, pool);
  Guard l = random_guard(rng, x, pool, depth - 1);
  Guard r = random_guard(rng, x, pool, depth - 1);
  return pick(rng, 2) ? Guard::both(l, r) : Guard::either(l, r);
}

StateSet random_subset(std::mt19937_64& rng, std::size_t n, bool nonempty) {
  StateSet s(rng() & ((std::uint64_t{1} << n) - 1));
  if (nonempty && s.empty()) s.insert(static_cast<StateId>(pick(rng, n)));
  return s;
}

}  // namespace

TimedAutomaton random_automaton(std::mt19937_64& rng, const FuzzLimits& limits) {
  TimedAutomaton aut;
  const std::size_t n_states = 1 + pick(rng, limits.max_states);
  const std::size_t n_letters = 1 + pick(rng, limits.max_letters);
  for (std::size_t i = 0; i < n_states; ++i) aut.add_state("s" + std::to_string(i));
  for (std::size_t i = 0; i < n_letters; ++i) aut.add_letter(std::string(1, static_cast<char>('a' + i)));
  ClockId x = aut.add_clock("x");

  std::vector<Rat> pool;
  const std::size_t n_constants = pick(rng, limits.max_constants + 1);
  for (std::size_t i = 0; i < n_constants; ++i) pool.push_back(random_quarter(rng, 12));

  random_subset(rng, n_states, true).for_each([&](StateId q) { aut.set_initial(q); });
  random_subset(rng, n_states, false).for_each([&](StateId q) { aut.set_final(q); });
  for (StateId q = 0; q < n_states; ++q) {
    for (LetterId a = 0; a < n_letters; ++a) {
      const std::size_t edges = pick(rng, 4);
      for (std::size_t e = 0; e < edges; ++e) {
        Transition t;
        t.source = q;
        t.letter = a;
        t.target = static_cast<StateId>(pick(rng, n_states));
        t.guard = random_guard(rng, x, pool, 2);
        if (pick(rng, 3) == 0) t.resets = {x};
        aut.add_transition(std::move(t));
      }
    }
  }
  return aut;
}

TimedAutomaton random_nfa(std::mt19937_64& rng, std::size_t max_states, std::size_t letters) {
  TimedAutomaton nfa;
  const std::size_t n_states = 1 + pick(rng, max_states);
  for (std::size_t i = 0; i < n_states; ++i) nfa.add_state("n" + std::to_string(i));
  for (std::size_t i = 0; i < letters; ++i) nfa.add_letter(std::string(1, static_cast<char>('a' + i)));
  random_subset(rng, n_states, true).for_each([&](StateId q) { nfa.set_initial(q); });
  random_subset(rng, n_states, true).for_each([&](StateId q) { nfa.set_final(q); });
  for (StateId q = 0; q < n_states; ++q) {
    for (LetterId a = 0; a < letters; ++a) {
      for (StateId r = 0; r < n_states; ++r) {
        if (pick(rng, 3) == 0) nfa.add_transition({q, a, Guard::always(), r, {}});
      }
    }
  }
  return nfa;
}

std::vector<StreamElement> random_stream(std::mt19937_64& rng, const TimedAutomaton& aut,
                                         std::size_t max_len) {
  const std::size_t len = pick(rng, max_len + 1);
  std::vector<StreamElement> out;
  out.reserve(len);
  for (std::size_t i = 0; i < len; ++i) {
    if (aut.letter_count() > 0 && pick(rng, 2) == 0) {
      out.push_back(StreamElement::letter(aut.alphabet()[pick(rng, aut.letter_count())]));
    } else {
      out.push_back(StreamElement::span(random_quarter(rng, 8)));
    }
  }
  return out;
}

std::optional<Divergence> compare_engines(const TimedAutomaton& aut, const Bindings& bindings,
                                          std::span<const StreamElement> stream) {
  OuterMonitor fast(aut, bindings);
  NaiveOracle naive(aut, bindings);
  auto check = [&]() -> std::optional<Divergence> {
    bool f = fast.accepted();
    bool s = naive.accepted();
    if (f != s) return Divergence{fast.step(), f, s};
    return std::nullopt;
  };
  if (auto d = check()) return d;
  for (const auto& e : stream) {
    fast.read(e);
    naive.read(e);
    if (auto d = check()) return d;
  }
  return std::nullopt;
}

}  // namespace tamon
