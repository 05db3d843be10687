#include "tamon/outer_monitor.hpp"

#include <bit>

#include "tamon/error.hpp"

namespace tamon {
namespace {

TimedAutomaton prepare(const TimedAutomaton& aut, const Bindings& bindings) {
  if (aut.clock_count() > 1) {
    throw Error(ErrorKind::Unsupported,
                "the fast monitor handles at most one clock; use the naive engine");
  }
  for (const auto& t : aut.transitions()) {
    t.guard.for_each_atom([](const Guard& a) {
      if (a.clocks().size() != 1) {
        throw Error(ErrorKind::Unsupported, "the fast monitor does not support additive atoms");
      }
    });
  }
  TimedAutomaton done = complete_with_sink(bind_parameters(aut, bindings));
  if (done.state_count() > OuterMonitor::kMaxStates) {
    throw Error(ErrorKind::Unsupported,
                "the fast monitor handles at most " + std::to_string(OuterMonitor::kMaxStates) +
                    " states including the sink");
  }
  return done;
}

}  // namespace

OuterMonitor::OuterMonitor(const TimedAutomaton& aut, const Bindings& bindings,
                           bool check_promises)
    : aut_(prepare(aut, bindings)), partition_(collect_constants(aut_, {})) {
  inners_.reserve(partition_.size());
  for (const auto& j : partition_.intervals()) {
    inners_.emplace_back(j, aut_.state_count(), check_promises);
  }
  evicted_.resize(partition_.size());
  build_tables();
  aut_.initial().for_each([&](StateId q) { inners_[0].insert(q, Rat(0)); });
}

void OuterMonitor::build_tables() {
  const std::size_t n_states = aut_.state_count();
  const std::size_t subsets = std::size_t{1} << n_states;
  const std::size_t n_letters = aut_.letter_count();
  tables_.resize(partition_.size() * n_letters);

  std::vector<StateSet> keep_of(n_states);
  std::vector<StateSet> reset_of(n_states);
  for (std::size_t i = 0; i < partition_.size(); ++i) {
    // Guards are constant on each interval, so one sample point decides them.
    const Rat sample[] = {partition_[i].representative()};
    for (LetterId a = 0; a < n_letters; ++a) {
      std::fill(keep_of.begin(), keep_of.end(), StateSet{});
      std::fill(reset_of.begin(), reset_of.end(), StateSet{});
      for (const auto& t : aut_.transitions()) {
        if (t.letter != a) continue;
        if (!t.guard.is_true() && !eval_condition(t.guard, sample)) continue;
        (t.resets_any() ? reset_of : keep_of)[t.source].insert(t.target);
      }
      LetterTable& tab = tables_[i * n_letters + a];
      tab.keep.assign(subsets, StateSet{});
      tab.reset.assign(subsets, StateSet{});
      for (std::size_t x = 1; x < subsets; ++x) {
        std::size_t low = static_cast<std::size_t>(std::countr_zero(x));
        tab.keep[x] = tab.keep[x & (x - 1)] | keep_of[low];
        tab.reset[x] = tab.reset[x & (x - 1)] | reset_of[low];
      }
    }
  }
}

void OuterMonitor::read(const StreamElement& e) {
  if (e.is_span()) read_span(e.span());
  else read_letter(e.letter());
}

void OuterMonitor::read_letter(const std::string& token) {
  auto a = aut_.find_letter(token);
  if (!a) throw Error(ErrorKind::UnknownLetter, "letter '" + token + "' is not in the alphabet");
  read_letter(*a);
}

void OuterMonitor::read_letter(LetterId a) {
  if (a >= aut_.letter_count()) {
    throw Error(ErrorKind::UnknownLetter, "letter id " + std::to_string(a) + " out of range");
  }
  StateSet reset;
  for (std::size_t i = 0; i < inners_.size(); ++i) {
    reset |= inners_[i].update_letter(table(i, a));
  }
  reset.for_each([&](StateId q) { inners_[0].insert(q, Rat(0)); });
  ++step_;
}

void OuterMonitor::read_span(const Rat& r) {
  if (!r.is_positive()) {
    throw Error(ErrorKind::InvalidArgument, "time spans must be strictly positive");
  }
  for (std::size_t i = 0; i < inners_.size(); ++i) {
    evicted_[i].clear();
    inners_[i].update_time(r, evicted_[i]);
  }
  // Highest interval first and largest value first within each batch, so
  // every insert receives a value no larger than what its target holds.
  for (std::size_t i = inners_.size(); i-- > 0;) {
    const auto& batch = evicted_[i];
    for (auto it = batch.rbegin(); it != batch.rend(); ++it) {
      std::size_t j = i + 1;
      while (!partition_[j].contains(it->clock)) ++j;
      inners_[j].insert(it->state, it->clock);
      ++migrations_;
    }
  }
  ++step_;
}

bool OuterMonitor::accepted() const {
  const StateSet fin = aut_.final_states();
  for (const auto& d : inners_) {
    if (d.accepted(fin)) return true;
  }
  return false;
}

OpCounters OuterMonitor::counters() const {
  OpCounters sum;
  for (const auto& d : inners_) sum += d.counters();
  sum.migrations += migrations_;
  return sum;
}

std::vector<ClockConfig> OuterMonitor::configurations() const {
  std::vector<ClockConfig> out;
  for (const auto& d : inners_) {
    auto part = d.configurations();
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

InvariantReport OuterMonitor::check_invariants() const {
  for (std::size_t i = 0; i < inners_.size(); ++i) {
    InvariantReport r = inners_[i].check_invariants();
    if (!r.ok()) {
      r.detail = "interval " + std::to_string(i) + ": " + r.detail;
      return r;
    }
  }
  return {};
}

std::vector<Verdict> run_stream(OuterMonitor& monitor, std::span<const StreamElement> elements) {
  std::vector<Verdict> out;
  out.reserve(elements.size() + 1);
  out.push_back({monitor.step(), monitor.accepted()});
  for (const auto& e : elements) {
    monitor.read(e);
    out.push_back({monitor.step(), monitor.accepted()});
  }
  return out;
}

std::string format_verdict(const Verdict& v) {
  return std::to_string(v.step) + (v.accepted ? " accept" : " reject");
}

}  // namespace tamon
