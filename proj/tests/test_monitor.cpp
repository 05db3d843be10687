// Outer monitor against the naive oracle and hand-checked traces.
#include <doctest.h>

#include <random>

#include "tamon/constructions.hpp"
#include "tamon/error.hpp"
#include "tamon/fuzz.hpp"
#include "tamon/outer_monitor.hpp"
#include "tamon/text_format.hpp"
#include "test_support.hpp"

using namespace tamon;
using tamon::testing::flatten;

namespace {

Rat R(std::int64_t n, std::int64_t d = 1) { return Rat(n, d); }

const char* kAbStarA = R"(
alphabet a b
states s0 s1 s2
initial s0
final s2
trans s0 a -> s1
trans s1 b -> s1
trans s1 a -> s2
)";

TimedAutomaton window_ab_star_a() {
  return sliding_window(parse_automaton(kAbStarA), Constant::param("C"));
}

std::vector<bool> verdicts(const std::vector<Verdict>& vs) {
  std::vector<bool> out;
  for (const auto& v : vs) out.push_back(v.accepted);
  return out;
}

}  // namespace

TEST_CASE("init") {
  SUBCASE("initial state that is final accepts the empty word") {
    auto aut = parse_automaton("alphabet a\nclocks x\nstates p\ninitial p\nfinal p\n");
    OuterMonitor m(aut);
    CHECK(m.accepted());
    CHECK(m.step() == 0);
  }
  SUBCASE("window automaton partition") {
    OuterMonitor m(window_ab_star_a(), {{"C", R(3)}});
    REQUIRE(m.inner_count() == 4);
    CHECK(m.inner(0).interval() == Interval::point(R(0)));
    CHECK(m.inner(1).interval() == Interval::open(R(0), R(3)));
    CHECK(m.inner(2).interval() == Interval::point(R(3)));
    CHECK(m.inner(3).interval() == Interval::unbounded(R(3)));
    CHECK_FALSE(m.accepted());
  }
  SUBCASE("errors") {
    auto two = parse_automaton("alphabet a\nclocks x y\nstates p\ninitial p\n");
    CHECK_THROWS_AS(OuterMonitor{two}, Error);
    try {
      OuterMonitor m(two);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Unsupported);
    }
    try {
      OuterMonitor m(window_ab_star_a());
      FAIL("expected an unbound-parameter error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::UnboundParameter);
    }
    auto sum = parse_automaton("alphabet a\nclocks x\nstates p\ninitial p\ntrans p a [x+x=2] -> p\n");
    CHECK_THROWS_AS(OuterMonitor{sum}, Error);
  }
  SUBCASE("clock-free automata run with a single point interval") {
    OuterMonitor m(parse_automaton(kAbStarA));
    CHECK(m.inner_count() == 2);
    for (const char* tok : {"a", "+1", "b", "a"}) m.read(parse_stream_token(tok));
    CHECK(m.accepted());
    m.read_letter("b");
    CHECK_FALSE(m.accepted());
  }
}

TEST_CASE("sliding window examples") {
  auto aut = window_ab_star_a();
  OuterMonitor accept(aut, {{"C", R(3)}}, true);
  auto trace = run_stream(accept, parse_stream("+1 a +1 b +1 a"));
  CHECK(trace.back() == Verdict{6, true});
  CHECK(verdicts(trace) == std::vector<bool>{false, false, false, false, false, false, true});

  OuterMonitor reject(aut, {{"C", R(3)}}, true);
  CHECK_FALSE(run_stream(reject, parse_stream("+1 a +1 b +1 b")).back().accepted);
}

TEST_CASE("read") {
  SUBCASE("letters never move clock values") {
    auto aut = parse_automaton(R"(
alphabet a
clocks x
states p
initial p
trans p a [x < 4] -> p
trans p a -> p reset x
)");
    OuterMonitor m(aut, {}, true);
    m.read_span(R(3, 2));
    auto before = m.configurations();
    m.read_letter("a");
    auto after = m.configurations();
    // Only the value 0 can be new.
    for (const auto& c : after) {
      if (!c.clock.is_zero()) CHECK(std::find(before.begin(), before.end(), c) != before.end());
    }
    CHECK(after.front().clock.is_zero());
  }
  SUBCASE("evictions cross several intervals in order") {
    auto aut = parse_automaton(R"(
alphabet a
clocks x
states p
initial p
trans p a [x < 4] -> p
trans p a -> p reset x
)");
    OuterMonitor m(aut, {}, true);
    m.read_span(R(3, 2));
    m.read_letter("a");  // values 0 and 3/2
    m.read_span(R(2));   // values 2 and 7/2, both in (0,4)
    CHECK(m.inner(1).configurations() ==
          std::vector<ClockConfig>{{0, R(2)}, {0, R(7, 2)}});
    auto migrations = m.counters().migrations;
    m.read_span(R(3));
    CHECK(m.inner(1).empty());
    CHECK(m.inner(3).configurations() ==
          std::vector<ClockConfig>{{0, R(5)}, {0, R(13, 2)}});
    CHECK(m.counters().migrations - migrations == 2);
    CHECK(m.check_invariants().ok());
  }
  SUBCASE("errors") {
    OuterMonitor m(window_ab_star_a(), {{"C", R(3)}});
    CHECK_THROWS_AS(m.read_letter("z"), Error);
    CHECK_THROWS_AS(m.read_span(R(0)), Error);
    CHECK_THROWS_AS(m.read_span(R(-1)), Error);
    CHECK(m.step() == 0);
  }
  SUBCASE("every element is one step") {
    OuterMonitor m(window_ab_star_a(), {{"C", R(3)}});
    run_stream(m, parse_stream("+1 a +1/2 +1/2 b"));
    CHECK(m.step() == 5);
  }
}

TEST_CASE("run_stream") {
  OuterMonitor empty(window_ab_star_a(), {{"C", R(3)}});
  auto v = run_stream(empty, {});
  CHECK(v == std::vector<Verdict>{{0, false}});
  CHECK(format_verdict({6, true}) == "6 accept");
  CHECK(format_verdict({0, false}) == "0 reject");

  std::vector<std::uint64_t> ks{3, 5};
  auto frob = frobenius_automaton(ks);
  std::vector<std::string> letters(8, "a");
  OuterMonitor m8(frob);
  CHECK(run_stream(m8, encode_discrete(letters)).back().accepted);
  letters.pop_back();
  OuterMonitor m7(frob);
  CHECK_FALSE(run_stream(m7, encode_discrete(letters)).back().accepted);
}

TEST_CASE("stored configurations equal the oracle's after every read") {
  std::mt19937_64 rng(7);
  int cases = 0;
  std::size_t reads = 0;
  for (; cases < 300; ++cases) {
    auto aut = random_automaton(rng);
    auto stream = random_stream(rng, aut, 120);
    OuterMonitor fast(aut, {}, true);
    // The oracle runs the completed automaton, so its sink configurations match too.
    NaiveOracle naive(fast.automaton());
    const auto& part = fast.partition();
    for (const auto& e : stream) {
      fast.read(e);
      naive.read(e);
      ++reads;
      INFO("case ", cases, " step ", fast.step());
      REQUIRE(fast.configurations() == flatten(naive.configurations()));
      REQUIRE(fast.accepted() == naive.accepted());
      for (std::size_t i = 0; i < fast.inner_count(); ++i) {
        for (const auto& c : fast.inner(i).configurations()) {
          REQUIRE(interval_index(part, c.clock) == i);
        }
      }
      auto report = fast.check_invariants();
      INFO(report.detail);
      REQUIRE(report.ok());
    }
  }
  CHECK(reads > 10000);
}

TEST_CASE("counters") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    auto aut = random_automaton(rng);
    auto stream = random_stream(rng, aut, 200);
    OuterMonitor m(aut);
    OpCounters prev;
    std::uint64_t values_appeared = 1;
    for (const auto& e : stream) {
      m.read(e);
      if (e.is_letter()) ++values_appeared;
      auto c = m.counters();
      // Monotone.
      CHECK(c.node_inserts >= prev.node_inserts);
      CHECK(c.node_removals >= prev.node_removals);
      CHECK(c.migrations >= prev.migrations);
      CHECK(c.evictions >= prev.evictions);
      prev = c;
    }
    auto c = m.counters();
    CHECK(c.node_removals <= c.node_inserts);
    // Every evicted configuration is re-inserted elsewhere.
    CHECK(c.migrations == c.evictions);
    // Each clock value changes interval at most 2k+1 times, once per state.
    const std::uint64_t k = m.partition().size();
    CHECK(c.migrations <= k * values_appeared * m.automaton().state_count());
  }
}

TEST_CASE("scaling constants and spans leaves traces unchanged") {
  std::mt19937_64 rng(5);
  const Rat factor(1000000);
  for (int i = 0; i < 100; ++i) {
    auto aut = random_automaton(rng);
    auto stream = random_stream(rng, aut, 200);
    OuterMonitor a(aut);
    OuterMonitor b(testing::scale_constants(aut, factor));
    auto sb = testing::scale_stream(stream, factor);
    for (std::size_t j = 0; j < stream.size(); ++j) {
      a.read(stream[j]);
      b.read(sb[j]);
      REQUIRE(a.accepted() == b.accepted());
      REQUIRE(a.counters() == b.counters());
    }
  }
  SUBCASE("through a parameter binding") {
    auto aut = window_ab_star_a();
    OuterMonitor a(aut, {{"C", R(3)}});
    OuterMonitor b(aut, {{"C", R(3000000)}});
    CHECK(a.inner_count() == b.inner_count());
    auto s = parse_stream("+1 a +1 b +1 a +1 b +1 b +1 a");
    auto sb = testing::scale_stream(s, factor);
    for (std::size_t j = 0; j < s.size(); ++j) {
      a.read(s[j]);
      b.read(sb[j]);
      CHECK(a.accepted() == b.accepted());
      CHECK(a.counters() == b.counters());
    }
  }
}
