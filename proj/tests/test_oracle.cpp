// Naive configuration-set simulator.
#include <doctest.h>

#include <random>

#include "tamon/constructions.hpp"
#include "tamon/error.hpp"
#include "tamon/fuzz.hpp"
#include "tamon/naive_oracle.hpp"
#include "tamon/text_format.hpp"

using namespace tamon;

namespace {

Rat R(std::int64_t n, std::int64_t d = 1) { return Rat(n, d); }

const char* kBranch = R"(
alphabet a
clocks x
states p q r
initial p
final q
trans p a -> q
trans p a -> r reset x
)";

}  // namespace

TEST_CASE("oracle_init") {
  auto one = parse_automaton(kBranch);
  CHECK(oracle_init(one) == ConfigSet{{0, {R(0)}}});

  auto two = parse_automaton("alphabet a\nclocks x y\nstates p q\ninitial p q\n");
  CHECK(oracle_init(two) == ConfigSet{{0, {R(0), R(0)}}, {1, {R(0), R(0)}}});

  auto none = parse_automaton("alphabet a\nclocks x\nstates p\nfinal p\n");
  CHECK(oracle_init(none).empty());
  NaiveOracle o(none);
  CHECK_FALSE(o.accepted());
  o.read(StreamElement::letter("a"));
  CHECK_FALSE(o.accepted());
}

TEST_CASE("oracle_read") {
  auto aut = parse_automaton(kBranch);
  ConfigSet k{{0, {R(2)}}};
  CHECK(oracle_read(aut, k, StreamElement::span(R(3))) == ConfigSet{{0, {R(5)}}});
  CHECK(oracle_read(aut, k, StreamElement::letter("a")) == ConfigSet{{1, {R(2)}}, {2, {R(0)}}});
  CHECK_THROWS_AS(oracle_read(aut, k, StreamElement::letter("b")), Error);

  SUBCASE("guards and deduplication") {
    auto g = parse_automaton(R"(
alphabet a
clocks x
states p q
initial p
trans p a [x < 1] -> q
trans p a [x = 1 | x > 1] -> q reset x
trans p a [x > 0] -> q reset x
)");
    ConfigSet half{{0, {R(1, 2)}}};
    CHECK(oracle_read(g, half, StreamElement::letter("a")) == ConfigSet{{1, {R(1, 2)}}, {1, {R(0)}}});
    ConfigSet two{{0, {R(2)}}};
    // Two transitions reach (q, 0); one copy is kept.
    CHECK(oracle_read(g, two, StreamElement::letter("a")) == ConfigSet{{1, {R(0)}}});
  }
}

TEST_CASE("oracle_accepted") {
  StateSet f = StateSet::single(1);
  CHECK_FALSE(oracle_accepted({{0, {R(1)}}}, f));
  CHECK(oracle_accepted({{1, {R(1)}}}, f));
  CHECK_FALSE(oracle_accepted({}, f));
}

TEST_CASE("parameters are bound at construction") {
  auto aut = parse_automaton(R"(
alphabet a
clocks x
states p q
param C
initial p
final q
trans p a [x = C] -> q
)");
  CHECK_THROWS_AS(NaiveOracle{aut}, Error);
  NaiveOracle o(aut, {{"C", R(3, 2)}});
  o.read(StreamElement::span(R(3, 2)));
  o.read(StreamElement::letter("a"));
  CHECK(o.accepted());
  CHECK(o.step() == 2);
}

TEST_CASE("additive guards on the 3SUM instance") {
  auto inst = threesum_instance({R(1), R(2), R(3)});
  NaiveOracle o(inst.automaton);
  for (const auto& e : inst.word) o.read(e);
  CHECK(o.accepted());
  CHECK(threesum_brute(inst.set));
}

TEST_CASE("span composition") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    auto aut = random_automaton(rng);
    auto stream = random_stream(rng, aut, 40);
    ConfigSet k = oracle_init(aut);
    for (const auto& e : stream) k = oracle_read(aut, k, e);
    Rat r1(static_cast<std::int64_t>(rng() % 9 + 1), static_cast<std::int64_t>(rng() % 4 + 1));
    Rat r2(static_cast<std::int64_t>(rng() % 9 + 1), static_cast<std::int64_t>(rng() % 4 + 1));
    auto split = oracle_read(aut, oracle_read(aut, k, StreamElement::span(r1)), StreamElement::span(r2));
    auto joined = oracle_read(aut, k, StreamElement::span(r1 + r2));
    CHECK(split == joined);
  }
}

TEST_CASE("one clock: at most n+1 distinct clock values") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 200; ++i) {
    auto aut = random_automaton(rng);
    auto stream = random_stream(rng, aut, 100);
    NaiveOracle o(aut);
    std::size_t n = 0;
    for (const auto& e : stream) {
      o.read(e);
      ++n;
      std::set<Rat> values;
      for (const auto& c : o.configurations()) values.insert(c.valuation[0]);
      CHECK(values.size() <= n + 1);
    }
  }
}
