// Generators for the worked examples, each against its own oracle.
#include <doctest.h>

#include <random>

#include "tamon/constructions.hpp"
#include "tamon/error.hpp"
#include "tamon/fuzz.hpp"
#include "tamon/naive_oracle.hpp"
#include "tamon/outer_monitor.hpp"
#include "tamon/text_format.hpp"

using namespace tamon;

namespace {

Rat R(std::int64_t n, std::int64_t d = 1) { return Rat(n, d); }

std::vector<std::string> split_letters(const std::string& w) {
  std::vector<std::string> out;
  for (char c : w) out.emplace_back(1, c);
  return out;
}

const char* kAbStarA = R"(
alphabet a b
states s0 s1 s2
initial s0
final s2
trans s0 a -> s1
trans s1 b -> s1
trans s1 a -> s2
)";

// Direct membership of the last `c` letters, false while fewer have been read.
bool window_expected(const TimedAutomaton& nfa, const std::vector<LetterId>& word, std::size_t c) {
  if (word.size() < c) return false;
  return nfa_accepts(nfa, std::span(word).subspan(word.size() - c));
}

}  // namespace

TEST_CASE("encode_discrete") {
  std::vector<std::string> ab{"a", "b"};
  CHECK(encode_discrete(ab) == parse_stream("+1 a +1 b"));
  CHECK(encode_discrete(std::vector<std::string>{}).empty());
  CHECK(encode_discrete(std::vector<std::string>{"a"}) == parse_stream("+1 a"));
  CHECK(encode_with_span(ab, R(1, 3)) == parse_stream("+1/3 a +1/3 b"));
}

TEST_CASE("nfa_accepts") {
  auto nfa = parse_automaton(kAbStarA);
  auto word = [&](const std::string& w) {
    std::vector<LetterId> out;
    for (char c : w) out.push_back(*nfa.find_letter(std::string(1, c)));
    return out;
  };
  CHECK(nfa_accepts(nfa, word("aa")));
  CHECK(nfa_accepts(nfa, word("abbba")));
  CHECK_FALSE(nfa_accepts(nfa, word("abb")));
  CHECK_FALSE(nfa_accepts(nfa, word("")));
  CHECK_FALSE(nfa_accepts(nfa, word("baa")));
}

TEST_CASE("sliding_window") {
  auto nfa = parse_automaton(kAbStarA);
  SUBCASE("construction shape") {
    auto w = sliding_window(nfa, Constant::literal(R(3)));
    CHECK(w.clock_count() == 1);
    CHECK(w.state_count() == 4);
    CHECK(w.final_states() == StateSet::single(3));
    CHECK(w.initial() == StateSet::single(0));
    // Three copies, two into the final state, one reset loop per letter.
    CHECK(w.transitions().size() == 3 + 1 + 2);
    CHECK(parse_automaton(format_automaton(w)) == w);
  }
  SUBCASE("examples") {
    auto w = sliding_window(nfa, Constant::literal(R(3)));
    NaiveOracle o(w);
    for (const auto& e : parse_stream("+1 a +1 b +1 a")) o.read(e);
    CHECK(o.accepted());
    OuterMonitor m(w);
    auto trace = run_stream(m, parse_stream("+1 a +1 b"));
    for (const auto& v : trace) CHECK_FALSE(v.accepted);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(sliding_window(nfa, Constant::literal(R(0))), Error);
    auto timed = parse_automaton("alphabet a\nclocks x\nstates p\ninitial p\n");
    CHECK_THROWS_AS(sliding_window(timed, Constant::literal(R(1))), Error);
  }
  SUBCASE("random NFAs against direct membership") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 60; ++i) {
      auto rnfa = random_nfa(rng, 4, 1 + rng() % 3);
      const std::size_t c = 1 + rng() % 12;
      auto w = sliding_window(rnfa, Constant::param("C"));
      OuterMonitor fast(w, {{"C", Rat(static_cast<std::int64_t>(c))}});
      std::vector<LetterId> word;
      const std::size_t len = rng() % 80;
      for (std::size_t j = 0; j < len; ++j) {
        LetterId a = static_cast<LetterId>(rng() % rnfa.letter_count());
        word.push_back(a);
        fast.read_span(R(1));
        CHECK(fast.accepted() == window_expected(rnfa, std::vector<LetterId>(word.begin(), word.end() - 1), c));
        fast.read_letter(a);
        REQUIRE(fast.accepted() == window_expected(rnfa, word, c));
      }
    }
  }
  SUBCASE("fractional spans with unit window") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 30; ++i) {
      auto rnfa = random_nfa(rng, 3, 2);
      const std::int64_t c = 1 + static_cast<std::int64_t>(rng() % 9);
      OuterMonitor integral(sliding_window(rnfa, Constant::literal(R(c))));
      OuterMonitor fractional(sliding_window(rnfa, Constant::literal(R(1))));
      std::vector<std::string> word;
      for (int j = 0; j < 40; ++j) word.push_back(rnfa.alphabet()[rng() % rnfa.letter_count()]);
      auto a = run_stream(integral, encode_discrete(word));
      auto b = run_stream(fractional, encode_with_span(word, R(1, c)));
      CHECK(a == b);
    }
  }
}

TEST_CASE("cel_matches") {
  auto phi = cel_example_expr();
  CHECK(cel_matches(split_letters("abc"), phi));
  CHECK(cel_matches(split_letters("a"), CelExpr::letter("a")));
  CHECK_FALSE(cel_matches(split_letters("b"), CelExpr::letter("a")));
  CHECK_FALSE(cel_matches({}, CelExpr::letter("a")));
  // Leaves look at the last letter only.
  CHECK(cel_matches(split_letters("ba"), CelExpr::letter("a")));
  // b five positions after a, then four.
  CHECK_FALSE(cel_matches(split_letters("accccbc"), phi));
  CHECK(cel_matches(split_letters("acccbc"), phi));
  CHECK_FALSE(cel_matches(split_letters("abbbbbbbbbbbc"), phi));
  CHECK(cel_matches(split_letters("abbbbbbbbbc"), phi));
  CHECK_THROWS_AS(CelExpr::within(CelExpr::letter("a"), 0), Error);
}

TEST_CASE("CEL example automaton") {
  auto aut = cel_example_automaton();
  auto phi = cel_example_expr();
  auto verdict = [&](const std::string& w) {
    OuterMonitor m(aut, cel_example_bindings());
    auto letters = split_letters(w);
    return run_stream(m, encode_discrete(letters)).back().accepted;
  };
  CHECK(verdict("abc"));
  CHECK(verdict("abbbbc"));
  // c eleven positions after a.
  CHECK_FALSE(verdict("abcccccccccc"));
  CHECK(verdict("abccccccccc"));
  CHECK_FALSE(verdict("accccbc"));
  CHECK_FALSE(verdict("abbbbbbbbbbc"));

  SUBCASE("per-prefix agreement on random words") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 100; ++i) {
      OuterMonitor m(aut, cel_example_bindings());
      std::vector<std::string> word;
      const std::size_t len = 1 + rng() % 40;
      for (std::size_t j = 0; j < len; ++j) {
        word.push_back(std::string(1, static_cast<char>('a' + rng() % 3)));
        m.read_span(R(1));
        m.read_letter(word.back());
        INFO(j);
        REQUIRE(m.accepted() == cel_matches(word, phi));
      }
    }
  }
}

TEST_CASE("Frobenius automaton") {
  std::vector<std::uint64_t> ks{3, 5};
  auto aut = frobenius_automaton(ks);
  OuterMonitor m(aut);
  std::uint64_t largest_rejected = 0;
  for (std::uint64_t h = 1; h <= 200; ++h) {
    m.read_span(R(1));
    m.read_letter("a");
    CHECK(m.accepted() == coin_dp_oracle(ks, h));
    if (!m.accepted()) largest_rejected = h;
  }
  CHECK(largest_rejected == 7);
  CHECK_THROWS_AS(frobenius_automaton(std::vector<std::uint64_t>{}), Error);
}

TEST_CASE("coin_dp_oracle") {
  std::vector<std::uint64_t> ks{3, 5};
  CHECK(coin_dp_oracle(ks, 8));
  CHECK(coin_dp_oracle(ks, 0));
  CHECK_FALSE(coin_dp_oracle(ks, 7));
  CHECK_FALSE(coin_dp_oracle(std::vector<std::uint64_t>{2}, 3));
}

TEST_CASE("threesum_instance") {
  SUBCASE("{1,2,3}") {
    auto inst = threesum_instance({R(3), R(1), R(2)});
    CHECK(inst.bound == R(4));
    CHECK(format_stream(inst.word) ==
          "+2 ♦ +2 ♦ +2 ♦ +2 ♠ +2 ♦ +2 ♦ +2 ♦ +2 ♠ +1 ♦ +1 ♦ +1 ♦");
    bool has_guard = false;
    for (const auto& t : inst.automaton.transitions()) {
      if (t.guard.kind() == Guard::Kind::Atom) {
        CHECK(t.guard.clocks().size() == 2);
        CHECK(t.guard.constant().value() == R(16));
        has_guard = true;
      }
    }
    CHECK(has_guard);
    NaiveOracle o(inst.automaton);
    for (const auto& e : inst.word) o.read(e);
    CHECK(o.accepted());
  }
  SUBCASE("{5}") {
    auto inst = threesum_instance({R(5)});
    CHECK(format_stream(inst.word) == "+2 ♦ +10 ♠ +2 ♦ +10 ♠ +1 ♦");
    NaiveOracle o(inst.automaton);
    for (const auto& e : inst.word) o.read(e);
    CHECK_FALSE(o.accepted());
  }
  SUBCASE("{2,3,10} and {1,2,4}") {
    for (auto [set, expected] : std::vector<std::pair<std::vector<Rat>, bool>>{
             {{R(2), R(3), R(10)}, false}, {{R(1), R(2), R(4)}, true}}) {
      CHECK(threesum_brute(set) == expected);
      auto inst = threesum_instance(set);
      NaiveOracle o(inst.automaton);
      for (const auto& e : inst.word) o.read(e);
      CHECK(o.accepted() == expected);
    }
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(threesum_instance({}), Error);
    CHECK_THROWS_AS(threesum_instance({R(0)}), Error);
    CHECK_THROWS_AS(threesum_instance({R(-1), R(2)}), Error);
  }
  SUBCASE("random sets against brute force") {
    std::mt19937_64 rng(41);
    int accepted = 0;
    for (int i = 0; i < 60; ++i) {
      std::vector<Rat> set;
      const std::size_t n = 1 + rng() % 10;
      for (std::size_t j = 0; j < n; ++j) set.push_back(R(1 + static_cast<std::int64_t>(rng() % 40), 1 + static_cast<std::int64_t>(rng() % 2)));
      auto inst = threesum_instance(set);
      NaiveOracle o(inst.automaton);
      for (const auto& e : inst.word) o.read(e);
      CHECK(o.accepted() == threesum_brute(inst.set));
      accepted += o.accepted();
    }
    CHECK(accepted > 0);
    CHECK(accepted < 60);
  }
}
