// The C boundary, exercised the way a C client would.
#include <doctest.h>

#include <string>
#include <vector>

#include "tamon/tamon.h"

namespace {

const char* kAbStarA = R"(
alphabet a b
states s0 s1 s2
initial s0
final s2
trans s0 a -> s1
trans s1 b -> s1
trans s1 a -> s2
)";

std::string take(char* s) {
  std::string out(s);
  tamon_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("parse, format and compare automata") {
  tamon_automaton* a = nullptr;
  REQUIRE(tamon_automaton_parse(kAbStarA, &a) == TAMON_OK);
  CHECK(tamon_automaton_clock_count(a) == 0);
  char* text = nullptr;
  REQUIRE(tamon_automaton_format(a, &text) == TAMON_OK);
  tamon_automaton* b = nullptr;
  REQUIRE(tamon_automaton_parse(take(text).c_str(), &b) == TAMON_OK);
  CHECK(tamon_automaton_equal(a, b) == 1);
  tamon_automaton_free(a);
  tamon_automaton_free(b);

  tamon_automaton* bad = nullptr;
  CHECK(tamon_automaton_parse("alphabet a\nstates p\ntrans p z -> p\n", &bad) == TAMON_ERR_PARSE);
  CHECK(bad == nullptr);
  CHECK(std::string(tamon_last_error()).find("3") != std::string::npos);
  CHECK(tamon_automaton_parse(nullptr, &bad) == TAMON_ERR_INVALID_ARGUMENT);
  CHECK(std::string(tamon_status_name(TAMON_ERR_UNSUPPORTED)).size() > 0);
  tamon_automaton_free(nullptr);
}

TEST_CASE("bindings") {
  tamon_bindings* b = tamon_bindings_new();
  CHECK(tamon_bindings_set(b, "C", "3") == TAMON_OK);
  CHECK(tamon_bindings_parse(b, "D=0.25") == TAMON_OK);
  CHECK(tamon_bindings_parse(b, "no-equals") == TAMON_ERR_INVALID_ARGUMENT);
  CHECK(tamon_bindings_set(b, "E", "x") == TAMON_ERR_INVALID_ARGUMENT);
  char* text = nullptr;
  REQUIRE(tamon_bindings_format(b, &text) == TAMON_OK);
  CHECK(take(text) == "C=3\nD=1/4\n");
  tamon_bindings_free(b);
}

TEST_CASE("streams") {
  tamon_stream* s = nullptr;
  REQUIRE(tamon_stream_parse("+1 a\n+0.5 b", &s) == TAMON_OK);
  CHECK(tamon_stream_length(s) == 4);
  char* text = nullptr;
  REQUIRE(tamon_stream_format(s, &text) == TAMON_OK);
  CHECK(take(text) == "+1 a +1/2 b");
  tamon_stream_free(s);
  CHECK(tamon_stream_parse("+0 a", &s) == TAMON_ERR_PARSE);

  const char* letters[] = {"a", "b"};
  REQUIRE(tamon_encode_discrete(letters, 2, &s) == TAMON_OK);
  REQUIRE(tamon_stream_format(s, &text) == TAMON_OK);
  CHECK(take(text) == "+1 a +1 b");
  tamon_stream_free(s);
}

TEST_CASE("monitors") {
  tamon_automaton* nfa = nullptr;
  REQUIRE(tamon_automaton_parse(kAbStarA, &nfa) == TAMON_OK);
  tamon_automaton* w = nullptr;
  REQUIRE(tamon_gen_window(nfa, "C", &w) == TAMON_OK);
  CHECK(tamon_automaton_clock_count(w) == 1);

  tamon_monitor* m = nullptr;
  CHECK(tamon_monitor_new(w, nullptr, TAMON_ENGINE_FAST, &m) == TAMON_ERR_UNBOUND_PARAMETER);
  tamon_bindings* b = tamon_bindings_new();
  tamon_bindings_set(b, "C", "3");

  for (tamon_engine engine : {TAMON_ENGINE_FAST, TAMON_ENGINE_NAIVE}) {
    REQUIRE(tamon_monitor_new(w, b, engine, &m) == TAMON_OK);
    CHECK(tamon_monitor_accepted(m) == 0);
    for (const char* tok : {"+1", "a", "+1", "b"}) CHECK(tamon_monitor_read_token(m, tok) == TAMON_OK);
    CHECK(tamon_monitor_read_span(m, 1, 1) == TAMON_OK);
    CHECK(tamon_monitor_read_letter(m, "a") == TAMON_OK);
    CHECK(tamon_monitor_accepted(m) == 1);
    CHECK(tamon_monitor_step(m) == 6);
    CHECK(tamon_monitor_read_letter(m, "z") == TAMON_ERR_UNKNOWN_LETTER);
    CHECK(tamon_monitor_read_span(m, 0, 1) == TAMON_ERR_INVALID_ARGUMENT);
    CHECK(tamon_monitor_read_span(m, 1, 0) != TAMON_OK);
    CHECK(tamon_monitor_read_token(m, "+0") == TAMON_ERR_PARSE);
    tamon_counters c{};
    if (engine == TAMON_ENGINE_FAST) {
      CHECK(tamon_monitor_counters(m, &c) == TAMON_OK);
      CHECK(c.total > 0);
      CHECK(c.migrations == c.evictions);
    } else {
      CHECK(tamon_monitor_counters(m, &c) == TAMON_ERR_UNSUPPORTED);
    }
    tamon_monitor_free(m);
  }

  tamon_automaton* two = nullptr;
  REQUIRE(tamon_automaton_parse("alphabet a\nclocks x y\nstates p\ninitial p\n", &two) == TAMON_OK);
  CHECK(tamon_monitor_new(two, nullptr, TAMON_ENGINE_FAST, &m) == TAMON_ERR_UNSUPPORTED);
  REQUIRE(tamon_monitor_new(two, nullptr, TAMON_ENGINE_NAIVE, &m) == TAMON_OK);
  tamon_monitor_free(m);

  tamon_automaton_free(two);
  tamon_bindings_free(b);
  tamon_automaton_free(w);
  tamon_automaton_free(nfa);
}

TEST_CASE("generators and analysis") {
  tamon_automaton* cel = nullptr;
  tamon_bindings* cb = nullptr;
  REQUIRE(tamon_gen_cel_example(&cel, &cb) == TAMON_OK);
  tamon_stream* s = nullptr;
  REQUIRE(tamon_gen_stream("adversarial-burst", 1000, 1, cel, &s) == TAMON_OK);
  tamon_bench_report rep{};
  REQUIRE(tamon_bench_run(cel, cb, s, &rep) == TAMON_OK);
  CHECK(rep.n == 1999);
  CHECK(rep.max_ops_per_read >= 999);
  CHECK(rep.amortised > 0.0);
  tamon_stream_free(s);
  CHECK(tamon_gen_stream("sideways", 10, 1, cel, &s) == TAMON_ERR_INVALID_ARGUMENT);

  uint64_t ks[] = {3, 5};
  tamon_automaton* frob = nullptr;
  REQUIRE(tamon_gen_frobenius(ks, 2, &frob) == TAMON_OK);
  CHECK(tamon_gen_frobenius(ks, 0, &frob) == TAMON_ERR_INVALID_ARGUMENT);

  const char* set[] = {"1", "2", "3"};
  tamon_automaton* ts = nullptr;
  tamon_stream* word = nullptr;
  REQUIRE(tamon_gen_threesum(set, 3, &ts, &word) == TAMON_OK);
  CHECK(tamon_automaton_clock_count(ts) == 2);
  tamon_monitor* m = nullptr;
  REQUIRE(tamon_monitor_new(ts, nullptr, TAMON_ENGINE_NAIVE, &m) == TAMON_OK);
  REQUIRE(tamon_monitor_read_stream(m, word) == TAMON_OK);
  CHECK(tamon_monitor_accepted(m) == 1);
  tamon_monitor_free(m);

  for (uint64_t seed = 0; seed < 20; ++seed) {
    tamon_automaton* a = nullptr;
    tamon_stream* rs = nullptr;
    REQUIRE(tamon_gen_random(seed, &a, &rs) == TAMON_OK);
    int diverged = -1;
    uint64_t step = 0;
    int fv = 0, nv = 0;
    REQUIRE(tamon_compare_engines(a, nullptr, rs, &diverged, &step, &fv, &nv) == TAMON_OK);
    CHECK(diverged == 0);
    tamon_stream_free(rs);
    tamon_automaton_free(a);
  }

  tamon_stream_free(word);
  tamon_automaton_free(ts);
  tamon_automaton_free(frob);
  tamon_automaton_free(cel);
  tamon_bindings_free(cb);
}
