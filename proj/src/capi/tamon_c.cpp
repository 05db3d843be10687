#include "tamon/tamon.h"

#include <cctype>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <optional>
#include <random>
#include <string>
#include <variant>

#include "tamon/automaton.hpp"
#include "tamon/bench.hpp"
#include "tamon/constructions.hpp"
#include "tamon/error.hpp"
#include "tamon/fuzz.hpp"
#include "tamon/naive_oracle.hpp"
#include "tamon/outer_monitor.hpp"
#include "tamon/stream.hpp"
#include "tamon/text_format.hpp"

struct tamon_automaton {
  tamon::TimedAutomaton aut;
};

struct tamon_bindings {
  tamon::Bindings map;
};

struct tamon_stream {
  std::vector<tamon::StreamElement> elements;
};

struct tamon_monitor {
  std::variant<tamon::OuterMonitor, tamon::NaiveOracle> engine;
};

namespace {

thread_local std::string g_last_error;

tamon_status status_of(tamon::ErrorKind kind) {
  switch (kind) {
    case tamon::ErrorKind::Parse: return TAMON_ERR_PARSE;
    case tamon::ErrorKind::InvalidArgument: return TAMON_ERR_INVALID_ARGUMENT;
    case tamon::ErrorKind::UnboundParameter: return TAMON_ERR_UNBOUND_PARAMETER;
    case tamon::ErrorKind::MalformedGuard: return TAMON_ERR_MALFORMED_GUARD;
    case tamon::ErrorKind::UnknownLetter: return TAMON_ERR_UNKNOWN_LETTER;
    case tamon::ErrorKind::Unsupported: return TAMON_ERR_UNSUPPORTED;
    case tamon::ErrorKind::Contract: return TAMON_ERR_CONTRACT;
    case tamon::ErrorKind::Overflow: return TAMON_ERR_OVERFLOW;
  }
  return TAMON_ERR_INTERNAL;
}

tamon_status fail(tamon_status s, std::string msg) {
  g_last_error = std::move(msg);
  return s;
}

// Runs `f`, translating exceptions into status codes.
template <class F>
tamon_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return TAMON_OK;
  } catch (const tamon::Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(TAMON_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(TAMON_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(TAMON_ERR_INTERNAL, "unknown error");
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) {
    throw tamon::Error(tamon::ErrorKind::InvalidArgument, std::string(what) + " must not be NULL");
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

const tamon::Bindings& bindings_or_empty(const tamon_bindings* b) {
  static const tamon::Bindings kEmpty;
  return b ? b->map : kEmpty;
}

tamon_counters to_c(const tamon::OpCounters& c) {
  return {c.node_inserts, c.node_removals, c.forest_links, c.root_merges,
          c.parent_hops,  c.evictions,     c.migrations,   c.total()};
}

void read_element(tamon_monitor* m, const tamon::StreamElement& e) {
  std::visit([&](auto& engine) { engine.read(e); }, m->engine);
}

}  // namespace

extern "C" {

const char* tamon_last_error(void) { return g_last_error.c_str(); }

const char* tamon_status_name(tamon_status status) {
  switch (status) {
    case TAMON_OK: return "ok";
    case TAMON_ERR_PARSE: return "parse error";
    case TAMON_ERR_INVALID_ARGUMENT: return "invalid argument";
    case TAMON_ERR_UNBOUND_PARAMETER: return "unbound parameter";
    case TAMON_ERR_MALFORMED_GUARD: return "malformed guard";
    case TAMON_ERR_UNKNOWN_LETTER: return "unknown letter";
    case TAMON_ERR_UNSUPPORTED: return "unsupported";
    case TAMON_ERR_CONTRACT: return "contract violation";
    case TAMON_ERR_OVERFLOW: return "arithmetic overflow";
    case TAMON_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void tamon_string_free(char* s) { std::free(s); }

// ---- automata ----

tamon_status tamon_automaton_parse(const char* text, tamon_automaton** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new tamon_automaton{tamon::parse_automaton(text)};
  });
}

tamon_status tamon_automaton_format(const tamon_automaton* aut, char** out) {
  return guarded([&] {
    require(aut, "automaton");
    require(out, "out");
    *out = copy_string(tamon::format_automaton(aut->aut));
  });
}

size_t tamon_automaton_clock_count(const tamon_automaton* aut) {
  return aut ? aut->aut.clock_count() : 0;
}

int tamon_automaton_equal(const tamon_automaton* a, const tamon_automaton* b) {
  return a && b && a->aut == b->aut ? 1 : 0;
}

void tamon_automaton_free(tamon_automaton* aut) { delete aut; }

// ---- bindings ----

tamon_bindings* tamon_bindings_new(void) { return new (std::nothrow) tamon_bindings{}; }

tamon_status tamon_bindings_set(tamon_bindings* b, const char* name, const char* value) {
  return guarded([&] {
    require(b, "bindings");
    require(name, "name");
    require(value, "value");
    if (*name == '\0') throw tamon::Error(tamon::ErrorKind::InvalidArgument, "empty parameter name");
    b->map[name] = tamon::Rat::parse(value);
  });
}

tamon_status tamon_bindings_parse(tamon_bindings* b, const char* assignment) {
  return guarded([&] {
    require(b, "bindings");
    require(assignment, "assignment");
    std::string s(assignment);
    auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw tamon::Error(tamon::ErrorKind::InvalidArgument,
                         "binding '" + s + "' is not of the form NAME=VALUE");
    }
    b->map[s.substr(0, eq)] = tamon::Rat::parse(s.substr(eq + 1));
  });
}

tamon_status tamon_bindings_format(const tamon_bindings* b, char** out) {
  return guarded([&] {
    require(b, "bindings");
    require(out, "out");
    std::string s;
    for (const auto& [name, value] : b->map) s += name + "=" + value.str() + "\n";
    *out = copy_string(s);
  });
}

void tamon_bindings_free(tamon_bindings* b) { delete b; }

// ---- streams ----

tamon_status tamon_stream_parse(const char* text, tamon_stream** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new tamon_stream{tamon::parse_stream(text)};
  });
}

tamon_status tamon_stream_format(const tamon_stream* s, char** out) {
  return guarded([&] {
    require(s, "stream");
    require(out, "out");
    *out = copy_string(tamon::format_stream(s->elements));
  });
}

size_t tamon_stream_length(const tamon_stream* s) { return s ? s->elements.size() : 0; }

void tamon_stream_free(tamon_stream* s) { delete s; }

// ---- monitors ----

tamon_status tamon_monitor_new(const tamon_automaton* aut, const tamon_bindings* bindings,
                               tamon_engine engine, tamon_monitor** out) {
  return guarded([&] {
    require(aut, "automaton");
    require(out, "out");
    const auto& b = bindings_or_empty(bindings);
    switch (engine) {
      case TAMON_ENGINE_FAST:
        *out = new tamon_monitor{tamon::OuterMonitor(aut->aut, b)};
        return;
      case TAMON_ENGINE_NAIVE:
        *out = new tamon_monitor{tamon::NaiveOracle(aut->aut, b)};
        return;
    }
    throw tamon::Error(tamon::ErrorKind::InvalidArgument, "unknown engine");
  });
}

tamon_status tamon_monitor_read_token(tamon_monitor* m, const char* token) {
  return guarded([&] {
    require(m, "monitor");
    require(token, "token");
    read_element(m, tamon::parse_stream_token(token));
  });
}

tamon_status tamon_monitor_read_letter(tamon_monitor* m, const char* letter) {
  return guarded([&] {
    require(m, "monitor");
    require(letter, "letter");
    read_element(m, tamon::StreamElement::letter(letter));
  });
}

tamon_status tamon_monitor_read_span(tamon_monitor* m, int64_t num, int64_t den) {
  return guarded([&] {
    require(m, "monitor");
    read_element(m, tamon::StreamElement::span(tamon::Rat(num, den)));
  });
}

tamon_status tamon_monitor_read_stream(tamon_monitor* m, const tamon_stream* s) {
  return guarded([&] {
    require(m, "monitor");
    require(s, "stream");
    for (const auto& e : s->elements) read_element(m, e);
  });
}

int tamon_monitor_accepted(const tamon_monitor* m) {
  if (!m) return 0;
  return std::visit([](const auto& engine) { return engine.accepted() ? 1 : 0; }, m->engine);
}

uint64_t tamon_monitor_step(const tamon_monitor* m) {
  if (!m) return 0;
  return std::visit([](const auto& engine) -> uint64_t { return engine.step(); }, m->engine);
}

tamon_status tamon_monitor_counters(const tamon_monitor* m, tamon_counters* out) {
  return guarded([&] {
    require(m, "monitor");
    require(out, "out");
    const auto* fast = std::get_if<tamon::OuterMonitor>(&m->engine);
    if (!fast) {
      throw tamon::Error(tamon::ErrorKind::Unsupported, "the naive engine keeps no counters");
    }
    *out = to_c(fast->counters());
  });
}

void tamon_monitor_free(tamon_monitor* m) { delete m; }

// ---- generators ----

tamon_status tamon_gen_window(const tamon_automaton* nfa, const char* window, tamon_automaton** out) {
  return guarded([&] {
    require(nfa, "nfa");
    require(window, "window");
    require(out, "out");
    std::string w(window);
    bool is_name = !w.empty() && (std::isalpha(static_cast<unsigned char>(w[0])) || w[0] == '_');
    tamon::Constant c = is_name ? tamon::Constant::param(w)
                                : tamon::Constant::literal(tamon::Rat::parse(w));
    *out = new tamon_automaton{tamon::sliding_window(nfa->aut, c)};
  });
}

tamon_status tamon_gen_cel_example(tamon_automaton** out, tamon_bindings** bindings_out) {
  return guarded([&] {
    require(out, "out");
    auto aut = std::make_unique<tamon_automaton>(tamon_automaton{tamon::cel_example_automaton()});
    if (bindings_out) *bindings_out = new tamon_bindings{tamon::cel_example_bindings()};
    *out = aut.release();
  });
}

tamon_status tamon_gen_frobenius(const uint64_t* ks, size_t n, tamon_automaton** out) {
  return guarded([&] {
    require(out, "out");
    if (n > 0) require(ks, "ks");
    std::vector<std::uint64_t> values(ks, ks + n);
    *out = new tamon_automaton{tamon::frobenius_automaton(values)};
  });
}

tamon_status tamon_gen_threesum(const char* const* set, size_t n, tamon_automaton** aut_out,
                                tamon_stream** word_out) {
  return guarded([&] {
    if (n > 0) require(set, "set");
    std::vector<tamon::Rat> values;
    for (size_t i = 0; i < n; ++i) {
      require(set[i], "set element");
      values.push_back(tamon::Rat::parse(set[i]));
    }
    tamon::ThreeSumInstance inst = tamon::threesum_instance(std::move(values));
    std::unique_ptr<tamon_automaton> aut;
    if (aut_out) aut = std::make_unique<tamon_automaton>(tamon_automaton{std::move(inst.automaton)});
    if (word_out) *word_out = new tamon_stream{std::move(inst.word)};
    if (aut_out) *aut_out = aut.release();
  });
}

tamon_status tamon_gen_stream(const char* kind, size_t n, uint64_t seed, const tamon_automaton* aut,
                              tamon_stream** out) {
  return guarded([&] {
    require(kind, "kind");
    require(aut, "automaton");
    require(out, "out");
    *out = new tamon_stream{
        tamon::gen_stream(tamon::parse_stream_kind(kind), n, seed, aut->aut.alphabet())};
  });
}

tamon_status tamon_gen_random(uint64_t seed, tamon_automaton** aut_out, tamon_stream** stream_out) {
  return guarded([&] {
    require(aut_out, "aut_out");
    std::mt19937_64 rng(seed);
    tamon::FuzzLimits limits;
    tamon::TimedAutomaton aut = tamon::random_automaton(rng, limits);
    auto stream = tamon::random_stream(rng, aut, limits.max_stream);
    if (stream_out) *stream_out = new tamon_stream{std::move(stream)};
    *aut_out = new tamon_automaton{std::move(aut)};
  });
}

tamon_status tamon_encode_discrete(const char* const* letters, size_t n, tamon_stream** out) {
  return guarded([&] {
    require(out, "out");
    if (n > 0) require(letters, "letters");
    std::vector<std::string> word;
    for (size_t i = 0; i < n; ++i) {
      require(letters[i], "letter");
      word.emplace_back(letters[i]);
    }
    *out = new tamon_stream{tamon::encode_discrete(word)};
  });
}

// ---- analysis ----

tamon_status tamon_bench_run(const tamon_automaton* aut, const tamon_bindings* bindings,
                             const tamon_stream* s, tamon_bench_report* out) {
  return guarded([&] {
    require(aut, "automaton");
    require(s, "stream");
    require(out, "out");
    tamon::OuterMonitor monitor(aut->aut, bindings_or_empty(bindings));
    tamon::BenchReport r = tamon::run_instrumented(monitor, s->elements);
    *out = {r.n, r.total_ops, r.max_ops_per_read, r.amortised, r.wall_seconds, to_c(r.counters)};
  });
}

tamon_status tamon_compare_engines(const tamon_automaton* aut, const tamon_bindings* bindings,
                                   const tamon_stream* s, int* diverged, uint64_t* step,
                                   int* fast_verdict, int* naive_verdict) {
  return guarded([&] {
    require(aut, "automaton");
    require(s, "stream");
    require(diverged, "diverged");
    auto d = tamon::compare_engines(aut->aut, bindings_or_empty(bindings), s->elements);
    *diverged = d ? 1 : 0;
    if (d) {
      if (step) *step = d->step;
      if (fast_verdict) *fast_verdict = d->fast ? 1 : 0;
      if (naive_verdict) *naive_verdict = d->naive ? 1 : 0;
    }
  });
}

}  // extern "C"
