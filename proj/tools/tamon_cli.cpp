// tamon: command-line front end. Uses the shared library through its C API only.
#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tamon/tamon.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDivergence = 2;

// Carries a message and exit code up to main.
struct Failure {
  std::string message;
  int code = kExitUsage;
};

struct AutomatonFree {
  void operator()(tamon_automaton* p) const { tamon_automaton_free(p); }
};
struct BindingsFree {
  void operator()(tamon_bindings* p) const { tamon_bindings_free(p); }
};
struct StreamFree {
  void operator()(tamon_stream* p) const { tamon_stream_free(p); }
};
struct MonitorFree {
  void operator()(tamon_monitor* p) const { tamon_monitor_free(p); }
};
using Automaton = std::unique_ptr<tamon_automaton, AutomatonFree>;
using Bindings = std::unique_ptr<tamon_bindings, BindingsFree>;
using Stream = std::unique_ptr<tamon_stream, StreamFree>;
using Monitor = std::unique_ptr<tamon_monitor, MonitorFree>;

void check(tamon_status st, const std::string& context) {
  if (st == TAMON_OK) return;
  throw Failure{context + ": " + tamon_status_name(st) + ": " + tamon_last_error()};
}

std::string take(char* s) {
  std::string out(s ? s : "");
  tamon_string_free(s);
  return out;
}

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{"cannot open " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  std::string body = text;
  if (body.empty() || body.back() != '\n') body.push_back('\n');
  if (path.empty() || path == "-") {
    std::cout << body;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{"cannot write " + path};
  out << body;
}

Automaton load_automaton(const std::string& path) {
  tamon_automaton* a = nullptr;
  check(tamon_automaton_parse(read_file(path).c_str(), &a), path);
  return Automaton(a);
}

Bindings make_bindings(const std::vector<std::string>& assignments) {
  Bindings b(tamon_bindings_new());
  for (const auto& a : assignments) check(tamon_bindings_parse(b.get(), a.c_str()), "--bind " + a);
  return b;
}

std::string format_automaton(const tamon_automaton* a) {
  char* text = nullptr;
  check(tamon_automaton_format(a, &text), "format automaton");
  return take(text);
}

std::string format_stream(const tamon_stream* s) {
  char* text = nullptr;
  check(tamon_stream_format(s, &text), "format stream");
  return take(text);
}

std::vector<std::string> split_list(const std::string& list) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream ss(list);
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<std::string> split_tokens(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) {
    if (tok[0] == '#') break;
    out.push_back(tok);
  }
  return out;
}

const char* verdict_word(int accepted) { return accepted ? "accept" : "reject"; }

// ---- monitor ----

struct MonitorOptions {
  std::string automaton;
  std::vector<std::string> binds;
  std::string stream = "-";
  std::string engine = "fast";
  std::string emit = "each";
  bool stats = false;
};

void print_counters(const tamon_counters& c) {
  std::cout << "node_inserts=" << c.node_inserts << "\n"
            << "node_removals=" << c.node_removals << "\n"
            << "forest_links=" << c.forest_links << "\n"
            << "root_merges=" << c.root_merges << "\n"
            << "parent_hops=" << c.parent_hops << "\n"
            << "evictions=" << c.evictions << "\n"
            << "migrations=" << c.migrations << "\n";
}

int cmd_monitor(const MonitorOptions& opt) {
  auto aut = load_automaton(opt.automaton);
  auto bindings = make_bindings(opt.binds);
  const bool use_fast = opt.engine != "naive";
  const bool use_naive = opt.engine != "fast";

  Monitor fast, naive;
  if (use_fast) {
    tamon_monitor* m = nullptr;
    check(tamon_monitor_new(aut.get(), bindings.get(), TAMON_ENGINE_FAST, &m), "fast engine");
    fast.reset(m);
  }
  if (use_naive) {
    tamon_monitor* m = nullptr;
    check(tamon_monitor_new(aut.get(), bindings.get(), TAMON_ENGINE_NAIVE, &m), "naive engine");
    naive.reset(m);
  }
  tamon_monitor* lead = fast ? fast.get() : naive.get();

  // Per-read cost, measured on the fast engine.
  tamon_counters base{};
  std::uint64_t prev_total = 0, max_read = 0;
  if (opt.stats && fast) {
    check(tamon_monitor_counters(fast.get(), &base), "counters");
    prev_total = base.total;
  }

  auto verdict = [&]() -> int {
    if (fast && naive) {
      int f = tamon_monitor_accepted(fast.get());
      int n = tamon_monitor_accepted(naive.get());
      if (f != n) {
        std::cout << std::flush;
        throw Failure{"engines diverge at step " + std::to_string(tamon_monitor_step(lead)) +
                          ": fast " + verdict_word(f) + ", naive " + verdict_word(n),
                      kExitDivergence};
      }
      return f;
    }
    return tamon_monitor_accepted(lead);
  };

  const bool each = opt.emit == "each";
  int last = verdict();
  if (each) std::cout << "0 " << verdict_word(last) << "\n";

  std::ifstream file;
  std::istream* in = &std::cin;
  if (opt.stream != "-") {
    file.open(opt.stream, std::ios::binary);
    if (!file) throw Failure{"cannot open " + opt.stream};
    in = &file;
  }

  const auto start = std::chrono::steady_clock::now();
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(*in, line)) {
    ++line_no;
    for (const auto& tok : split_tokens(line)) {
      for (tamon_monitor* m : {fast.get(), naive.get()}) {
        if (!m) continue;
        tamon_status st = tamon_monitor_read_token(m, tok.c_str());
        if (st != TAMON_OK) {
          throw Failure{opt.stream + ":" + std::to_string(line_no) + ": " + tamon_status_name(st) + ": " +
                        tamon_last_error()};
        }
      }
      if (opt.stats && fast) {
        tamon_counters now{};
        check(tamon_monitor_counters(fast.get(), &now), "counters");
        max_read = std::max(max_read, now.total - prev_total);
        prev_total = now.total;
      }
      last = verdict();
      if (each) std::cout << tamon_monitor_step(lead) << " " << verdict_word(last) << "\n";
    }
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!each) std::cout << tamon_monitor_step(lead) << " " << verdict_word(last) << "\n";

  if (opt.stats) {
    const std::uint64_t n = tamon_monitor_step(lead);
    std::cout << "n=" << n << "\n";
    if (fast) {
      tamon_counters c{};
      check(tamon_monitor_counters(fast.get(), &c), "counters");
      const std::uint64_t total = c.total - base.total;
      std::cout << "total_ops=" << total << "\n"
                << "max_ops_per_read=" << max_read << "\n"
                << "amortised=" << (n ? static_cast<double>(total) / static_cast<double>(n) : 0.0) << "\n";
      print_counters(c);
    }
    std::cout << "wall_seconds=" << wall << "\n";
  }
  return kExitOk;
}

// ---- gen ----

struct GenOptions {
  std::string out = "-";
  std::string stream_out;
  std::string bindings_out;
  std::string dfa;
  std::string window;
  std::string ks;
  std::optional<std::uint64_t> h;
  std::string set;
  std::string automaton;
  std::string kind = "discrete";
  std::size_t n = 1000;
  std::uint64_t seed = 1;
};

void write_stream_if_requested(const GenOptions& opt, const tamon_stream* s) {
  if (!opt.stream_out.empty()) write_output(opt.stream_out, format_stream(s));
}

int gen_window(const GenOptions& opt) {
  auto nfa = load_automaton(opt.dfa);
  tamon_automaton* w = nullptr;
  check(tamon_gen_window(nfa.get(), opt.window.c_str(), &w), "window");
  Automaton guard(w);
  write_output(opt.out, format_automaton(w));
  return kExitOk;
}

int gen_cel(const GenOptions& opt) {
  tamon_automaton* a = nullptr;
  tamon_bindings* b = nullptr;
  check(tamon_gen_cel_example(&a, &b), "cel");
  Automaton ga(a);
  Bindings gb(b);
  write_output(opt.out, format_automaton(a));
  if (!opt.bindings_out.empty()) {
    char* text = nullptr;
    check(tamon_bindings_format(b, &text), "bindings");
    write_output(opt.bindings_out, take(text));
  }
  return kExitOk;
}

int gen_frobenius(const GenOptions& opt) {
  std::vector<std::uint64_t> ks;
  for (const auto& item : split_list(opt.ks)) {
    try {
      std::size_t used = 0;
      ks.push_back(std::stoull(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Failure{"--ks: not a positive integer: " + item};
    }
  }
  tamon_automaton* a = nullptr;
  check(tamon_gen_frobenius(ks.data(), ks.size(), &a), "frobenius");
  Automaton ga(a);
  write_output(opt.out, format_automaton(a));
  if (opt.h) {
    std::vector<const char*> letters(*opt.h, "a");
    tamon_stream* s = nullptr;
    check(tamon_encode_discrete(letters.data(), letters.size(), &s), "stream");
    Stream gs(s);
    write_stream_if_requested(opt, s);
  }
  return kExitOk;
}

int gen_threesum(const GenOptions& opt) {
  auto items = split_list(opt.set);
  std::vector<const char*> ptrs;
  for (const auto& i : items) ptrs.push_back(i.c_str());
  tamon_automaton* a = nullptr;
  tamon_stream* s = nullptr;
  check(tamon_gen_threesum(ptrs.data(), ptrs.size(), &a, &s), "threesum");
  Automaton ga(a);
  Stream gs(s);
  write_output(opt.out, format_automaton(a));
  write_stream_if_requested(opt, s);
  return kExitOk;
}

int gen_stream(const GenOptions& opt) {
  auto aut = load_automaton(opt.automaton);
  tamon_stream* s = nullptr;
  check(tamon_gen_stream(opt.kind.c_str(), opt.n, opt.seed, aut.get(), &s), "stream");
  Stream gs(s);
  write_output(opt.out, format_stream(s));
  return kExitOk;
}

int gen_random(const GenOptions& opt) {
  tamon_automaton* a = nullptr;
  tamon_stream* s = nullptr;
  check(tamon_gen_random(opt.seed, &a, &s), "random");
  Automaton ga(a);
  Stream gs(s);
  write_output(opt.out, format_automaton(a));
  write_stream_if_requested(opt, s);
  return kExitOk;
}

// ---- bench ----

struct BenchOptions {
  std::string automaton;
  std::vector<std::string> binds;
  std::string kind = "adversarial_burst";
  std::string sizes = "1000,10000,100000";
  std::uint64_t seed = 1;
  bool lines = false;
};

int cmd_bench(const BenchOptions& opt) {
  auto aut = load_automaton(opt.automaton);
  auto bindings = make_bindings(opt.binds);
  std::vector<std::size_t> sizes;
  for (const auto& item : split_list(opt.sizes)) {
    try {
      sizes.push_back(std::stoull(item));
    } catch (const std::exception&) {
      throw Failure{"--sizes: not a count: " + item};
    }
  }
  if (sizes.empty()) throw Failure{"--sizes: empty list"};

  std::vector<tamon_bench_report> reports;
  for (std::size_t n : sizes) {
    tamon_stream* s = nullptr;
    check(tamon_gen_stream(opt.kind.c_str(), n, opt.seed, aut.get(), &s), "stream");
    Stream gs(s);
    tamon_bench_report r{};
    check(tamon_bench_run(aut.get(), bindings.get(), s, &r), "bench");
    reports.push_back(r);
  }

  if (opt.lines) {
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      const auto& r = reports[i];
      std::cout << "size=" << sizes[i] << "\n"
                << "n=" << r.n << "\n"
                << "total_ops=" << r.total_ops << "\n"
                << "max_ops_per_read=" << r.max_ops_per_read << "\n"
                << "amortised=" << r.amortised << "\n"
                << "wall_seconds=" << r.wall_seconds << "\n";
      print_counters(r.counters);
    }
    return kExitOk;
  }
  std::cout << "kind=" << opt.kind << " seed=" << opt.seed << "\n";
  std::printf("%10s %10s %14s %10s %12s %10s\n", "size", "n", "total_ops", "max/read", "amortised", "seconds");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const auto& r = reports[i];
    std::printf("%10zu %10zu %14llu %10llu %12.4f %10.4f\n", sizes[i], r.n,
                static_cast<unsigned long long>(r.total_ops), static_cast<unsigned long long>(r.max_ops_per_read),
                r.amortised, r.wall_seconds);
  }
  return kExitOk;
}

// ---- fuzz ----

int cmd_fuzz(std::uint64_t cases, std::uint64_t seed) {
  for (std::uint64_t i = 0; i < cases; ++i) {
    tamon_automaton* a = nullptr;
    tamon_stream* s = nullptr;
    check(tamon_gen_random(seed + i, &a, &s), "random");
    Automaton ga(a);
    Stream gs(s);
    int diverged = 0, fv = 0, nv = 0;
    std::uint64_t step = 0;
    check(tamon_compare_engines(a, nullptr, s, &diverged, &step, &fv, &nv), "compare");
    if (diverged) {
      throw Failure{"seed " + std::to_string(seed + i) + ": engines diverge at step " + std::to_string(step) +
                        ": fast " + verdict_word(fv) + ", naive " + verdict_word(nv),
                    kExitDivergence};
    }
  }
  std::cout << "cases=" << cases << "\n" << "divergences=0\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Streaming monitor for one-clock timed automata"};
  app.require_subcommand(1);

  MonitorOptions mon;
  auto* monitor = app.add_subcommand("monitor", "Run a monitor over a stream, printing verdicts");
  monitor->add_option("--automaton", mon.automaton, "Automaton file")->required();
  monitor->add_option("--bind", mon.binds, "Parameter binding NAME=VALUE (repeatable)");
  monitor->add_option("--stream", mon.stream, "Stream file, or - for standard input")->capture_default_str();
  monitor->add_option("--engine", mon.engine, "fast, naive, or both (compare at every step)")
      ->check(CLI::IsMember({"fast", "naive", "both"}))
      ->capture_default_str();
  monitor->add_option("--emit", mon.emit, "each: a verdict per element; final: the last one only")
      ->check(CLI::IsMember({"each", "final"}))
      ->capture_default_str();
  monitor->add_flag("--stats", mon.stats, "Append operation counts as metric=value lines");

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate automata and streams");
  gen_cmd->require_subcommand(1);
  auto add_out = [&](CLI::App* c) {
    c->add_option("-o,--out", gen.out, "Output file for the main result (default: standard output)");
  };
  auto add_stream_out = [&](CLI::App* c) {
    c->add_option("--stream-out", gen.stream_out, "Also write the generated stream to this file (- for stdout)");
  };

  auto* g_window = gen_cmd->add_subcommand("window", "Sliding-window automaton from a clock-free automaton");
  g_window->add_option("--regex-dfa", gen.dfa, "Clock-free automaton file")->required();
  g_window->add_option("--C", gen.window, "Window length, or a parameter name")->required();
  add_out(g_window);

  auto* g_cel = gen_cmd->add_subcommand("cel-example", "Automaton for ((a;b) WITHIN 4 ; c) WITHIN 10");
  g_cel->alias("cel-fig2");
  g_cel->add_option("--bindings-out", gen.bindings_out, "Write its default parameter bindings here");
  add_out(g_cel);

  auto* g_frob = gen_cmd->add_subcommand("frobenius", "Coin automaton accepting after sums of the given values");
  g_frob->set_help_flag("--help", "Print this help message and exit");
  g_frob->add_option("--ks", gen.ks, "Comma-separated positive integers")->required();
  auto* h_opt = g_frob->add_option("--h", gen.h, "Also generate the stream of h unit-spaced 'a' letters");
  add_out(g_frob);
  add_stream_out(g_frob);
  h_opt->needs(g_frob->get_option("--stream-out"));

  auto* g_3sum = gen_cmd->add_subcommand("threesum", "Two-clock instance and word for a 3SUM set");
  g_3sum->add_option("--set", gen.set, "Comma-separated positive rationals")->required();
  add_out(g_3sum);
  add_stream_out(g_3sum);

  auto* g_stream = gen_cmd->add_subcommand("stream", "Stream over an automaton's alphabet");
  g_stream->add_option("--automaton", gen.automaton, "Automaton file")->required();
  g_stream->add_option("--kind", gen.kind, "discrete, random_spans or adversarial_burst")->capture_default_str();
  g_stream->add_option("--n", gen.n, "Number of (span, letter) pairs")->capture_default_str();
  g_stream->add_option("--seed", gen.seed)->capture_default_str();
  add_out(g_stream);

  auto* g_random = gen_cmd->add_subcommand("random", "Random one-clock automaton and stream");
  g_random->add_option("--seed", gen.seed)->capture_default_str();
  add_out(g_random);
  add_stream_out(g_random);

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Operation counts over generated streams of several sizes");
  bench_cmd->add_option("--automaton", bench.automaton, "Automaton file")->required();
  bench_cmd->add_option("--bind", bench.binds, "Parameter binding NAME=VALUE (repeatable)");
  bench_cmd->add_option("--kind", bench.kind, "discrete, random_spans or adversarial_burst")->capture_default_str();
  bench_cmd->add_option("--sizes", bench.sizes, "Comma-separated pair counts")->capture_default_str();
  bench_cmd->add_option("--seed", bench.seed)->capture_default_str();
  bench_cmd->add_flag("--lines", bench.lines, "metric=value lines instead of a table");

  std::uint64_t fuzz_cases = 1000, fuzz_seed = 1;
  auto* fuzz_cmd = app.add_subcommand("fuzz", "Compare both engines on random automata and streams");
  fuzz_cmd->add_option("--cases", fuzz_cases)->capture_default_str();
  fuzz_cmd->add_option("--seed", fuzz_seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (monitor->parsed()) return cmd_monitor(mon);
    if (g_window->parsed()) return gen_window(gen);
    if (g_cel->parsed()) return gen_cel(gen);
    if (g_frob->parsed()) return gen_frobenius(gen);
    if (g_3sum->parsed()) return gen_threesum(gen);
    if (g_stream->parsed()) return gen_stream(gen);
    if (g_random->parsed()) return gen_random(gen);
    if (bench_cmd->parsed()) return cmd_bench(bench);
    if (fuzz_cmd->parsed()) return cmd_fuzz(fuzz_cases, fuzz_seed);
  } catch (const Failure& f) {
    std::cout << std::flush;
    std::cerr << "tamon: " << f.message << "\n";
    return f.code;
  }
  return kExitUsage;
}
