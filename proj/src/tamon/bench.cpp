#include "tamon/bench.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <sstream>

#include "tamon/error.hpp"

namespace tamon {

StreamKind parse_stream_kind(const std::string& name) {
  std::string k = name;
  std::replace(k.begin(), k.end(), '-', '_');
  if (k == "discrete") return StreamKind::Discrete;
  if (k == "random_spans") return StreamKind::RandomSpans;
  if (k == "adversarial_burst") return StreamKind::AdversarialBurst;
  throw Error(ErrorKind::InvalidArgument, "unknown stream kind '" + name + "'");
}

const char* to_string(StreamKind kind) {
  switch (kind) {
    case StreamKind::Discrete: return "discrete";
    case StreamKind::RandomSpans: return "random_spans";
    case StreamKind::AdversarialBurst: return "adversarial_burst";
  }
  return "?";
}

std::vector<StreamElement> gen_stream(StreamKind kind, std::size_t n, std::uint64_t seed,
                                      std::span<const std::string> alphabet) {
  if (alphabet.empty()) throw Error(ErrorKind::InvalidArgument, "empty alphabet");
  std::mt19937_64 rng(seed);
  auto pick = [&](std::uint64_t bound) { return rng() % bound; };
  std::vector<StreamElement> out;
  out.reserve(2 * n);
  switch (kind) {
    case StreamKind::Discrete:
      for (std::size_t i = 0; i < n; ++i) {
        out.push_back(StreamElement::span(Rat(1)));
        out.push_back(StreamElement::letter(alphabet[pick(alphabet.size())]));
      }
      break;
    case StreamKind::RandomSpans:
      for (std::size_t i = 0; i < n; ++i) {
        Rat r(static_cast<std::int64_t>(1 + pick(16)), static_cast<std::int64_t>(1 + pick(4)));
        out.push_back(StreamElement::span(r));
        out.push_back(StreamElement::letter(alphabet[pick(alphabet.size())]));
      }
      break;
    case StreamKind::AdversarialBurst:
      if (n == 0) break;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        Rat tiny(static_cast<std::int64_t>(1 + pick(3)), std::int64_t{1} << 22);
        out.push_back(StreamElement::span(tiny));
        out.push_back(StreamElement::letter(alphabet[0]));
      }
      out.push_back(StreamElement::span(Rat(std::int64_t{1} << 40)));
      break;
  }
  return out;
}

BenchReport run_instrumented(OuterMonitor& monitor, std::span<const StreamElement> stream,
                             bool keep_trace) {
  BenchReport rep;
  rep.n = stream.size();
  if (keep_trace) {
    rep.ops_per_read.reserve(stream.size());
    rep.verdicts.reserve(stream.size());
  }
  const std::uint64_t start_ops = monitor.counters().total();
  std::uint64_t before = start_ops;
  auto t0 = std::chrono::steady_clock::now();
  for (const auto& e : stream) {
    monitor.read(e);
    std::uint64_t after = monitor.counters().total();
    rep.max_ops_per_read = std::max(rep.max_ops_per_read, after - before);
    if (keep_trace) {
      rep.ops_per_read.push_back(after - before);
      rep.verdicts.push_back(monitor.accepted());
    }
    before = after;
  }
  auto t1 = std::chrono::steady_clock::now();
  rep.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
  rep.counters = monitor.counters();
  rep.total_ops = before - start_ops;
  rep.amortised = rep.n ? static_cast<double>(rep.total_ops) / static_cast<double>(rep.n) : 0.0;
  return rep;
}

std::string format_report_lines(const BenchReport& r) {
  std::ostringstream os;
  os << "n=" << r.n << '\n'
     << "total_ops=" << r.total_ops << '\n'
     << "max_ops_per_read=" << r.max_ops_per_read << '\n'
     << "amortised=" << r.amortised << '\n'
     << "wall_seconds=" << r.wall_seconds << '\n'
     << "node_inserts=" << r.counters.node_inserts << '\n'
     << "node_removals=" << r.counters.node_removals << '\n'
     << "forest_links=" << r.counters.forest_links << '\n'
     << "root_merges=" << r.counters.root_merges << '\n'
     << "parent_hops=" << r.counters.parent_hops << '\n'
     << "evictions=" << r.counters.evictions << '\n'
     << "migrations=" << r.counters.migrations << '\n';
  return os.str();
}

}  // namespace tamon
