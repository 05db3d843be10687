#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tamon/counters.hpp"
#include "tamon/outer_monitor.hpp"
#include "tamon/stream.hpp"

namespace tamon {

enum class StreamKind { Discrete, RandomSpans, AdversarialBurst };

/// Accepts `discrete`, `random_spans`, `adversarial_burst` (dashes allowed).
StreamKind parse_stream_kind(const std::string& name);
const char* to_string(StreamKind kind);

/// Deterministic under `seed`. `n` counts (span, letter) pairs:
///  - discrete: `+1 a` with random letters;
///  - random_spans: random small rational spans, random letters;
///  - adversarial_burst: n-1 tiny spans each followed by the first letter,
///    then a single span of 2^40 that pushes every clock past every constant.
/// Throws `InvalidArgument` for an empty alphabet.
std::vector<StreamElement> gen_stream(StreamKind kind, std::size_t n, std::uint64_t seed,
                                      std::span<const std::string> alphabet);

struct BenchReport {
  std::size_t n = 0;  // elements read
  std::uint64_t total_ops = 0;
  std::uint64_t max_ops_per_read = 0;
  double amortised = 0.0;  // total_ops / n
  double wall_seconds = 0.0;
  OpCounters counters;
  std::vector<std::uint64_t> ops_per_read;  // filled when requested
  std::vector<bool> verdicts;               // after each read, when requested
};

/// Reads the stream into `monitor`, measuring structural operations per read.
BenchReport run_instrumented(OuterMonitor& monitor, std::span<const StreamElement> stream,
                             bool keep_trace = false);

/// `metric=value` lines.
std::string format_report_lines(const BenchReport& r);

}  // namespace tamon
