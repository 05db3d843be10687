#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tamon/rational.hpp"

namespace tamon {

/// One element of a timed word: a letter or a strictly positive time span.
class StreamElement {
 public:
  static StreamElement letter(std::string token);
  /// Throws `InvalidArgument` unless `r > 0`.
  static StreamElement span(Rat r);

  bool is_letter() const noexcept { return std::holds_alternative<std::string>(v_); }
  bool is_span() const noexcept { return std::holds_alternative<Rat>(v_); }
  const std::string& letter() const { return std::get<std::string>(v_); }
  const Rat& span() const { return std::get<Rat>(v_); }

  /// Token form: the letter itself, or `+<rat>` for a span.
  std::string str() const;

  friend bool operator==(const StreamElement&, const StreamElement&) = default;

 private:
  explicit StreamElement(std::variant<std::string, Rat> v) : v_(std::move(v)) {}

  std::variant<std::string, Rat> v_;
};

/// `+<rat>` is a span (`+1`, `+3/2`, `+0.25`); anything else is a letter.
/// Throws `ParseError` for a malformed or non-positive span.
StreamElement parse_stream_token(std::string_view token, std::size_t line = 0);

/// Whole-text convenience; `#` starts a comment that runs to the end of line.
std::vector<StreamElement> parse_stream(std::string_view text);

std::string format_stream(std::span<const StreamElement> elements);

/// Pulls stream elements one at a time, reading the input line by line.
class StreamReader {
 public:
  explicit StreamReader(std::istream& in) : in_(in) {}

  std::optional<StreamElement> next();
  std::size_t line() const noexcept { return line_; }

 private:
  std::istream& in_;
  std::vector<std::string> pending_;
  std::size_t cursor_ = 0;
  std::size_t line_ = 0;
};

/// Splits on ASCII whitespace, dropping everything from a token that starts
/// with `#` to the end of the line.
std::vector<std::string> tokenize_line(std::string_view line);

}  // namespace tamon
