#include "tamon/stream.hpp"

#include <istream>
#include <sstream>

#include "tamon/error.hpp"

namespace tamon {

StreamElement StreamElement::letter(std::string token) {
  if (token.empty()) throw Error(ErrorKind::InvalidArgument, "empty letter");
  return StreamElement(std::move(token));
}

StreamElement StreamElement::span(Rat r) {
  if (!r.is_positive()) {
    throw Error(ErrorKind::InvalidArgument,
                "time spans must be strictly positive, got " + r.str());
  }
  return StreamElement(std::move(r));
}

std::string StreamElement::str() const {
  if (is_letter()) return letter();
  return "+" + span().str();
}

StreamElement parse_stream_token(std::string_view token, std::size_t line) {
  if (token.empty()) throw ParseError(line, "empty stream token");
  if (token[0] != '+') return StreamElement::letter(std::string(token));
  std::string_view body = token.substr(1);
  if (body.empty() || body[0] == '-' || body[0] == '+') {
    throw ParseError(line, "malformed time span '" + std::string(token) + "'");
  }
  Rat r;
  try {
    r = Rat::parse(body);
  } catch (const Error&) {
    throw ParseError(line, "malformed time span '" + std::string(token) + "'");
  }
  if (!r.is_positive()) {
    throw ParseError(line, "time span '" + std::string(token) + "' is not strictly positive");
  }
  return StreamElement::span(r);
}

std::vector<std::string> tokenize_line(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  auto space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v'; };
  while (i < line.size()) {
    while (i < line.size() && space(line[i])) ++i;
    if (i >= line.size()) break;
    if (line[i] == '#') break;
    std::size_t start = i;
    while (i < line.size() && !space(line[i])) ++i;
    out.emplace_back(line.substr(start, i - start));
  }
  return out;
}

std::vector<StreamElement> parse_stream(std::string_view text) {
  std::vector<StreamElement> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    for (const auto& tok : tokenize_line(text.substr(pos, end - pos))) {
      out.push_back(parse_stream_token(tok, line_no));
    }
    pos = end + 1;
  }
  return out;
}

std::string format_stream(std::span<const StreamElement> elements) {
  std::string out;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (i) out.push_back(' ');
    out += elements[i].str();
  }
  return out;
}

std::optional<StreamElement> StreamReader::next() {
  while (cursor_ >= pending_.size()) {
    std::string text;
    if (!std::getline(in_, text)) return std::nullopt;
    ++line_;
    pending_ = tokenize_line(text);
    cursor_ = 0;
  }
  return parse_stream_token(pending_[cursor_++], line_);
}

}  // namespace tamon
