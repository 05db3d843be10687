#include "tamon/text_format.hpp"

#include <cctype>
#include <sstream>
#include <vector>

#include "tamon/error.hpp"
#include "tamon/stream.hpp"

namespace tamon {
namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Recursive-descent parser for guard expressions:
//   or   := and ('|' and)*
//   and  := prim ('&' prim)*
//   prim := 'true' | '(' or ')' | clock ('+' clock)* rel constant
class GuardParser {
 public:
  GuardParser(const TimedAutomaton& aut, std::string_view text, std::size_t line)
      : aut_(aut), text_(text), line_(line) {}

  Guard parse() {
    Guard g = parse_or();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(text_.substr(pos_)) + "'");
    return g;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(line_, "guard '" + std::string(text_) + "': " + msg);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string identifier() {
    skip_space();
    if (pos_ >= text_.size() || !is_ident_start(text_[pos_])) fail("expected a name");
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Guard parse_or() {
    Guard g = parse_and();
    while (accept('|')) g = Guard::either(g, parse_and());
    return g;
  }

  Guard parse_and() {
    Guard g = parse_prim();
    while (accept('&')) g = Guard::both(g, parse_prim());
    return g;
  }

  Guard parse_prim() {
    if (accept('(')) {
      Guard g = parse_or();
      if (!accept(')')) fail("missing ')'");
      return g;
    }
    std::string first = identifier();
    if (first == "true") return Guard::always();
    std::vector<ClockId> clocks{clock(first)};
    while (accept('+')) clocks.push_back(clock(identifier()));

    skip_space();
    if (pos_ >= text_.size()) fail("expected a comparison");
    char op = text_[pos_++];
    bool or_equal = false;
    if ((op == '<' || op == '>') && pos_ < text_.size() && text_[pos_] == '=') {
      or_equal = true;
      ++pos_;
    }
    Relation rel = Relation::Equal;
    if (op == '<') rel = Relation::Less;
    else if (op == '>') rel = Relation::Greater;
    else if (op != '=') fail(std::string("unknown comparison '") + op + "'");

    Constant c = constant();
    auto make = [&](Relation r) {
      return clocks.size() == 1 ? Guard::atom(clocks[0], r, c) : Guard::sum_atom(clocks, r, c);
    };
    if (or_equal) return Guard::either(make(rel), make(Relation::Equal));
    return make(rel);
  }

  ClockId clock(const std::string& name) {
    auto id = aut_.find_clock(name);
    if (!id) fail("unknown clock '" + name + "'");
    return *id;
  }

  Constant constant() {
    skip_space();
    if (pos_ < text_.size() && is_ident_start(text_[pos_])) {
      std::string name = identifier();
      if (!aut_.has_param(name)) fail("undeclared parameter '" + name + "'");
      return Constant::param(name);
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.' ||
            text_[pos_] == '/')) {
      ++pos_;
    }
    if (start == pos_) fail("expected a constant");
    try {
      return Constant::literal(Rat::parse(text_.substr(start, pos_ - start)));
    } catch (const Error& e) {
      fail(e.what());
    }
  }

  const TimedAutomaton& aut_;
  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

struct PendingTransition {
  std::size_t line;
  std::string text;
};

void parse_transition(TimedAutomaton& aut, const PendingTransition& pt) {
  const std::string& s = pt.text;
  auto fail = [&](const std::string& msg) -> void { throw ParseError(pt.line, msg); };

  std::string guard_text = "true";
  std::string before = s;
  std::string after;
  if (auto lb = s.find('['); lb != std::string::npos) {
    auto rb = s.find(']', lb);
    if (rb == std::string::npos) fail("missing ']' in guard");
    guard_text = s.substr(lb + 1, rb - lb - 1);
    before = s.substr(0, lb);
    after = s.substr(rb + 1);
  } else {
    auto arrow = s.find("->");
    if (arrow == std::string::npos) fail("missing '->'");
    before = s.substr(0, arrow);
    after = s.substr(arrow);
  }
  auto head = tokenize_line(before);
  auto tail = tokenize_line(after);
  if (head.size() != 3 || head[0] != "trans") fail("expected 'trans <source> <letter> [guard] -> <target>'");
  if (tail.size() < 2 || tail[0] != "->") fail("expected '-> <target>'");

  auto src = aut.find_state(head[1]);
  if (!src) fail("unknown state '" + head[1] + "'");
  auto letter = aut.find_letter(head[2]);
  if (!letter) fail("unknown letter '" + head[2] + "'");
  auto dst = aut.find_state(tail[1]);
  if (!dst) fail("unknown state '" + tail[1] + "'");

  std::vector<ClockId> resets;
  if (tail.size() > 2) {
    if (tail[2] != "reset") fail("expected 'reset' after target state");
    if (tail.size() == 3) fail("'reset' needs at least one clock");
    for (std::size_t i = 3; i < tail.size(); ++i) {
      auto x = aut.find_clock(tail[i]);
      if (!x) fail("unknown clock '" + tail[i] + "'");
      resets.push_back(*x);
    }
  }
  Guard g = GuardParser(aut, guard_text, pt.line).parse();
  try {
    aut.add_transition({*src, *letter, std::move(g), *dst, std::move(resets)});
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(pt.line, e.what());
  }
}

void format_guard_into(const TimedAutomaton& aut, const Guard& g, std::string& out) {
  switch (g.kind()) {
    case Guard::Kind::True:
      out += "true";
      return;
    case Guard::Kind::Atom: {
      for (std::size_t i = 0; i < g.clocks().size(); ++i) {
        if (i) out += "+";
        out += aut.clocks().at(g.clocks()[i]);
      }
      out += to_string(g.relation());
      out += g.constant().str();
      return;
    }
    case Guard::Kind::And:
    case Guard::Kind::Or: {
      // The parser is left-associative; a compound right operand, or a
      // compound left operand of a different connective, needs parentheses
      // for the tree shape to survive a round trip.
      auto compound = [](const Guard& c) {
        return c.kind() == Guard::Kind::And || c.kind() == Guard::Kind::Or;
      };
      bool paren_l = compound(g.lhs()) && g.lhs().kind() != g.kind();
      bool paren_r = compound(g.rhs());
      if (paren_l) out += "(";
      format_guard_into(aut, g.lhs(), out);
      if (paren_l) out += ")";
      out += g.kind() == Guard::Kind::And ? " & " : " | ";
      if (paren_r) out += "(";
      format_guard_into(aut, g.rhs(), out);
      if (paren_r) out += ")";
      return;
    }
  }
}

}  // namespace

Guard parse_guard(const TimedAutomaton& aut, std::string_view text, std::size_t line) {
  return GuardParser(aut, text, line).parse();
}

std::string format_guard(const TimedAutomaton& aut, const Guard& guard) {
  std::string out;
  format_guard_into(aut, guard, out);
  return out;
}

TimedAutomaton parse_automaton(std::string_view text) {
  TimedAutomaton aut;
  std::vector<PendingTransition> transitions;
  std::vector<std::pair<std::size_t, std::string>> initial;
  std::vector<std::pair<std::size_t, std::string>> final_states;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string line(text.substr(pos, end - pos));
    pos = end + 1;

    auto tokens = tokenize_line(line);
    if (tokens.empty()) continue;
    const std::string& kw = tokens[0];
    try {
      if (kw == "alphabet") {
        for (std::size_t i = 1; i < tokens.size(); ++i) aut.add_letter(tokens[i]);
      } else if (kw == "clocks") {
        for (std::size_t i = 1; i < tokens.size(); ++i) aut.add_clock(tokens[i]);
      } else if (kw == "states") {
        for (std::size_t i = 1; i < tokens.size(); ++i) aut.add_state(tokens[i]);
      } else if (kw == "param") {
        if (tokens.size() < 2) throw ParseError(line_no, "'param' needs a name");
        for (std::size_t i = 1; i < tokens.size(); ++i) {
          if (!is_ident_start(tokens[i][0])) {
            throw ParseError(line_no, "parameter names must start with a letter");
          }
          aut.add_param(tokens[i]);
        }
      } else if (kw == "initial") {
        for (std::size_t i = 1; i < tokens.size(); ++i) initial.emplace_back(line_no, tokens[i]);
      } else if (kw == "final") {
        for (std::size_t i = 1; i < tokens.size(); ++i) final_states.emplace_back(line_no, tokens[i]);
      } else if (kw == "trans") {
        // Guards never contain '#', so the first one starts a comment.
        std::string raw = line.substr(0, line.find('#'));
        transitions.push_back({line_no, std::move(raw)});
      } else {
        throw ParseError(line_no, "unknown directive '" + kw + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(line_no, e.what());
    }
  }

  auto mark = [&](const auto& list, bool is_initial) {
    for (const auto& [ln, name] : list) {
      auto q = aut.find_state(name);
      if (!q) throw ParseError(ln, "unknown state '" + name + "'");
      if (is_initial) aut.set_initial(*q);
      else aut.set_final(*q);
    }
  };
  mark(initial, true);
  mark(final_states, false);
  for (const auto& pt : transitions) parse_transition(aut, pt);
  return aut;
}

std::string format_automaton(const TimedAutomaton& aut) {
  std::ostringstream os;
  auto list = [&](const char* kw, const std::vector<std::string>& items) {
    if (items.empty()) return;
    os << kw;
    for (const auto& s : items) os << ' ' << s;
    os << '\n';
  };
  list("alphabet", aut.alphabet());
  list("clocks", aut.clocks());
  list("states", aut.states());
  for (const auto& p : aut.params()) os << "param " << p << '\n';
  std::vector<std::string> init;
  std::vector<std::string> fin;
  for (StateId q = 0; q < aut.state_count(); ++q) {
    if (aut.is_initial(q)) init.push_back(aut.states()[q]);
    if (aut.is_final(q)) fin.push_back(aut.states()[q]);
  }
  list("initial", init);
  list("final", fin);
  for (const auto& t : aut.transitions()) {
    os << "trans " << aut.states()[t.source] << ' ' << aut.alphabet()[t.letter];
    if (!t.guard.is_true()) os << " [" << format_guard(aut, t.guard) << ']';
    os << " -> " << aut.states()[t.target];
    if (!t.resets.empty()) {
      os << " reset";
      for (ClockId x : t.resets) os << ' ' << aut.clocks()[x];
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace tamon
