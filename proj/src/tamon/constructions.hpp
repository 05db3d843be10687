#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "tamon/automaton.hpp"
#include "tamon/stream.hpp"

namespace tamon {

// ---- sliding window ------------------------------------------------------

/// Turns a clock-free automaton N into a one-clock automaton that, on
/// `+1 a1 +1 a2 ...`, accepts exactly when N accepts the last `window`
/// letters. `window` is a positive literal or a parameter name (declared on
/// the result). Throws `InvalidArgument` if N has clocks or `window` <= 0.
TimedAutomaton sliding_window(const TimedAutomaton& nfa, const Constant& window);

/// Plain NFA membership (all guards must be `true`).
bool nfa_accepts(const TimedAutomaton& nfa, std::span<const LetterId> word);

/// `+1` before every letter.
std::vector<StreamElement> encode_discrete(std::span<const std::string> word);
/// Same, with a custom span between letters.
std::vector<StreamElement> encode_with_span(std::span<const std::string> word, const Rat& span);

// ---- event patterns ------------------------------------------------------

/// Pattern tree: a letter, `lhs ; rhs`, or `body WITHIN t`.
class CelExpr {
 public:
  enum class Kind { Letter, Seq, Within };

  static CelExpr letter(std::string token);
  static CelExpr seq(CelExpr lhs, CelExpr rhs);
  /// Throws `InvalidArgument` for t == 0.
  static CelExpr within(CelExpr body, std::uint64_t t);

  Kind kind() const noexcept { return node_->kind; }
  const std::string& token() const { return node_->token; }
  const CelExpr& lhs() const { return *node_->lhs; }
  const CelExpr& rhs() const { return *node_->rhs; }
  const CelExpr& body() const { return *node_->lhs; }
  std::uint64_t window() const { return node_->window; }
  std::string str() const;

 private:
  struct Node {
    Kind kind = Kind::Letter;
    std::string token;
    std::shared_ptr<const CelExpr> lhs;
    std::shared_ptr<const CelExpr> rhs;
    std::uint64_t window = 0;
  };
  explicit CelExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

/// Whether the whole word matches `expr`. Memoised recursion over
/// (subexpression, subword); the empty word matches nothing.
bool cel_matches(std::span<const std::string> word, const CelExpr& expr);

/// `((a ; b) WITHIN 4) ; c) WITHIN 10`.
CelExpr cel_example_expr();

/// One-clock automaton for `cel_example_expr` over {a, b, c}; its two window
/// bounds are the parameters `WAB` and `WAC`.
TimedAutomaton cel_example_automaton();
/// `WAB = 4`, `WAC = 10`.
Bindings cel_example_bindings();

// ---- coin sums -----------------------------------------------------------

/// Two-state automaton over {a} whose verdict on `(+1 a)^h` tracks whether
/// h is a sum of the given positive integers (each value >= 2; see README).
/// Throws `InvalidArgument` for an empty list or a zero value.
TimedAutomaton frobenius_automaton(std::span<const std::uint64_t> ks);

/// Whether h is a non-negative integer combination of `ks`.
bool coin_dp_oracle(std::span<const std::uint64_t> ks, std::uint64_t h);

// ---- 3SUM ---------------------------------------------------------------

extern const char* const kDiamond;  // "♦"
extern const char* const kSpade;    // "♠"

struct ThreeSumInstance {
  std::vector<Rat> set;  // sorted, distinct, positive
  Rat bound;             // 1 + max(set)
  std::vector<StreamElement> word;
  TimedAutomaton automaton;  // two clocks, one additive guard
};

/// Throws `InvalidArgument` for an empty set or a non-positive element.
ThreeSumInstance threesum_instance(std::vector<Rat> set);

/// Whether a + b = c for some a, b, c in the set (a = b allowed).
bool threesum_brute(std::span<const Rat> set);

}  // namespace tamon
