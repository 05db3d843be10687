#pragma once

#include <string>
#include <string_view>

#include "tamon/automaton.hpp"

namespace tamon {

// Line-oriented automaton format; `#` starts a comment.
//
//   alphabet a b c
//   clocks x
//   states p q r
//   param C
//   initial p
//   final r
//   trans p a [x < C & x > 1] -> q reset x
//
// Guards: atoms `x<c`, `x>c`, `x=c`, `x<=c`, `x>=c`, `x+y=c`, `true`;
// `&` binds tighter than `|`; parentheses group. `x<=c` is read as
// `(x<c | x=c)`. A missing guard means `true`; the reset clause is optional.
// Constants are integers, fractions (`3/2`), decimals (`0.25`) or declared
// parameter names.

/// Throws `ParseError` carrying the offending line number.
TimedAutomaton parse_automaton(std::string_view text);

/// Canonical text; `parse_automaton(format_automaton(a)) == a`.
std::string format_automaton(const TimedAutomaton& aut);

/// Guard as it appears between the brackets of a `trans` line.
std::string format_guard(const TimedAutomaton& aut, const Guard& guard);

/// Parses a bracket-free guard expression against `aut`'s clocks/parameters.
Guard parse_guard(const TimedAutomaton& aut, std::string_view text, std::size_t line = 0);

}  // namespace tamon
