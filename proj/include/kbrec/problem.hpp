#pragma once

#include <set>
#include <string>
#include <utility>

#include "kbrec/order.hpp"
#include "kbrec/rewrite.hpp"
#include "kbrec/term.hpp"

namespace kbrec {

/// Parsed problem file. Sections, each parenthesized:
///   (VAR x y ...)                 declares variable names
///   (PREC f > g > h, a > b)       precedence chains
///   (EQUATIONS s = t, ...)        indexed 1..n in file order
///   (RULES l -> r, ...)           indexed 1..m in file order
/// Identifiers are ASCII letters, digits and underscores; a bare identifier
/// is a variable iff declared, otherwise a constant.
struct Problem {
  std::set<std::string> vars;
  Signature sig;
  Precedence prec;
  bool has_prec = false;
  Es equations;
  Trs rules;
};

/// Throws ParseError with line/column on malformed input.
Problem parse_problem(const std::string& text);

/// Parses one term against the problem's variable declarations, extending
/// the signature with any new symbols.
Term parse_term_text(const std::string& text, const std::set<std::string>& vars,
                     Signature& sig);

/// Parses "s = t" the same way.
std::pair<Term, Term> parse_goal_text(const std::string& text,
                                      const std::set<std::string>& vars,
                                      Signature& sig);

}  // namespace kbrec
