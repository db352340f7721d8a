#pragma once

#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kbrec/rewrite.hpp"
#include "kbrec/term.hpp"

namespace kbrec {

/// Strict partial order on function symbols, stored transitively closed.
class Precedence {
 public:
  Precedence() = default;

  /// Builds the transitive closure of the given f > g pairs; throws
  /// InputError if that closure has a cycle.
  static Precedence from_pairs(
      const std::vector<std::pair<std::string, std::string>>& pairs);

  bool gt(const std::string& a, const std::string& b) const {
    return gt_.count({a, b}) != 0;
  }
  bool empty() const { return gt_.empty(); }
  const std::set<std::pair<std::string, std::string>>& pairs() const {
    return gt_;
  }

  bool operator==(const Precedence&) const = default;

 private:
  std::set<std::pair<std::string, std::string>> gt_;
};

/// Parses comma-separated chains like "f > g > h, a > b"; an optional
/// leading PREC keyword is skipped. Whitespace-only input yields the empty
/// precedence.
Precedence parse_precedence(std::string_view text);

/// Lexicographic path order induced by the precedence: s > t iff
///  (a) some argument of s equals t or exceeds it, or
///  (b) root(s) > root(t) and s exceeds every argument of t, or
///  (c) the roots are equal, the argument tuples compare lexicographically,
///      and s exceeds every argument of t.
/// A variable is never greater than anything; s > x iff x occurs in s and
/// s is not x itself.
bool lpo_gt(const Precedence& prec, const Term& s, const Term& t);

enum class Orientation { LeftToRight, RightToLeft, Unorientable };

/// Orientation of lhs/rhs under the order, trying left-to-right first.
Orientation orient(const Precedence& prec, const Term& lhs, const Term& rhs);

/// True iff every rule decreases under the order (lhs > rhs), which makes
/// the system terminating.
bool check_termination(const Precedence& prec, const Trs& trs);

}  // namespace kbrec
