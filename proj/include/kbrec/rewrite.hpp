#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kbrec/term.hpp"

namespace kbrec {

/// Default bound on the number of rewrite steps in one normalization.
inline constexpr int kDefaultFuel = 10000;

struct Rule {
  int index = 0;
  Term lhs;
  Term rhs;
  bool operator==(const Rule&) const = default;
};

struct Equation {
  int index = 0;
  Term lhs;
  Term rhs;
  bool operator==(const Equation&) const = default;
};

/// Rule/equation sets are kept sorted by index; indices are unique.
using Trs = std::vector<Rule>;
using Es = std::vector<Equation>;

const Rule* find_rule(const Trs& trs, int index);
const Equation* find_equation(const Es& es, int index);

/// Throws InputError if two entries share an index.
void validate_unique_indices(const Trs& trs);
void validate_unique_indices(const Es& es);

enum class StepKind { Rule, Equation };
/// LR applies the referenced sides left to right, RL right to left.
enum class StepDir { LR, RL };

/// One rewrite or conversion step with its full justification.
struct Step {
  Term source;
  Term target;
  int ref = 0;  // index of the rule or equation applied
  StepKind kind = StepKind::Rule;
  StepDir dir = StepDir::LR;
  Position pos;
  Subst subst;
  bool operator==(const Step&) const = default;
};

/// Step chain; each step's source is the previous step's target, starting
/// from `start`.
struct Conversion {
  Term start;
  std::vector<Step> steps;
  bool operator==(const Conversion&) const = default;
};

/// Rewrite evidence that two terms meet: left and right step sequences end
/// in the same term.
struct Join {
  std::vector<Step> left;
  std::vector<Step> right;
  Term meet;
  bool operator==(const Join&) const = default;
};

/// Leftmost-innermost redex, lowest rule index first: positions are visited
/// in post-order (arguments before their parent, left to right) and at each
/// position the applicable rule with the smallest index wins.
std::optional<Step> find_redex(const Trs& trs, const Term& t);

/// Every applicable (position, rule) pair, positions in pre-order, rules by
/// ascending index within a position.
std::vector<Step> enumerate_steps(const Trs& trs, const Term& t);

struct NormalizeResult {
  Term term;
  std::vector<Step> steps;
};

/// Repeats find_redex until no redex remains; throws FuelError if more than
/// `fuel` steps would be needed.
NormalizeResult normalize(const Trs& trs, const Term& t,
                          int fuel = kDefaultFuel);

/// Joins s and t if their normal forms coincide; nullopt otherwise.
/// Fuel exhaustion propagates as FuelError.
std::optional<Join> joinable(const Trs& trs, const Term& s, const Term& t,
                             int fuel = kDefaultFuel);

struct CheckResult {
  bool ok = true;
  std::string reason;
  explicit operator bool() const { return ok; }
  static CheckResult pass() { return {}; }
  static CheckResult fail(std::string why) { return {false, std::move(why)}; }
};

/// Replays one step against the given rules/equations. Rule steps must run
/// left to right; equation steps may run either way.
CheckResult check_step(const Trs& rules, const Es& eqs, const Step& step);

/// Replays a conversion between s and t where every step is an equation
/// step over `eqs`.
CheckResult check_conversion(const Es& eqs, const Conversion& conv,
                             const Term& s, const Term& t);

/// Finds the first (pre-order) position and matcher justifying
/// `from -> to` as one application of the oriented pair (from_side, to_side).
std::optional<std::pair<Position, Subst>> step_witness(const Term& from_side,
                                                       const Term& to_side,
                                                       const Term& from,
                                                       const Term& to);

}  // namespace kbrec
