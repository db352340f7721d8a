#pragma once

#include <map>
#include <string>
#include <vector>

#include "kbrec/critpairs.hpp"
#include "kbrec/order.hpp"
#include "kbrec/rewrite.hpp"

namespace kbrec {

/// Default bound on the number of inference applications in one run.
inline constexpr int kDefaultMaxSteps = 1000;

/// Arrow between two recorded terms: Backward means the right term rewrites
/// to the left one, Forward the reverse, Equal relates a term to itself
/// (always with reference 0).
enum class HistOp { Backward, Forward, Equal };

HistOp inverse(HistOp op);

/// One record `left op1(ref1) middle op2(ref2) right`. For the initial
/// equation i: s = t the record is `s ->(i) t =(0) t`; every later record's
/// nonzero references point strictly below its own index.
struct HistoryEntry {
  int index = 0;
  Term left;
  HistOp op1 = HistOp::Equal;
  int ref1 = 0;
  Term middle;
  HistOp op2 = HistOp::Equal;
  int ref2 = 0;
  Term right;
  bool operator==(const HistoryEntry&) const = default;
};

using History = std::map<int, HistoryEntry>;

/// Swaps left and right, reversing both arrows.
HistoryEntry mirror(const HistoryEntry& e);

struct CompletionState {
  Es equations;   // sorted by index
  Trs rules;      // sorted by index
  History history;
  int next_index = 1;
};

/// Re-indexes the input equations 1..n and seeds the history with their
/// self-records. Rejects reserved variable names and arity clashes.
CompletionState init_completion(const Es& e0);

/// Adds the critical pair as a fresh equation, recording how it was peaked.
/// The pair's steps must replay against the current rules. Equations whose
/// variables all carry a renaming prefix are canonically renamed to the
/// pool x, y, z, u, v, w, x1, ...
CompletionState deduce(const CompletionState& st, const CriticalPair& cp);

/// Turns equation `eq_index` into a rule under the order; right-to-left
/// orientation mirrors the equation's record. Throws UnorientableError if
/// the order decides neither way.
CompletionState orient(const CompletionState& st, int eq_index,
                       const Precedence& prec);

enum class Side { Left, Right };

/// Rewrites one side of an equation one step with the current rules,
/// replacing it by a fresh-index equation whose record chains through the
/// old one.
CompletionState simplify(const CompletionState& st, int eq_index, Side side);

/// Removes a trivial equation (equal sides) together with its record; the
/// record must be unreferenced.
CompletionState delete_equation(const CompletionState& st, int eq_index);

/// Rewrites the right side of a rule one step, replacing the rule under a
/// fresh index.
CompletionState compose(const CompletionState& st, int rule_index);

/// Rewrites the left side of a rule one step using the *other* rules,
/// demoting it to a fresh equation.
CompletionState collapse(const CompletionState& st, int rule_index);

/// True iff no equations remain and every critical pair of the rules is
/// joinable. Throws FuelError when joinability could not be decided.
bool success_check(const CompletionState& st, int fuel = kDefaultFuel);

/// Structural soundness of the state: index uniqueness and bounds, every
/// equation/rule recorded with exactly its sides, references resolvable and
/// strictly decreasing (self-reference only in initial-shape records),
/// Equal arrows iff reference 0.
void validate_state(const CompletionState& st);

/// Drops records not needed to recall the final rules: keeps every record
/// whose index is an initial-equation index, a final-rule index, or
/// reachable from a final rule's references.
History prune_history(const History& h, const Es& e0, const Trs& rules);

struct Limits {
  int fuel = kDefaultFuel;
  int max_steps = kDefaultMaxSteps;
};

enum class CompletionOutcome { Success, Unorientable, StepLimit, FuelExhausted };

struct RunResult {
  CompletionOutcome outcome = CompletionOutcome::Success;
  bool success = false;
  int unorientable_index = 0;  // set for Unorientable
  Es e0;                       // re-indexed input equations
  Trs rules;                   // final system (last state on failure)
  History history;             // pruned on success, full on failure
  std::vector<std::string> trace;  // one line per inference
  Precedence prec;
};

/// Runs completion to success or failure:
///  - lowest-index equation first: simplify both sides to fixpoint, delete
///    if trivial, otherwise orient;
///  - after each new rule: compose right sides to fixpoint, collapse left
///    sides to fixpoint, then deduce every nontrivial critical pair
///    involving the new rule;
///  - once no equations remain, deduce the first non-joinable critical
///    pair, or stop with success when there is none.
RunResult complete(const Es& e0, const Precedence& prec,
                   const Limits& limits = {});

}  // namespace kbrec
