#include "kbrec/completion.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace kbrec {

HistOp inverse(HistOp op) {
  switch (op) {
    case HistOp::Backward: return HistOp::Forward;
    case HistOp::Forward: return HistOp::Backward;
    case HistOp::Equal: return HistOp::Equal;
  }
  return HistOp::Equal;
}

HistoryEntry mirror(const HistoryEntry& e) {
  return HistoryEntry{e.index,           e.right, inverse(e.op2), e.ref2,
                      e.middle,          inverse(e.op1), e.ref1,  e.left};
}

namespace {

void insert_sorted(Trs& trs, Rule r) {
  auto it = std::lower_bound(
      trs.begin(), trs.end(), r.index,
      [](const Rule& a, int idx) { return a.index < idx; });
  trs.insert(it, std::move(r));
}

void erase_rule(Trs& trs, int index) {
  trs.erase(std::remove_if(trs.begin(), trs.end(),
                           [&](const Rule& r) { return r.index == index; }),
            trs.end());
}

void erase_equation(Es& es, int index) {
  es.erase(std::remove_if(es.begin(), es.end(),
                          [&](const Equation& e) { return e.index == index; }),
           es.end());
}

const Equation& need_equation(const CompletionState& st, int index) {
  const Equation* e = find_equation(st.equations, index);
  if (!e)
    throw InputError("no open equation with index " + std::to_string(index));
  return *e;
}

const Rule& need_rule(const CompletionState& st, int index) {
  const Rule* r = find_rule(st.rules, index);
  if (!r) throw InputError("no rule with index " + std::to_string(index));
  return *r;
}

void check_no_reserved(const Term& t) {
  for (const Position& p : positions(t)) {
    Term sub = subterm_at(t, p);
    if (sub.name().find(kReservedChar) != std::string::npos)
      throw InputError("reserved character '#' in name '" + sub.name() + "'");
  }
}

}  // namespace

CompletionState init_completion(const Es& e0) {
  CompletionState st;
  Signature sig;
  for (const Equation& e : e0) {
    for (const Term* side : {&e.lhs, &e.rhs}) {
      check_no_reserved(*side);
      sig.declare_all(*side);
    }
    int i = st.next_index++;
    st.equations.push_back(Equation{i, e.lhs, e.rhs});
    st.history.emplace(i, HistoryEntry{i, e.lhs, HistOp::Forward, i, e.rhs,
                                       HistOp::Equal, 0, e.rhs});
  }
  return st;
}

CompletionState deduce(const CompletionState& st0, const CriticalPair& cp) {
  if (CheckResult c = check_step(st0.rules, {}, cp.left_step); !c)
    throw InputError("deduce: left step does not replay: " + c.reason);
  if (CheckResult c = check_step(st0.rules, {}, cp.right_step); !c)
    throw InputError("deduce: right step does not replay: " + c.reason);
  if (cp.left_step.source != cp.peak || cp.right_step.source != cp.peak ||
      cp.left_step.target != cp.left || cp.right_step.target != cp.right)
    throw InputError("deduce: steps do not connect the peak to the pair");

  std::vector<std::string> all_vars;
  std::set<std::string> seen;
  bool all_prefixed = true;
  for (const Term* t : {&cp.peak, &cp.left, &cp.right})
    for (const std::string& v : vars(*t)) {
      if (!seen.insert(v).second) continue;
      all_vars.push_back(v);
      all_prefixed =
          all_prefixed && v.find(kReservedChar) != std::string::npos;
    }
  // canonical renaming is skipped unless every variable carries a renaming
  // prefix, so user-named variables survive
  Subst ren;
  if (all_prefixed)
    for (std::size_t i = 0; i < all_vars.size(); ++i)
      ren.bind(all_vars[i], Term::var(canonical_var_name(i)));

  CompletionState st = st0;
  int m = st.next_index++;
  Term left = apply_subst(ren, cp.left);
  Term peak = apply_subst(ren, cp.peak);
  Term right = apply_subst(ren, cp.right);
  st.equations.push_back(Equation{m, left, right});
  st.history.emplace(
      m, HistoryEntry{m, left, HistOp::Backward, cp.left_step.ref, peak,
                      HistOp::Forward, cp.right_step.ref, right});
  return st;
}

CompletionState orient(const CompletionState& st0, int eq_index,
                       const Precedence& prec) {
  const Equation eq = need_equation(st0, eq_index);
  Orientation o = orient(prec, eq.lhs, eq.rhs);
  if (o == Orientation::Unorientable) throw UnorientableError(eq_index);
  CompletionState st = st0;
  erase_equation(st.equations, eq_index);
  if (o == Orientation::LeftToRight) {
    insert_sorted(st.rules, Rule{eq_index, eq.lhs, eq.rhs});
  } else {
    insert_sorted(st.rules, Rule{eq_index, eq.rhs, eq.lhs});
    st.history.at(eq_index) = mirror(st.history.at(eq_index));
  }
  return st;
}

CompletionState simplify(const CompletionState& st0, int eq_index, Side side) {
  const Equation eq = need_equation(st0, eq_index);
  const Term& old = side == Side::Left ? eq.lhs : eq.rhs;
  std::optional<Step> step = find_redex(st0.rules, old);
  if (!step)
    throw InputError("equation " + std::to_string(eq_index) +
                     (side == Side::Left ? " left" : " right") +
                     " side is in normal form");
  CompletionState st = st0;
  int m = st.next_index++;
  erase_equation(st.equations, eq_index);
  if (side == Side::Left) {
    st.equations.push_back(Equation{m, step->target, eq.rhs});
    st.history.emplace(
        m, HistoryEntry{m, step->target, HistOp::Backward, step->ref, eq.lhs,
                        HistOp::Forward, eq_index, eq.rhs});
  } else {
    st.equations.push_back(Equation{m, eq.lhs, step->target});
    st.history.emplace(
        m, HistoryEntry{m, eq.lhs, HistOp::Forward, eq_index, eq.rhs,
                        HistOp::Forward, step->ref, step->target});
  }
  return st;
}

CompletionState delete_equation(const CompletionState& st0, int eq_index) {
  const Equation eq = need_equation(st0, eq_index);
  if (eq.lhs != eq.rhs)
    throw InputError("equation " + std::to_string(eq_index) +
                     " is not trivial");
  for (const auto& [idx, entry] : st0.history)
    if (idx != eq_index && (entry.ref1 == eq_index || entry.ref2 == eq_index))
      throw HistoryError("record " + std::to_string(idx) +
                         " still references deleted equation " +
                         std::to_string(eq_index));
  CompletionState st = st0;
  erase_equation(st.equations, eq_index);
  st.history.erase(eq_index);
  return st;
}

CompletionState compose(const CompletionState& st0, int rule_index) {
  const Rule rule = need_rule(st0, rule_index);
  std::optional<Step> step = find_redex(st0.rules, rule.rhs);
  if (!step)
    throw InputError("rule " + std::to_string(rule_index) +
                     " right side is in normal form");
  CompletionState st = st0;
  int m = st.next_index++;
  erase_rule(st.rules, rule_index);
  insert_sorted(st.rules, Rule{m, rule.lhs, step->target});
  st.history.emplace(
      m, HistoryEntry{m, rule.lhs, HistOp::Forward, rule_index, rule.rhs,
                      HistOp::Forward, step->ref, step->target});
  return st;
}

CompletionState collapse(const CompletionState& st0, int rule_index) {
  const Rule rule = need_rule(st0, rule_index);
  Trs others;
  for (const Rule& r : st0.rules)
    if (r.index != rule_index) others.push_back(r);
  std::optional<Step> step = find_redex(others, rule.lhs);
  if (!step)
    throw InputError("rule " + std::to_string(rule_index) +
                     " left side is irreducible by the other rules");
  CompletionState st = st0;
  int m = st.next_index++;
  erase_rule(st.rules, rule_index);
  st.equations.push_back(Equation{m, step->target, rule.rhs});
  st.history.emplace(
      m, HistoryEntry{m, step->target, HistOp::Backward, step->ref, rule.lhs,
                      HistOp::Forward, rule_index, rule.rhs});
  return st;
}

bool success_check(const CompletionState& st, int fuel) {
  if (!st.equations.empty()) return false;
  CpCheck ck = all_cps_joinable(st.rules, fuel);
  if (ck.status == CpCheck::Status::FuelExhausted)
    throw FuelError("critical-pair joinability undecided within fuel");
  return ck.status == CpCheck::Status::AllJoinable;
}

namespace {

bool initial_shape(const HistoryEntry& e) {
  return (e.op1 == HistOp::Forward && e.ref1 == e.index &&
          e.op2 == HistOp::Equal && e.ref2 == 0 && e.middle == e.right) ||
         (e.op1 == HistOp::Equal && e.ref1 == 0 && e.op2 == HistOp::Backward &&
          e.ref2 == e.index && e.middle == e.left);
}

void validate_ref(const CompletionState& st, const HistoryEntry& e, HistOp op,
                  int ref) {
  if (op == HistOp::Equal) {
    if (ref != 0)
      throw HistoryError("record " + std::to_string(e.index) +
                         " pairs an equality arrow with reference " +
                         std::to_string(ref));
    return;
  }
  if (ref == 0)
    throw HistoryError("record " + std::to_string(e.index) +
                       " pairs a rewrite arrow with reference 0");
  if (ref >= e.index && !initial_shape(e))
    throw HistoryError("record " + std::to_string(e.index) +
                       " references forward to " + std::to_string(ref));
  if (!st.history.count(ref))
    throw HistoryError("record " + std::to_string(e.index) +
                       " references missing record " + std::to_string(ref));
}

}  // namespace

void validate_state(const CompletionState& st) {
  validate_unique_indices(st.equations);
  validate_unique_indices(st.rules);
  std::set<int> used;
  for (const Equation& e : st.equations) used.insert(e.index);
  for (const Rule& r : st.rules)
    if (!used.insert(r.index).second)
      throw HistoryError("index " + std::to_string(r.index) +
                         " is both an equation and a rule");
  for (int i : used) {
    if (i >= st.next_index)
      throw HistoryError("index " + std::to_string(i) +
                         " at or above the next fresh index");
    if (!st.history.count(i))
      throw HistoryError("no record for live index " + std::to_string(i));
  }
  for (const auto& [idx, e] : st.history) {
    if (e.index != idx)
      throw HistoryError("record keyed " + std::to_string(idx) +
                         " carries index " + std::to_string(e.index));
    if (idx <= 0 || idx >= st.next_index)
      throw HistoryError("record index " + std::to_string(idx) +
                         " out of range");
    validate_ref(st, e, e.op1, e.ref1);
    validate_ref(st, e, e.op2, e.ref2);
    if (e.op1 == HistOp::Equal && e.left != e.middle)
      throw HistoryError("record " + std::to_string(idx) +
                         " equates distinct terms on the left");
    if (e.op2 == HistOp::Equal && e.middle != e.right)
      throw HistoryError("record " + std::to_string(idx) +
                         " equates distinct terms on the right");
  }
  for (const Equation& e : st.equations) {
    const HistoryEntry& h = st.history.at(e.index);
    if (h.left != e.lhs || h.right != e.rhs)
      throw HistoryError("record " + std::to_string(e.index) +
                         " does not span its equation");
  }
  for (const Rule& r : st.rules) {
    const HistoryEntry& h = st.history.at(r.index);
    if (h.left != r.lhs || h.right != r.rhs)
      throw HistoryError("record " + std::to_string(r.index) +
                         " does not span its rule");
  }
}

History prune_history(const History& h, const Es& e0, const Trs& rules) {
  std::set<int> keep;
  for (const Equation& e : e0)
    if (h.count(e.index)) keep.insert(e.index);
  std::vector<int> work;
  for (const Rule& r : rules) {
    if (!h.count(r.index))
      throw HistoryError("no record for rule " + std::to_string(r.index));
    if (keep.insert(r.index).second) work.push_back(r.index);
  }
  while (!work.empty()) {
    const HistoryEntry& e = h.at(work.back());
    work.pop_back();
    for (int ref : {e.ref1, e.ref2}) {
      if (ref <= 0 || ref == e.index) continue;
      if (!h.count(ref))
        throw HistoryError("record " + std::to_string(e.index) +
                           " references missing record " +
                           std::to_string(ref));
      if (keep.insert(ref).second) work.push_back(ref);
    }
  }
  History out;
  for (const auto& [idx, entry] : h)
    if (keep.count(idx)) out.emplace(idx, entry);
  return out;
}

namespace {

struct Tracer {
  std::vector<std::string> lines;
  void add(const std::string& line) { lines.push_back(line); }
};

}  // namespace

RunResult complete(const Es& e0_in, const Precedence& prec,
                   const Limits& limits) {
  CompletionState st = init_completion(e0_in);
  Es e0 = st.equations;
  Tracer trace;
  int steps = 0;
  auto out_of_budget = [&]() { return steps >= limits.max_steps; };
  auto fail = [&](CompletionOutcome oc, int idx = 0) {
    return RunResult{oc,      false,    idx,        e0,
                     st.rules, st.history, trace.lines, prec};
  };

  for (;;) {
    if (!st.equations.empty()) {
      int cur = st.equations.front().index;
      for (Side side : {Side::Left, Side::Right}) {
        for (;;) {
          const Equation& eq = need_equation(st, cur);
          const Term& s = side == Side::Left ? eq.lhs : eq.rhs;
          if (!find_redex(st.rules, s)) break;
          if (out_of_budget()) return fail(CompletionOutcome::StepLimit);
          int m = st.next_index;
          st = simplify(st, cur, side);
          ++steps;
          trace.add(std::string(side == Side::Left ? "simplify-l " : "simplify-r ") +
                    std::to_string(cur) + " -> " + std::to_string(m));
          cur = m;
        }
      }
      const Equation& eq = need_equation(st, cur);
      if (eq.lhs == eq.rhs) {
        if (out_of_budget()) return fail(CompletionOutcome::StepLimit);
        st = delete_equation(st, cur);
        ++steps;
        trace.add("delete " + std::to_string(cur));
        continue;
      }
      if (out_of_budget()) return fail(CompletionOutcome::StepLimit);
      Orientation o = orient(prec, eq.lhs, eq.rhs);
      if (o == Orientation::Unorientable)
        return fail(CompletionOutcome::Unorientable, cur);
      st = orient(st, cur, prec);
      ++steps;
      trace.add((o == Orientation::LeftToRight ? "orient-l " : "orient-r ") +
                std::to_string(cur));
      int new_rule = cur;

      for (;;) {
        int target = 0;
        for (const Rule& r : st.rules)
          if (find_redex(st.rules, r.rhs)) {
            target = r.index;
            break;
          }
        if (!target) break;
        if (out_of_budget()) return fail(CompletionOutcome::StepLimit);
        int m = st.next_index;
        st = compose(st, target);
        ++steps;
        trace.add("compose " + std::to_string(target) + " -> " +
                  std::to_string(m));
        if (target == new_rule) new_rule = m;
      }
      for (;;) {
        int target = 0;
        for (const Rule& r : st.rules) {
          Trs others;
          for (const Rule& o2 : st.rules)
            if (o2.index != r.index) others.push_back(o2);
          if (find_redex(others, r.lhs)) {
            target = r.index;
            break;
          }
        }
        if (!target) break;
        if (out_of_budget()) return fail(CompletionOutcome::StepLimit);
        int m = st.next_index;
        st = collapse(st, target);
        ++steps;
        trace.add("collapse " + std::to_string(target) + " -> " +
                  std::to_string(m));
        if (target == new_rule) new_rule = 0;
      }
      if (new_rule && find_rule(st.rules, new_rule)) {
        for (const Overlap& ov : overlaps(st.rules)) {
          if (ov.inner_index != new_rule && ov.outer_index != new_rule)
            continue;
          CriticalPair cp = overlap_to_cp(st.rules, ov);
          if (cp.left == cp.right) continue;
          if (out_of_budget()) return fail(CompletionOutcome::StepLimit);
          int m = st.next_index;
          st = deduce(st, cp);
          ++steps;
          trace.add("deduce " + std::to_string(ov.inner_index) + "," +
                    std::to_string(ov.outer_index) + " -> " +
                    std::to_string(m));
        }
      }
    } else {
      CpCheck ck = all_cps_joinable(st.rules, limits.fuel);
      if (ck.status == CpCheck::Status::AllJoinable) break;
      if (ck.status == CpCheck::Status::FuelExhausted)
        return fail(CompletionOutcome::FuelExhausted);
      if (out_of_budget()) return fail(CompletionOutcome::StepLimit);
      int m = st.next_index;
      st = deduce(st, *ck.witness);
      ++steps;
      trace.add("deduce " + std::to_string(ck.witness->left_step.ref) + "," +
                std::to_string(ck.witness->right_step.ref) + " -> " +
                std::to_string(m));
    }
  }

  History pruned = prune_history(st.history, e0, st.rules);
  return RunResult{CompletionOutcome::Success, true,        0,    e0,
                   st.rules,                   std::move(pruned), trace.lines,
                   prec};
}

}  // namespace kbrec
