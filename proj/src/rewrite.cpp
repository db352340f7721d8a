#include "kbrec/rewrite.hpp"

#include <set>

namespace kbrec {

const Rule* find_rule(const Trs& trs, int index) {
  for (const Rule& r : trs)
    if (r.index == index) return &r;
  return nullptr;
}

const Equation* find_equation(const Es& es, int index) {
  for (const Equation& e : es)
    if (e.index == index) return &e;
  return nullptr;
}

namespace {

template <typename Xs>
void check_unique(const Xs& xs, const char* what) {
  std::set<int> seen;
  for (const auto& x : xs)
    if (!seen.insert(x.index).second)
      throw InputError(std::string("duplicate ") + what + " index " +
                       std::to_string(x.index));
}

}  // namespace

void validate_unique_indices(const Trs& trs) { check_unique(trs, "rule"); }
void validate_unique_indices(const Es& es) { check_unique(es, "equation"); }

namespace {

// Post-order search; fills pos/rule/subst for the innermost-leftmost redex
// with the lowest applicable rule index.
bool redex_rec(const Trs& trs, const Term& t, Position& pos, const Rule** rule,
               Subst* subst) {
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    pos.push_back(i + 1);
    if (redex_rec(trs, t.args()[i], pos, rule, subst)) return true;
    pos.pop_back();
  }
  const Rule* best = nullptr;
  Subst best_subst;
  for (const Rule& r : trs) {
    if (best && r.index >= best->index) continue;
    if (auto m = match(r.lhs, t)) {
      best = &r;
      best_subst = std::move(*m);
    }
  }
  if (!best) return false;
  *rule = best;
  *subst = std::move(best_subst);
  return true;
}

}  // namespace

std::optional<Step> find_redex(const Trs& trs, const Term& t) {
  Position pos;
  const Rule* rule = nullptr;
  Subst subst;
  if (!redex_rec(trs, t, pos, &rule, &subst)) return std::nullopt;
  Term target = replace_at(t, pos, apply_subst(subst, rule->rhs));
  return Step{t,           std::move(target), rule->index, StepKind::Rule,
              StepDir::LR, std::move(pos),    std::move(subst)};
}

std::vector<Step> enumerate_steps(const Trs& trs, const Term& t) {
  std::vector<Step> out;
  for (const Position& pos : positions(t)) {
    Term sub = subterm_at(t, pos);
    for (const Rule& r : trs) {
      if (auto m = match(r.lhs, sub)) {
        Term target = replace_at(t, pos, apply_subst(*m, r.rhs));
        out.push_back(Step{t, std::move(target), r.index, StepKind::Rule,
                           StepDir::LR, pos, std::move(*m)});
      }
    }
  }
  return out;
}

NormalizeResult normalize(const Trs& trs, const Term& t, int fuel) {
  NormalizeResult res{t, {}};
  for (;;) {
    std::optional<Step> step = find_redex(trs, res.term);
    if (!step) return res;
    if (static_cast<int>(res.steps.size()) >= fuel)
      throw FuelError("no normal form of " + to_string(t) + " within " +
                      std::to_string(fuel) + " steps");
    res.term = step->target;
    res.steps.push_back(std::move(*step));
  }
}

std::optional<Join> joinable(const Trs& trs, const Term& s, const Term& t,
                             int fuel) {
  NormalizeResult ns = normalize(trs, s, fuel);
  NormalizeResult nt = normalize(trs, t, fuel);
  if (ns.term != nt.term) return std::nullopt;
  return Join{std::move(ns.steps), std::move(nt.steps), std::move(ns.term)};
}

CheckResult check_step(const Trs& rules, const Es& eqs, const Step& step) {
  const Term* lhs = nullptr;
  const Term* rhs = nullptr;
  if (step.kind == StepKind::Rule) {
    const Rule* r = find_rule(rules, step.ref);
    if (!r)
      return CheckResult::fail("no rule with index " +
                               std::to_string(step.ref));
    if (step.dir != StepDir::LR)
      return CheckResult::fail("rule " + std::to_string(step.ref) +
                               " applied right to left");
    lhs = &r->lhs;
    rhs = &r->rhs;
  } else {
    const Equation* e = find_equation(eqs, step.ref);
    if (!e)
      return CheckResult::fail("no equation with index " +
                               std::to_string(step.ref));
    lhs = step.dir == StepDir::LR ? &e->lhs : &e->rhs;
    rhs = step.dir == StepDir::LR ? &e->rhs : &e->lhs;
  }
  Term redex;
  try {
    redex = subterm_at(step.source, step.pos);
  } catch (const InputError&) {
    return CheckResult::fail("position " + to_string(step.pos) +
                             " out of range in " + to_string(step.source));
  }
  if (redex != apply_subst(step.subst, *lhs))
    return CheckResult::fail("redex at " + to_string(step.pos) + " in " +
                             to_string(step.source) +
                             " is not the instantiated side of " +
                             std::to_string(step.ref));
  if (step.target != replace_at(step.source, step.pos,
                                apply_subst(step.subst, *rhs)))
    return CheckResult::fail("target " + to_string(step.target) +
                             " does not follow from applying " +
                             std::to_string(step.ref) + " at " +
                             to_string(step.pos));
  return CheckResult::pass();
}

CheckResult check_conversion(const Es& eqs, const Conversion& conv,
                             const Term& s, const Term& t) {
  if (conv.start != s)
    return CheckResult::fail("conversion starts at " + to_string(conv.start) +
                             ", expected " + to_string(s));
  Term cur = s;
  for (std::size_t i = 0; i < conv.steps.size(); ++i) {
    const Step& step = conv.steps[i];
    if (step.kind != StepKind::Equation)
      return CheckResult::fail("step " + std::to_string(i + 1) +
                               " is not an equation step");
    if (step.source != cur)
      return CheckResult::fail("step " + std::to_string(i + 1) +
                               " starts at " + to_string(step.source) +
                               ", expected " + to_string(cur));
    if (CheckResult c = check_step({}, eqs, step); !c)
      return CheckResult::fail("step " + std::to_string(i + 1) + ": " +
                               c.reason);
    cur = step.target;
  }
  if (cur != t)
    return CheckResult::fail("conversion ends at " + to_string(cur) +
                             ", expected " + to_string(t));
  return CheckResult::pass();
}

std::optional<std::pair<Position, Subst>> step_witness(const Term& from_side,
                                                       const Term& to_side,
                                                       const Term& from,
                                                       const Term& to) {
  for (const Position& pos : positions(from)) {
    Term sub = subterm_at(from, pos);
    if (auto m = match(from_side, sub)) {
      if (replace_at(from, pos, apply_subst(*m, to_side)) == to)
        return std::make_pair(pos, std::move(*m));
    }
  }
  return std::nullopt;
}

}  // namespace kbrec
