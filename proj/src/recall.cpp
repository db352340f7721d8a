#include "kbrec/recall.hpp"

#include <algorithm>

namespace kbrec {

namespace {

// Sides recorded for an index: the initial equation's sides when the index
// is initial (even if that record was later mirrored by orientation),
// otherwise the record's own endpoints.
std::pair<Term, Term> sides_of(const History& h, const Es& e0, int ref) {
  if (const Equation* e = find_equation(e0, ref)) return {e->lhs, e->rhs};
  auto it = h.find(ref);
  if (it == h.end())
    throw HistoryError("no record for index " + std::to_string(ref));
  return {it->second.left, it->second.right};
}

// Re-expresses a step as an equation step relative to `sides`, keeping its
// position and substitution; throws if neither orientation fits.
Step normalize_step(const std::pair<Term, Term>& sides, const Step& st) {
  Term redex;
  try {
    redex = subterm_at(st.source, st.pos);
  } catch (const InputError&) {
    throw HistoryError("step position " + to_string(st.pos) +
                       " out of range in " + to_string(st.source));
  }
  for (StepDir dir : {StepDir::LR, StepDir::RL}) {
    const Term& from_side = dir == StepDir::LR ? sides.first : sides.second;
    const Term& to_side = dir == StepDir::LR ? sides.second : sides.first;
    if (redex == apply_subst(st.subst, from_side) &&
        st.target ==
            replace_at(st.source, st.pos, apply_subst(st.subst, to_side)))
      return Step{st.source, st.target,       st.ref, StepKind::Equation,
                  dir,       st.pos,          st.subst};
  }
  throw HistoryError("step from " + to_string(st.source) + " to " +
                     to_string(st.target) +
                     " does not fit the sides recorded for index " +
                     std::to_string(st.ref));
}

// One conversion step witnessing `from -> to` by a single application of the
// sides recorded for `ref`; searched left-to-right first, then inverted,
// positions in pre-order.
Step make_half(const History& h, const Es& e0, int parent, int ref,
               const Term& from, const Term& to) {
  if (!find_equation(e0, ref)) {
    if (ref >= parent)
      throw HistoryError("record " + std::to_string(parent) +
                         " references forward to " + std::to_string(ref));
    if (!h.count(ref))
      throw HistoryError("record " + std::to_string(parent) +
                         " references missing record " + std::to_string(ref));
  }
  auto [l, r] = sides_of(h, e0, ref);
  if (auto w = step_witness(l, r, from, to))
    return Step{from,        to,       ref, StepKind::Equation,
                StepDir::LR, w->first, std::move(w->second)};
  if (auto w = step_witness(r, l, from, to))
    return Step{from,        to,       ref, StepKind::Equation,
                StepDir::RL, w->first, std::move(w->second)};
  throw HistoryError("record " + std::to_string(parent) + ": index " +
                     std::to_string(ref) + " does not rewrite " +
                     to_string(from) + " to " + to_string(to));
}

void append_half(std::vector<Step>& steps, const History& h, const Es& e0,
                 int parent, HistOp op, int ref, const Term& from,
                 const Term& to) {
  if (op == HistOp::Equal) {
    if (ref != 0)
      throw HistoryError("record " + std::to_string(parent) +
                         " pairs an equality arrow with reference " +
                         std::to_string(ref));
    if (from != to)
      throw HistoryError("record " + std::to_string(parent) +
                         " equates distinct instances");
    return;  // dropped
  }
  if (ref == 0)
    throw HistoryError("record " + std::to_string(parent) +
                       " pairs a rewrite arrow with reference 0");
  if (from == to) return;  // dropped
  steps.push_back(make_half(h, e0, parent, ref, from, to));
}

}  // namespace

Conversion join_to_conversion(const History& h, const Es& e0,
                              const Join& join) {
  Conversion out;
  out.start = join.left.empty() ? join.meet : join.left.front().source;
  for (const Step& st : join.left) {
    if (st.source == st.target) continue;
    out.steps.push_back(normalize_step(sides_of(h, e0, st.ref), st));
  }
  for (auto it = join.right.rbegin(); it != join.right.rend(); ++it) {
    if (it->source == it->target) continue;
    Step reversed = *it;
    std::swap(reversed.source, reversed.target);
    out.steps.push_back(
        normalize_step(sides_of(h, e0, reversed.ref), reversed));
  }
  return out;
}

Conversion expand_step(const History& h, const Es& e0, const Step& st) {
  if (st.source == st.target) return Conversion{st.source, {}};
  if (find_equation(e0, st.ref))
    return Conversion{st.source, {normalize_step(sides_of(h, e0, st.ref), st)}};
  auto it = h.find(st.ref);
  if (it == h.end())
    throw HistoryError("no record for index " + std::to_string(st.ref));
  const HistoryEntry& en = it->second;

  // Travel orientation of the step relative to the record's endpoints; also
  // validates that the endpoints fit the record.
  bool travel_lr =
      normalize_step({en.left, en.right}, st).dir == StepDir::LR;
  Term mid = replace_at(st.source, st.pos, apply_subst(st.subst, en.middle));

  Conversion out{st.source, {}};
  if (travel_lr) {
    append_half(out.steps, h, e0, st.ref, en.op1, en.ref1, st.source, mid);
    append_half(out.steps, h, e0, st.ref, en.op2, en.ref2, mid, st.target);
  } else {
    append_half(out.steps, h, e0, st.ref, en.op2, en.ref2, st.source, mid);
    append_half(out.steps, h, e0, st.ref, en.op1, en.ref1, mid, st.target);
  }
  return out;
}

Conversion recall(const History& h, const Es& e0, const Join& join) {
  Conversion conv = join_to_conversion(h, e0, join);
  for (;;) {
    std::size_t i = 0;
    while (i < conv.steps.size() && find_equation(e0, conv.steps[i].ref)) ++i;
    if (i == conv.steps.size()) break;
    Conversion sub = expand_step(h, e0, conv.steps[i]);
    conv.steps.erase(conv.steps.begin() + static_cast<std::ptrdiff_t>(i));
    conv.steps.insert(conv.steps.begin() + static_cast<std::ptrdiff_t>(i),
                      sub.steps.begin(), sub.steps.end());
  }
  return conv;
}

std::vector<AuxiliaryRecord> export_auxiliary(const History& h, const Es& e0) {
  std::vector<AuxiliaryRecord> out;
  for (const auto& [idx, en] : h) {
    Conversion conv{en.left, {}};
    append_half(conv.steps, h, e0, idx, en.op1, en.ref1, en.left, en.middle);
    append_half(conv.steps, h, e0, idx, en.op2, en.ref2, en.middle, en.right);
    out.push_back(AuxiliaryRecord{Equation{idx, en.left, en.right},
                                  std::move(conv)});
  }
  return out;
}

}  // namespace kbrec
