#include "kbrec/certify.hpp"

#include <set>

namespace kbrec {

Verdict verify_convergence(const Trs& rules, const Precedence& prec,
                           int fuel) {
  for (const Rule& r : rules)
    if (!lpo_gt(prec, r.lhs, r.rhs))
      return Verdict::reject("rule " + std::to_string(r.index) +
                             " does not decrease under the precedence");
  CpCheck ck = all_cps_joinable(rules, fuel);
  if (ck.status == CpCheck::Status::NonJoinable)
    return Verdict::reject(
        "critical pair " + to_string(ck.witness->left) + " / " +
        to_string(ck.witness->right) + " of rules " +
        std::to_string(ck.witness->left_step.ref) + "," +
        std::to_string(ck.witness->right_step.ref) + " is not joinable");
  if (ck.status == CpCheck::Status::FuelExhausted)
    return Verdict::reject("fuel exhausted while joining critical pairs");
  return Verdict::ok();
}

Verdict verify_e_subset_r(const Es& e0, const Trs& rules, int fuel) {
  for (const Equation& e : e0) {
    try {
      if (!joinable(rules, e.lhs, e.rhs, fuel))
        return Verdict::reject("equation " + std::to_string(e.index) +
                               " has distinct normal forms");
    } catch (const FuelError&) {
      return Verdict::reject("fuel exhausted while normalizing equation " +
                             std::to_string(e.index));
    }
  }
  return Verdict::ok();
}

namespace {

Verdict verify_conversions(const Es& e0, const Trs& rules,
                           const ConversionsJust& just) {
  std::set<int> rule_indices;
  for (const Rule& r : rules) rule_indices.insert(r.index);
  for (const auto& [idx, conv] : just.per_rule)
    if (!rule_indices.count(idx))
      return Verdict::reject("conversion for unknown rule " +
                             std::to_string(idx));
  for (const Rule& r : rules) {
    auto it = just.per_rule.find(r.index);
    if (it == just.per_rule.end())
      return Verdict::reject("no conversion for rule " +
                             std::to_string(r.index));
    if (CheckResult c = check_conversion(e0, it->second, r.lhs, r.rhs); !c)
      return Verdict::reject("rule " + std::to_string(r.index) + ": " +
                             c.reason);
  }
  return Verdict::ok();
}

Verdict verify_records(const Es& e0, const Trs& rules,
                       const HistoryJust& just) {
  // Equations a record's steps may use: the initial ones plus every record
  // already verified. Initial indices keep the initial sides.
  std::map<int, Equation> usable;
  for (const Equation& e : e0) usable.emplace(e.index, e);

  int prev = 0;
  for (std::size_t k = 0; k < just.records.size(); ++k) {
    const AuxiliaryRecord& rec = just.records[k];
    int idx = rec.equation.index;
    std::string where = "record " + std::to_string(idx);
    if (idx <= prev)
      return Verdict::reject(where + " does not increase the index order");
    prev = idx;
    if (rec.justification.steps.size() > 2)
      return Verdict::reject(where + " has more than two steps");
    if (rec.justification.start != rec.equation.lhs)
      return Verdict::reject(where +
                             " justification does not start at its left side");
    Term cur = rec.justification.start;
    for (std::size_t j = 0; j < rec.justification.steps.size(); ++j) {
      const Step& st = rec.justification.steps[j];
      std::string at = where + " step " + std::to_string(j + 1);
      if (st.kind != StepKind::Equation)
        return Verdict::reject(at + " is not an equation step");
      auto u = usable.find(st.ref);
      if (u == usable.end())
        return Verdict::reject(at + " references unavailable index " +
                               std::to_string(st.ref));
      if (st.source != cur)
        return Verdict::reject(at + " does not chain");
      if (CheckResult c = check_step({}, {u->second}, st); !c)
        return Verdict::reject(at + ": " + c.reason);
      cur = st.target;
    }
    if (cur != rec.equation.rhs)
      return Verdict::reject(where +
                             " justification does not end at its right side");
    if (const Equation* init = find_equation(e0, idx)) {
      bool same = rec.equation.lhs == init->lhs && rec.equation.rhs == init->rhs;
      bool swapped =
          rec.equation.lhs == init->rhs && rec.equation.rhs == init->lhs;
      if (!same && !swapped)
        return Verdict::reject(where +
                               " reuses an initial index with different sides");
    } else {
      usable.emplace(idx, rec.equation);
    }
  }

  std::map<int, const AuxiliaryRecord*> by_index;
  for (const AuxiliaryRecord& rec : just.records)
    by_index.emplace(rec.equation.index, &rec);
  for (const Rule& r : rules) {
    auto it = by_index.find(r.index);
    if (it == by_index.end())
      return Verdict::reject("no record for rule " + std::to_string(r.index));
    const Equation& eq = it->second->equation;
    if (eq.lhs != r.lhs || eq.rhs != r.rhs)
      return Verdict::reject("record " + std::to_string(r.index) +
                             " does not span its rule");
  }
  return Verdict::ok();
}

// Structural hygiene shared by every claim: consistent signature, declared
// symbols, no reserved names, no variable/function name clashes, unique
// positive indices.
class ShapeChecker {
 public:
  explicit ShapeChecker(const Certificate& cert) : cert_(cert) {}

  Verdict run() {
    for (const Symbol& sym : cert_.signature) {
      if (sym.name.empty()) return Verdict::reject("empty symbol name");
      if (sym.name.find(kReservedChar) != std::string::npos)
        return Verdict::reject("reserved character in symbol '" + sym.name +
                               "'");
      try {
        sig_.declare(sym.name, sym.arity);
      } catch (const InputError& e) {
        return Verdict::reject(e.what());
      }
    }
    if (Verdict v = check_es(cert_.e0, "initial equation"); !v.accepted)
      return v;
    if (const auto* c = std::get_if<CompletionClaim>(&cert_.claim)) {
      if (Verdict v = check_claim_base(c->rules, c->prec); !v.accepted)
        return v;
    } else if (const auto* p = std::get_if<ProofClaim>(&cert_.claim)) {
      if (Verdict v = check_claim_base(p->rules, p->prec); !v.accepted)
        return v;
      if (Verdict v = check_term(p->s); !v.accepted) return v;
      if (Verdict v = check_term(p->t); !v.accepted) return v;
      if (p->conversion.has_value() != (p->evidence == EvidenceKind::Conversion))
        return Verdict::reject("conversion evidence mismatch");
      if (p->join.has_value() != (p->evidence == EvidenceKind::Join))
        return Verdict::reject("join evidence mismatch");
      if (p->conversion)
        if (Verdict v = check_conv_terms(*p->conversion); !v.accepted) return v;
      if (p->join) {
        for (const auto* seq : {&p->join->left, &p->join->right})
          for (const Step& st : *seq)
            if (Verdict v = check_step_terms(st); !v.accepted) return v;
        if (Verdict v = check_term(p->join->meet); !v.accepted) return v;
      }
    } else if (const auto* d = std::get_if<DisproofClaim>(&cert_.claim)) {
      if (Verdict v = check_claim_base(d->rules, d->prec); !v.accepted)
        return v;
      if (Verdict v = check_term(d->s); !v.accepted) return v;
      if (Verdict v = check_term(d->t); !v.accepted) return v;
    }
    if (const auto* cj = std::get_if<ConversionsJust>(&cert_.justification)) {
      for (const auto& [idx, conv] : cj->per_rule) {
        if (idx <= 0) return Verdict::reject("non-positive conversion index");
        if (Verdict v = check_conv_terms(conv); !v.accepted) return v;
      }
    } else if (const auto* hj = std::get_if<HistoryJust>(&cert_.justification)) {
      for (const AuxiliaryRecord& rec : hj->records) {
        if (rec.equation.index <= 0)
          return Verdict::reject("non-positive record index");
        if (Verdict v = check_term(rec.equation.lhs); !v.accepted) return v;
        if (Verdict v = check_term(rec.equation.rhs); !v.accepted) return v;
        if (Verdict v = check_conv_terms(rec.justification); !v.accepted)
          return v;
      }
    }
    return Verdict::ok();
  }

 private:
  Verdict check_term(const Term& t) {
    if (t.is_var()) {
      if (t.name().empty()) return Verdict::reject("empty variable name");
      if (t.name().find(kReservedChar) != std::string::npos)
        return Verdict::reject("reserved character in variable '" + t.name() +
                               "'");
      if (sig_.contains(t.name()))
        return Verdict::reject("name '" + t.name() +
                               "' used both as variable and function symbol");
      return Verdict::ok();
    }
    auto a = sig_.arity(t.name());
    if (!a)
      return Verdict::reject("undeclared function symbol '" + t.name() + "'");
    if (*a != t.args().size())
      return Verdict::reject("symbol '" + t.name() + "' used with arity " +
                             std::to_string(t.args().size()) + ", declared " +
                             std::to_string(*a));
    for (const Term& arg : t.args())
      if (Verdict v = check_term(arg); !v.accepted) return v;
    return Verdict::ok();
  }

  Verdict check_step_terms(const Step& st) {
    if (st.ref <= 0) return Verdict::reject("non-positive step reference");
    if (Verdict v = check_term(st.source); !v.accepted) return v;
    if (Verdict v = check_term(st.target); !v.accepted) return v;
    for (const auto& [name, t] : st.subst.bindings()) {
      if (name.empty() || name.find(kReservedChar) != std::string::npos)
        return Verdict::reject("bad substitution variable '" + name + "'");
      if (Verdict v = check_term(t); !v.accepted) return v;
    }
    return Verdict::ok();
  }

  Verdict check_conv_terms(const Conversion& conv) {
    if (Verdict v = check_term(conv.start); !v.accepted) return v;
    for (const Step& st : conv.steps)
      if (Verdict v = check_step_terms(st); !v.accepted) return v;
    return Verdict::ok();
  }

  Verdict check_es(const Es& es, const char* what) {
    std::set<int> seen;
    for (const Equation& e : es) {
      if (e.index <= 0)
        return Verdict::reject(std::string("non-positive ") + what + " index");
      if (!seen.insert(e.index).second)
        return Verdict::reject(std::string("duplicate ") + what + " index " +
                               std::to_string(e.index));
      if (Verdict v = check_term(e.lhs); !v.accepted) return v;
      if (Verdict v = check_term(e.rhs); !v.accepted) return v;
    }
    return Verdict::ok();
  }

  Verdict check_claim_base(const Trs& rules, const Precedence& prec) {
    std::set<int> seen;
    for (const Rule& r : rules) {
      if (r.index <= 0) return Verdict::reject("non-positive rule index");
      if (!seen.insert(r.index).second)
        return Verdict::reject("duplicate rule index " +
                               std::to_string(r.index));
      if (Verdict v = check_term(r.lhs); !v.accepted) return v;
      if (Verdict v = check_term(r.rhs); !v.accepted) return v;
    }
    for (const auto& [a, b] : prec.pairs())
      if (!sig_.contains(a) || !sig_.contains(b))
        return Verdict::reject("precedence over undeclared symbol '" +
                               (sig_.contains(a) ? b : a) + "'");
    return Verdict::ok();
  }

  const Certificate& cert_;
  Signature sig_;
};

struct ClaimParts {
  const Trs* rules;
  const Precedence* prec;
};

ClaimParts claim_parts(const Claim& claim) {
  if (const auto* c = std::get_if<CompletionClaim>(&claim))
    return {&c->rules, &c->prec};
  if (const auto* p = std::get_if<ProofClaim>(&claim))
    return {&p->rules, &p->prec};
  const auto* d = std::get_if<DisproofClaim>(&claim);
  return {&d->rules, &d->prec};
}

Verdict completion_checks(const Certificate& cert, int fuel) {
  ClaimParts parts = claim_parts(cert.claim);
  if (Verdict v = verify_convergence(*parts.rules, *parts.prec, fuel);
      !v.accepted)
    return v;
  if (Verdict v = verify_e_subset_r(cert.e0, *parts.rules, fuel); !v.accepted)
    return v;
  return verify_r_subset_e(cert.e0, *parts.rules, cert.justification, fuel);
}

}  // namespace

Verdict verify_r_subset_e(const Es& e0, const Trs& rules,
                          const Justification& just, int /*fuel*/) {
  if (const auto* cj = std::get_if<ConversionsJust>(&just))
    return verify_conversions(e0, rules, *cj);
  return verify_records(e0, rules, std::get<HistoryJust>(just));
}

Verdict verify_certificate(const Certificate& cert, int fuel) {
  if (Verdict v = ShapeChecker(cert).run(); !v.accepted) return v;

  if (std::get_if<CompletionClaim>(&cert.claim))
    return completion_checks(cert, fuel);

  if (const auto* p = std::get_if<ProofClaim>(&cert.claim)) {
    switch (p->evidence) {
      case EvidenceKind::Conversion: {
        // a conversion over the initial equations proves the goal by itself
        if (CheckResult c = check_conversion(cert.e0, *p->conversion, p->s, p->t);
            !c)
          return Verdict::reject("conversion evidence: " + c.reason);
        return Verdict::ok();
      }
      case EvidenceKind::Join: {
        if (Verdict v = completion_checks(cert, fuel); !v.accepted) return v;
        Term cur = p->s;
        for (const Step& st : p->join->left) {
          if (st.source != cur)
            return Verdict::reject("join evidence: left steps do not chain");
          if (CheckResult c = check_step(p->rules, {}, st); !c)
            return Verdict::reject("join evidence: " + c.reason);
          cur = st.target;
        }
        if (cur != p->join->meet)
          return Verdict::reject("join evidence: left side misses the meet");
        cur = p->t;
        for (const Step& st : p->join->right) {
          if (st.source != cur)
            return Verdict::reject("join evidence: right steps do not chain");
          if (CheckResult c = check_step(p->rules, {}, st); !c)
            return Verdict::reject("join evidence: " + c.reason);
          cur = st.target;
        }
        if (cur != p->join->meet)
          return Verdict::reject("join evidence: right side misses the meet");
        return Verdict::ok();
      }
      case EvidenceKind::Nf: {
        if (Verdict v = completion_checks(cert, fuel); !v.accepted) return v;
        try {
          if (!joinable(p->rules, p->s, p->t, fuel))
            return Verdict::reject("goal sides have distinct normal forms");
        } catch (const FuelError&) {
          return Verdict::reject("fuel exhausted while normalizing the goal");
        }
        return Verdict::ok();
      }
    }
    return Verdict::reject("unknown evidence kind");
  }

  const auto* d = std::get_if<DisproofClaim>(&cert.claim);
  if (Verdict v = completion_checks(cert, fuel); !v.accepted) return v;
  try {
    if (joinable(d->rules, d->s, d->t, fuel))
      return Verdict::reject("goal sides join, so the disproof fails");
  } catch (const FuelError&) {
    return Verdict::reject("fuel exhausted while normalizing the goal");
  }
  return Verdict::ok();
}

}  // namespace kbrec
