#include "kbrec/driver.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "kbrec/certfile.hpp"
#include "kbrec/critpairs.hpp"
#include "kbrec/recall.hpp"

namespace kbrec {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw InputError("write to '" + path + "' failed");
}

void collect_symbols(const Term& t, std::map<std::string, std::size_t>& sig) {
  if (t.is_var()) return;
  sig.emplace(t.name(), t.args().size());
  for (const Term& a : t.args()) collect_symbols(a, sig);
}

void collect_symbols(const Conversion& conv,
                     std::map<std::string, std::size_t>& sig) {
  collect_symbols(conv.start, sig);
  for (const Step& st : conv.steps) {
    collect_symbols(st.target, sig);
    for (const auto& [name, t] : st.subst.bindings()) collect_symbols(t, sig);
  }
}

Precedence& claim_prec(Certificate& cert) {
  if (auto* c = std::get_if<CompletionClaim>(&cert.claim)) return c->prec;
  if (auto* p = std::get_if<ProofClaim>(&cert.claim)) return p->prec;
  return std::get<DisproofClaim>(cert.claim).prec;
}

// Signature and precedence restricted to what the certificate's own terms
// mention; the shape checker rejects anything undeclared.
void finish_certificate(Certificate& cert, const Precedence& prec) {
  std::map<std::string, std::size_t> sig;
  for (const Equation& e : cert.e0) {
    collect_symbols(e.lhs, sig);
    collect_symbols(e.rhs, sig);
  }
  auto walk_rules = [&sig](const Trs& rules) {
    for (const Rule& r : rules) {
      collect_symbols(r.lhs, sig);
      collect_symbols(r.rhs, sig);
    }
  };
  if (auto* c = std::get_if<CompletionClaim>(&cert.claim)) {
    walk_rules(c->rules);
  } else if (auto* p = std::get_if<ProofClaim>(&cert.claim)) {
    walk_rules(p->rules);
    collect_symbols(p->s, sig);
    collect_symbols(p->t, sig);
    if (p->conversion) collect_symbols(*p->conversion, sig);
    if (p->join) {
      collect_symbols(p->join->meet, sig);
      for (const Step& st : p->join->left) {
        collect_symbols(st.target, sig);
        for (const auto& [name, t] : st.subst.bindings())
          collect_symbols(t, sig);
      }
      for (const Step& st : p->join->right) {
        collect_symbols(st.target, sig);
        for (const auto& [name, t] : st.subst.bindings())
          collect_symbols(t, sig);
      }
    }
  } else {
    auto& d = std::get<DisproofClaim>(cert.claim);
    walk_rules(d.rules);
    collect_symbols(d.s, sig);
    collect_symbols(d.t, sig);
  }
  if (auto* cj = std::get_if<ConversionsJust>(&cert.justification)) {
    for (const auto& [idx, conv] : cj->per_rule) collect_symbols(conv, sig);
  } else {
    for (const AuxiliaryRecord& rec :
         std::get<HistoryJust>(cert.justification).records) {
      collect_symbols(rec.equation.lhs, sig);
      collect_symbols(rec.equation.rhs, sig);
      collect_symbols(rec.justification, sig);
    }
  }
  cert.signature.clear();
  for (const auto& [name, arity] : sig)
    cert.signature.push_back(Symbol{name, arity});
  std::vector<std::pair<std::string, std::string>> kept;
  for (const auto& [a, b] : prec.pairs())
    if (sig.count(a) && sig.count(b)) kept.emplace_back(a, b);
  // restriction of a transitive closure to a symbol subset stays closed
  claim_prec(cert) = Precedence::from_pairs(kept);
}

Justification build_justification(const RunResult& run, Style style) {
  if (style == Style::History) return HistoryJust{export_auxiliary(run.history, run.e0)};
  ConversionsJust cj;
  for (const Rule& r : run.rules) {
    Step step;
    step.source = r.lhs;
    step.target = r.rhs;
    step.ref = r.index;
    step.kind = StepKind::Rule;
    step.dir = StepDir::LR;
    Join join{{step}, {}, r.rhs};
    cj.per_rule.emplace(r.index, recall(run.history, run.e0, join));
  }
  return cj;
}

std::string describe_failure(const RunResult& run) {
  switch (run.outcome) {
    case CompletionOutcome::Unorientable:
      return "cannot orient equation " +
             std::to_string(run.unorientable_index);
    case CompletionOutcome::StepLimit:
      return "inference budget exhausted";
    case CompletionOutcome::FuelExhausted:
      return "rewrite fuel exhausted";
    case CompletionOutcome::Success:
      break;
  }
  return "";
}

void print_rules(const Trs& rules, std::ostream& out) {
  for (const Rule& r : rules)
    out << r.index << ": " << to_string(r.lhs) << " -> " << to_string(r.rhs)
        << "\n";
}

Precedence pick_precedence(const Problem& problem, const DriverOptions& opts) {
  if (opts.has_prec) return parse_precedence(opts.prec_text);
  return problem.prec;
}

}  // namespace

Certificate build_completion_certificate(const RunResult& run, Style style) {
  Certificate cert;
  cert.e0 = run.e0;
  cert.claim = CompletionClaim{run.rules, {}};
  cert.justification = build_justification(run, style);
  finish_certificate(cert, run.prec);
  return cert;
}

Certificate build_proof_certificate(const RunResult& run, const Term& s,
                                    const Term& t, const Join& join,
                                    Style style) {
  Certificate cert;
  cert.e0 = run.e0;
  ProofClaim claim;
  claim.s = s;
  claim.t = t;
  claim.rules = run.rules;
  if (style == Style::Conversion) {
    claim.evidence = EvidenceKind::Conversion;
    claim.conversion = recall(run.history, run.e0, join);
  } else {
    claim.evidence = EvidenceKind::Join;
    claim.join = join;
  }
  cert.claim = std::move(claim);
  cert.justification = build_justification(run, style);
  finish_certificate(cert, run.prec);
  return cert;
}

Certificate build_disproof_certificate(const RunResult& run, const Term& s,
                                       const Term& t, Style style) {
  Certificate cert;
  cert.e0 = run.e0;
  cert.claim = DisproofClaim{s, t, run.rules, {}};
  cert.justification = build_justification(run, style);
  finish_certificate(cert, run.prec);
  return cert;
}

int cmd_complete(const std::string& path, const DriverOptions& opts,
                 std::ostream& out, std::ostream& err) {
  try {
    Problem problem = parse_problem(read_file(path));
    Precedence prec = pick_precedence(problem, opts);
    RunResult run =
        complete(problem.equations, prec, {opts.fuel, opts.max_steps});
    for (const std::string& line : run.trace) out << line << "\n";
    if (!run.success) {
      err << "NOT COMPLETED: " << describe_failure(run) << "\n";
      return run.outcome == CompletionOutcome::Unorientable ? kExitNo
                                                            : kExitError;
    }
    out << "COMPLETED\n";
    print_rules(run.rules, out);
    if (!opts.out_path.empty())
      write_file(opts.out_path,
                 serialize_certificate(
                     build_completion_certificate(run, opts.style)));
    return kExitYes;
  } catch (const Error& e) {
    err << "ERROR: " << e.what() << "\n";
    return kExitError;
  }
}

int cmd_prove(const std::string& path, const std::string& goal_text,
              const DriverOptions& opts, std::ostream& out,
              std::ostream& err) {
  try {
    Problem problem = parse_problem(read_file(path));
    auto [s, t] = parse_goal_text(goal_text, problem.vars, problem.sig);
    Precedence prec = pick_precedence(problem, opts);
    RunResult run =
        complete(problem.equations, prec, {opts.fuel, opts.max_steps});
    if (!run.success) {
      err << "UNKNOWN: " << describe_failure(run) << "\n";
      return kExitError;
    }
    std::optional<Join> join = joinable(run.rules, s, t, opts.fuel);
    if (join) {
      out << "YES: " << to_string(s) << " = " << to_string(t) << "\n";
      if (!opts.out_path.empty())
        write_file(opts.out_path,
                   serialize_certificate(build_proof_certificate(
                       run, s, t, *join, opts.style)));
      return kExitYes;
    }
    NormalizeResult ns = normalize(run.rules, s, opts.fuel);
    NormalizeResult nt = normalize(run.rules, t, opts.fuel);
    out << "NO: " << to_string(s) << " = " << to_string(t)
        << " (normal forms " << to_string(ns.term) << " and "
        << to_string(nt.term) << ")\n";
    if (!opts.out_path.empty())
      write_file(opts.out_path,
                 serialize_certificate(
                     build_disproof_certificate(run, s, t, opts.style)));
    return kExitNo;
  } catch (const Error& e) {
    err << "ERROR: " << e.what() << "\n";
    return kExitError;
  }
}

int cmd_check(const std::string& path, const DriverOptions& opts,
              std::ostream& out, std::ostream& err) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const Error& e) {
    err << "ERROR: " << e.what() << "\n";
    return kExitError;
  }
  Certificate cert;
  try {
    cert = parse_certificate(text);
  } catch (const ParseError& e) {
    err << "ERROR: " << e.what() << "\n";
    return kExitError;
  } catch (const CertError& e) {
    out << "REJECTED: " << e.what() << "\n";
    return kExitNo;
  }
  Verdict verdict = verify_certificate(cert, opts.fuel);
  if (verdict.accepted) {
    out << "ACCEPTED\n";
    return kExitYes;
  }
  out << "REJECTED: " << verdict.first_failure << "\n";
  return kExitNo;
}

int cmd_cps(const std::string& path, const DriverOptions& opts,
            std::ostream& out, std::ostream& err) {
  (void)opts;
  try {
    Problem problem = parse_problem(read_file(path));
    for (const CriticalPair& cp : critical_pairs(problem.rules)) {
      // display under short names instead of the internal renaming prefixes
      Subst ren;
      std::size_t next = 0;
      for (const Term* t : {&cp.peak, &cp.left, &cp.right})
        for (const std::string& v : vars(*t))
          if (!ren.lookup(v)) ren.bind(v, Term::var(canonical_var_name(next++)));
      out << to_string(apply_subst(ren, cp.left)) << " <- "
          << to_string(apply_subst(ren, cp.peak)) << " -> "
          << to_string(apply_subst(ren, cp.right)) << "\n";
    }
    return kExitYes;
  } catch (const Error& e) {
    err << "ERROR: " << e.what() << "\n";
    return kExitError;
  }
}

int cmd_normalize(const std::string& path, const std::string& term_text,
                  const DriverOptions& opts, std::ostream& out,
                  std::ostream& err) {
  try {
    Problem problem = parse_problem(read_file(path));
    Term t = parse_term_text(term_text, problem.vars, problem.sig);
    NormalizeResult res = normalize(problem.rules, t, opts.fuel);
    out << to_string(res.term) << "\n";
    return kExitYes;
  } catch (const Error& e) {
    err << "ERROR: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace kbrec
