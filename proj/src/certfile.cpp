#include "kbrec/certfile.hpp"

#include <json.hpp>

#include <limits>
#include <map>
#include <set>
#include <vector>

namespace kbrec {

namespace {

using nlohmann::json;

// ---------- serialization ----------

json term_to_json(const Term& t) {
  if (t.is_var()) return json::array({"var", t.name()});
  json args = json::array();
  for (const Term& a : t.args()) args.push_back(term_to_json(a));
  return json::array({t.name(), std::move(args)});
}

json step_to_json(const Step& st) {
  json subst = json::object();
  for (const auto& [name, t] : st.subst.bindings())
    subst[name] = term_to_json(t);
  json pos = json::array();
  for (std::size_t i : st.pos) pos.push_back(i);
  return json{{"ref", st.ref},
              {"kind", st.kind == StepKind::Rule ? "rule" : "equation"},
              {"dir", st.dir == StepDir::LR ? "lr" : "rl"},
              {"pos", std::move(pos)},
              {"subst", std::move(subst)}};
}

json steps_to_json(const std::vector<Step>& steps) {
  json out = json::array();
  for (const Step& st : steps) out.push_back(step_to_json(st));
  return out;
}

json conversion_to_json(const Conversion& conv) {
  return json{{"start", term_to_json(conv.start)},
              {"steps", steps_to_json(conv.steps)}};
}

json rules_to_json(const Trs& rules) {
  json out = json::array();
  for (const Rule& r : rules)
    out.push_back(json{{"index", r.index},
                       {"lhs", term_to_json(r.lhs)},
                       {"rhs", term_to_json(r.rhs)}});
  return out;
}

json prec_to_json(const Precedence& prec) {
  json out = json::array();
  for (const auto& [a, b] : prec.pairs()) out.push_back(json::array({a, b}));
  return out;
}

json claim_to_json(const Claim& claim) {
  if (const auto* c = std::get_if<CompletionClaim>(&claim))
    return json{{"kind", "completion"},
                {"rules", rules_to_json(c->rules)},
                {"precedence", prec_to_json(c->prec)}};
  if (const auto* p = std::get_if<ProofClaim>(&claim)) {
    json evidence;
    switch (p->evidence) {
      case EvidenceKind::Conversion:
        evidence = json{{"kind", "conversion"},
                        {"conversion", conversion_to_json(*p->conversion)}};
        break;
      case EvidenceKind::Join:
        evidence = json{{"kind", "join"},
                        {"left", steps_to_json(p->join->left)},
                        {"right", steps_to_json(p->join->right)},
                        {"meet", term_to_json(p->join->meet)}};
        break;
      case EvidenceKind::Nf:
        evidence = json{{"kind", "nf"}};
        break;
    }
    return json{{"kind", "proof"},
                {"s", term_to_json(p->s)},
                {"t", term_to_json(p->t)},
                {"rules", rules_to_json(p->rules)},
                {"precedence", prec_to_json(p->prec)},
                {"evidence", std::move(evidence)}};
  }
  const auto& d = std::get<DisproofClaim>(claim);
  return json{{"kind", "disproof"},
              {"s", term_to_json(d.s)},
              {"t", term_to_json(d.t)},
              {"rules", rules_to_json(d.rules)},
              {"precedence", prec_to_json(d.prec)}};
}

json justification_to_json(const Justification& just) {
  if (const auto* cj = std::get_if<ConversionsJust>(&just)) {
    json rules = json::array();
    for (const auto& [idx, conv] : cj->per_rule) {
      json entry = conversion_to_json(conv);
      entry["index"] = idx;
      rules.push_back(std::move(entry));
    }
    return json{{"style", "conversion"}, {"rules", std::move(rules)}};
  }
  const auto& hj = std::get<HistoryJust>(just);
  json records = json::array();
  for (const AuxiliaryRecord& rec : hj.records)
    records.push_back(json{{"index", rec.equation.index},
                           {"lhs", term_to_json(rec.equation.lhs)},
                           {"rhs", term_to_json(rec.equation.rhs)},
                           {"steps", steps_to_json(rec.justification.steps)}});
  return json{{"style", "history"}, {"records", std::move(records)}};
}

// ---------- strict parsing ----------

[[noreturn]] void bad(const std::string& path, const std::string& msg) {
  throw ParseError(path + ": " + msg);
}

const json& field(const json& j, const char* key, const std::string& path) {
  auto it = j.find(key);
  if (it == j.end()) bad(path, std::string("missing field '") + key + "'");
  return *it;
}

void expect_keys(const json& j, std::set<std::string> allowed,
                 const std::string& path) {
  if (!j.is_object()) bad(path, "expected an object");
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) bad(path, "unknown field '" + key + "'");
}

int parse_index(const json& j, const std::string& path) {
  if (!j.is_number_integer() && !j.is_number_unsigned())
    bad(path, "expected an integer");
  auto v = j.get<std::int64_t>();
  if (v <= 0 || v > std::numeric_limits<int>::max())
    bad(path, "index out of range");
  return static_cast<int>(v);
}

std::string parse_string(const json& j, const std::string& path) {
  if (!j.is_string()) bad(path, "expected a string");
  return j.get<std::string>();
}

Term parse_term(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2)
    bad(path, "expected a two-element term array");
  std::string head = parse_string(j[0], path + "[0]");
  if (j[1].is_string()) {
    if (head != "var") bad(path, "leaf term must be tagged 'var'");
    return Term::var(j[1].get<std::string>());
  }
  if (!j[1].is_array()) bad(path + "[1]", "expected arguments or a name");
  std::vector<Term> args;
  for (std::size_t i = 0; i < j[1].size(); ++i)
    args.push_back(
        parse_term(j[1][i], path + "[1][" + std::to_string(i) + "]"));
  return Term::app(head, std::move(args));
}

// Step without source/target; both get filled in by replay.
Step parse_step_core(const json& j, const std::string& path) {
  expect_keys(j, {"ref", "kind", "dir", "pos", "subst"}, path);
  Step st;
  st.ref = parse_index(field(j, "ref", path), path + "/ref");
  std::string kind = parse_string(field(j, "kind", path), path + "/kind");
  if (kind == "rule") st.kind = StepKind::Rule;
  else if (kind == "equation") st.kind = StepKind::Equation;
  else bad(path + "/kind", "expected 'rule' or 'equation'");
  std::string dir = parse_string(field(j, "dir", path), path + "/dir");
  if (dir == "lr") st.dir = StepDir::LR;
  else if (dir == "rl") st.dir = StepDir::RL;
  else bad(path + "/dir", "expected 'lr' or 'rl'");
  const json& pos = field(j, "pos", path);
  if (!pos.is_array()) bad(path + "/pos", "expected an array");
  for (std::size_t i = 0; i < pos.size(); ++i)
    st.pos.push_back(static_cast<std::size_t>(
        parse_index(pos[i], path + "/pos[" + std::to_string(i) + "]")));
  const json& subst = field(j, "subst", path);
  if (!subst.is_object()) bad(path + "/subst", "expected an object");
  for (const auto& [name, value] : subst.items()) {
    if (name.empty()) bad(path + "/subst", "empty variable name");
    st.subst.bind(name, parse_term(value, path + "/subst/" + name));
  }
  return st;
}

std::vector<Step> parse_step_cores(const json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array of steps");
  std::vector<Step> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(parse_step_core(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

Es parse_equations(const json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array of equations");
  Es out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    expect_keys(j[i], {"index", "lhs", "rhs"}, p);
    out.push_back(Equation{parse_index(field(j[i], "index", p), p + "/index"),
                           parse_term(field(j[i], "lhs", p), p + "/lhs"),
                           parse_term(field(j[i], "rhs", p), p + "/rhs")});
  }
  return out;
}

Trs parse_rules(const json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array of rules");
  Trs out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    expect_keys(j[i], {"index", "lhs", "rhs"}, p);
    out.push_back(Rule{parse_index(field(j[i], "index", p), p + "/index"),
                       parse_term(field(j[i], "lhs", p), p + "/lhs"),
                       parse_term(field(j[i], "rhs", p), p + "/rhs")});
  }
  return out;
}

Precedence parse_prec(const json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array of pairs");
  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != 2) bad(p, "expected a pair");
    pairs.emplace_back(parse_string(j[i][0], p + "[0]"),
                       parse_string(j[i][1], p + "[1]"));
  }
  try {
    return Precedence::from_pairs(pairs);
  } catch (const InputError& e) {
    bad(path, e.what());
  }
}

// Replays one parsed step from `cur`, filling source/target. Sides resolve
// against the claim's rules or the given equations; failure to resolve or
// replay rejects the certificate.
Term replay_step(Step& st, const Term& cur, const Trs& rules,
                 const std::map<int, Equation>& eqs, const std::string& path) {
  const Term* lhs = nullptr;
  const Term* rhs = nullptr;
  if (st.kind == StepKind::Rule) {
    const Rule* r = find_rule(rules, st.ref);
    if (!r)
      throw CertError(path + ": no rule with index " + std::to_string(st.ref));
    lhs = &r->lhs;
    rhs = &r->rhs;
  } else {
    auto it = eqs.find(st.ref);
    if (it == eqs.end())
      throw CertError(path + ": no equation with index " +
                      std::to_string(st.ref));
    lhs = &it->second.lhs;
    rhs = &it->second.rhs;
  }
  if (st.dir == StepDir::RL) std::swap(lhs, rhs);
  Term redex;
  try {
    redex = subterm_at(cur, st.pos);
  } catch (const InputError&) {
    throw CertError(path + ": position " + to_string(st.pos) +
                    " out of range in " + to_string(cur));
  }
  if (redex != apply_subst(st.subst, *lhs))
    throw CertError(path + ": step does not apply at " + to_string(st.pos) +
                    " in " + to_string(cur));
  st.source = cur;
  st.target = replace_at(cur, st.pos, apply_subst(st.subst, *rhs));
  return st.target;
}

Term replay_steps(std::vector<Step>& steps, Term cur, const Trs& rules,
                  const std::map<int, Equation>& eqs, const std::string& path) {
  for (std::size_t i = 0; i < steps.size(); ++i)
    cur = replay_step(steps[i], cur, rules, eqs,
                      path + "[" + std::to_string(i) + "]");
  return cur;
}

std::map<int, Equation> index_equations(const Es& es) {
  std::map<int, Equation> out;
  for (const Equation& e : es) out.emplace(e.index, e);
  return out;
}

}  // namespace

std::string serialize_certificate(const Certificate& cert) {
  json sig = json::array();
  for (const Symbol& sym : cert.signature)
    sig.push_back(json{{"name", sym.name}, {"arity", sym.arity}});
  json eqs = json::array();
  for (const Equation& e : cert.e0)
    eqs.push_back(json{{"index", e.index},
                       {"lhs", term_to_json(e.lhs)},
                       {"rhs", term_to_json(e.rhs)}});
  json root{{"format_version", kFormatVersion},
            {"signature", std::move(sig)},
            {"equations", std::move(eqs)},
            {"claim", claim_to_json(cert.claim)},
            {"justification", justification_to_json(cert.justification)}};
  return root.dump(2) + "\n";
}

Certificate parse_certificate(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  const std::string top = "certificate";
  expect_keys(root,
              {"format_version", "signature", "equations", "claim",
               "justification"},
              top);
  if (parse_string(field(root, "format_version", top),
                   top + "/format_version") != kFormatVersion)
    bad(top + "/format_version",
        std::string("expected \"") + kFormatVersion + "\"");

  Certificate cert;
  const json& sig = field(root, "signature", top);
  if (!sig.is_array()) bad(top + "/signature", "expected an array");
  for (std::size_t i = 0; i < sig.size(); ++i) {
    const std::string p = top + "/signature[" + std::to_string(i) + "]";
    expect_keys(sig[i], {"name", "arity"}, p);
    const json& arity = field(sig[i], "arity", p);
    if (!arity.is_number_integer() && !arity.is_number_unsigned())
      bad(p + "/arity", "expected an integer");
    auto a = arity.get<std::int64_t>();
    if (a < 0 || a > 255) bad(p + "/arity", "arity out of range");
    cert.signature.push_back(Symbol{parse_string(field(sig[i], "name", p),
                                                 p + "/name"),
                                    static_cast<std::size_t>(a)});
  }
  cert.e0 = parse_equations(field(root, "equations", top), top + "/equations");
  std::map<int, Equation> e0_map = index_equations(cert.e0);

  const json& claim = field(root, "claim", top);
  const std::string cp = top + "/claim";
  std::string kind = parse_string(field(claim, "kind", cp), cp + "/kind");
  const Trs* claim_rules = nullptr;
  if (kind == "completion") {
    expect_keys(claim, {"kind", "rules", "precedence"}, cp);
    CompletionClaim c;
    c.rules = parse_rules(field(claim, "rules", cp), cp + "/rules");
    c.prec = parse_prec(field(claim, "precedence", cp), cp + "/precedence");
    cert.claim = std::move(c);
    claim_rules = &std::get<CompletionClaim>(cert.claim).rules;
  } else if (kind == "proof") {
    expect_keys(claim, {"kind", "s", "t", "rules", "precedence", "evidence"},
                cp);
    ProofClaim p;
    p.s = parse_term(field(claim, "s", cp), cp + "/s");
    p.t = parse_term(field(claim, "t", cp), cp + "/t");
    p.rules = parse_rules(field(claim, "rules", cp), cp + "/rules");
    p.prec = parse_prec(field(claim, "precedence", cp), cp + "/precedence");
    const json& ev = field(claim, "evidence", cp);
    const std::string ep = cp + "/evidence";
    std::string ekind = parse_string(field(ev, "kind", ep), ep + "/kind");
    if (ekind == "conversion") {
      expect_keys(ev, {"kind", "conversion"}, ep);
      const json& cj = field(ev, "conversion", ep);
      expect_keys(cj, {"start", "steps"}, ep + "/conversion");
      Conversion conv;
      conv.start = parse_term(field(cj, "start", ep), ep + "/conversion/start");
      conv.steps =
          parse_step_cores(field(cj, "steps", ep), ep + "/conversion/steps");
      Term end = replay_steps(conv.steps, conv.start, p.rules, e0_map,
                              ep + "/conversion/steps");
      if (end != p.t)
        throw CertError(ep + ": conversion ends at " + to_string(end) +
                        ", expected " + to_string(p.t));
      p.evidence = EvidenceKind::Conversion;
      p.conversion = std::move(conv);
    } else if (ekind == "join") {
      expect_keys(ev, {"kind", "left", "right", "meet"}, ep);
      Join join;
      join.left = parse_step_cores(field(ev, "left", ep), ep + "/left");
      join.right = parse_step_cores(field(ev, "right", ep), ep + "/right");
      join.meet = parse_term(field(ev, "meet", ep), ep + "/meet");
      Term lm = replay_steps(join.left, p.s, p.rules, e0_map, ep + "/left");
      Term rm = replay_steps(join.right, p.t, p.rules, e0_map, ep + "/right");
      if (lm != join.meet || rm != join.meet)
        throw CertError(ep + ": join sequences do not reach the meet");
      p.evidence = EvidenceKind::Join;
      p.join = std::move(join);
    } else if (ekind == "nf") {
      expect_keys(ev, {"kind"}, ep);
      p.evidence = EvidenceKind::Nf;
    } else {
      bad(ep + "/kind", "expected 'conversion', 'join' or 'nf'");
    }
    cert.claim = std::move(p);
    claim_rules = &std::get<ProofClaim>(cert.claim).rules;
  } else if (kind == "disproof") {
    expect_keys(claim, {"kind", "s", "t", "rules", "precedence"}, cp);
    DisproofClaim d;
    d.s = parse_term(field(claim, "s", cp), cp + "/s");
    d.t = parse_term(field(claim, "t", cp), cp + "/t");
    d.rules = parse_rules(field(claim, "rules", cp), cp + "/rules");
    d.prec = parse_prec(field(claim, "precedence", cp), cp + "/precedence");
    cert.claim = std::move(d);
    claim_rules = &std::get<DisproofClaim>(cert.claim).rules;
  } else {
    bad(cp + "/kind", "expected 'completion', 'proof' or 'disproof'");
  }

  const json& just = field(root, "justification", top);
  const std::string jp = top + "/justification";
  std::string style = parse_string(field(just, "style", jp), jp + "/style");
  if (style == "conversion") {
    expect_keys(just, {"style", "rules"}, jp);
    const json& rules = field(just, "rules", jp);
    if (!rules.is_array()) bad(jp + "/rules", "expected an array");
    ConversionsJust cj;
    for (std::size_t i = 0; i < rules.size(); ++i) {
      const std::string p = jp + "/rules[" + std::to_string(i) + "]";
      expect_keys(rules[i], {"index", "start", "steps"}, p);
      int idx = parse_index(field(rules[i], "index", p), p + "/index");
      if (cj.per_rule.count(idx))
        bad(p + "/index", "duplicate conversion index");
      Conversion conv;
      conv.start = parse_term(field(rules[i], "start", p), p + "/start");
      conv.steps =
          parse_step_cores(field(rules[i], "steps", p), p + "/steps");
      const Rule* r = find_rule(*claim_rules, idx);
      Term end = replay_steps(conv.steps, conv.start, *claim_rules, e0_map,
                              p + "/steps");
      if (r && (conv.start != r->lhs || end != r->rhs))
        throw CertError(p + ": conversion does not span rule " +
                        std::to_string(idx));
      cj.per_rule.emplace(idx, std::move(conv));
    }
    cert.justification = std::move(cj);
  } else if (style == "history") {
    expect_keys(just, {"style", "records"}, jp);
    const json& records = field(just, "records", jp);
    if (!records.is_array()) bad(jp + "/records", "expected an array");
    HistoryJust hj;
    // records may reference earlier records; extend the equation map as
    // they replay, initial indices keeping the initial sides
    std::map<int, Equation> usable = e0_map;
    for (std::size_t i = 0; i < records.size(); ++i) {
      const std::string p = jp + "/records[" + std::to_string(i) + "]";
      expect_keys(records[i], {"index", "lhs", "rhs", "steps"}, p);
      AuxiliaryRecord rec;
      rec.equation.index =
          parse_index(field(records[i], "index", p), p + "/index");
      rec.equation.lhs = parse_term(field(records[i], "lhs", p), p + "/lhs");
      rec.equation.rhs = parse_term(field(records[i], "rhs", p), p + "/rhs");
      rec.justification.start = rec.equation.lhs;
      rec.justification.steps =
          parse_step_cores(field(records[i], "steps", p), p + "/steps");
      Term end = replay_steps(rec.justification.steps, rec.justification.start,
                              *claim_rules, usable, p + "/steps");
      if (end != rec.equation.rhs)
        throw CertError(p + ": steps end at " + to_string(end) +
                        ", expected " + to_string(rec.equation.rhs));
      usable.emplace(rec.equation.index, rec.equation);
      hj.records.push_back(std::move(rec));
    }
    cert.justification = std::move(hj);
  } else {
    bad(jp + "/style", "expected 'conversion' or 'history'");
  }
  return cert;
}

}  // namespace kbrec
