#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <vector>

#include "kbrec/certify.hpp"
#include "support/support.hpp"

using namespace kbrec;
using namespace kbrec::testsupport;

namespace {

Term x() { return V("x"); }
Term f1(Term t) { return F("f", {std::move(t)}); }
Term g1(Term t) { return F("g", {std::move(t)}); }
Term fx() { return f1(x()); }
Term ffx() { return f1(fx()); }
Term gx() { return g1(x()); }
Term gfx() { return g1(fx()); }
Term ggx() { return g1(gx()); }
Term ggfx() { return g1(gfx()); }
Term ggffx() { return g1(g1(f1(fx()))); }

Es initial() {
  return {{1, ffx(), fx()}, {2, ggfx(), gx()}};
}

Trs final_rules() {
  return {{1, ffx(), fx()}, {4, gfx(), gx()}, {5, ggx(), gx()}};
}

History retained() {
  History h;
  h.emplace(1, HistoryEntry{1, ffx(), HistOp::Forward, 1, fx(), HistOp::Equal,
                            0, fx()});
  h.emplace(2, HistoryEntry{2, ggfx(), HistOp::Forward, 2, gx(), HistOp::Equal,
                            0, gx()});
  h.emplace(3, HistoryEntry{3, ggfx(), HistOp::Backward, 1, ggffx(),
                            HistOp::Forward, 2, gfx()});
  h.emplace(4, HistoryEntry{4, gfx(), HistOp::Backward, 3, ggfx(),
                            HistOp::Forward, 2, gx()});
  h.emplace(5, HistoryEntry{5, ggx(), HistOp::Backward, 4, ggfx(),
                            HistOp::Forward, 2, gx()});
  return h;
}

ConversionsJust conversions_just() {
  History h = retained();
  Es e0 = initial();
  Trs rules = final_rules();
  ConversionsJust just;
  for (const Rule& r : rules) {
    std::optional<Join> j = joinable(rules, r.lhs, r.rhs);
    REQUIRE(j);
    just.per_rule.emplace(r.index, recall(h, e0, *j));
  }
  return just;
}

HistoryJust history_just() {
  return HistoryJust{export_auxiliary(retained(), initial())};
}

std::vector<Symbol> signature() {
  return {{"f", 1}, {"g", 1}};
}

Certificate completion_cert(Justification just) {
  Certificate cert;
  cert.signature = signature();
  cert.e0 = initial();
  cert.claim = CompletionClaim{final_rules(), Precedence{}};
  cert.justification = std::move(just);
  return cert;
}

Certificate proof_cert(Term s, Term t, EvidenceKind kind) {
  Certificate cert;
  cert.signature = signature();
  cert.e0 = initial();
  ProofClaim claim;
  claim.s = std::move(s);
  claim.t = std::move(t);
  claim.rules = final_rules();
  claim.evidence = kind;
  cert.claim = std::move(claim);
  cert.justification = history_just();
  return cert;
}

Certificate disproof_cert(Term s, Term t) {
  Certificate cert;
  cert.signature = signature();
  cert.e0 = initial();
  cert.claim = DisproofClaim{std::move(s), std::move(t), final_rules(),
                             Precedence{}};
  cert.justification = history_just();
  return cert;
}

bool mentions(const Verdict& v, const std::string& needle) {
  return v.first_failure.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("verify_convergence accepts decreasing joinable systems") {
  CHECK(verify_convergence(final_rules(), Precedence{}).accepted);
  CHECK(verify_convergence({}, Precedence{}).accepted);

  SUBCASE("a non-decreasing rule is named") {
    Verdict v = verify_convergence({{1, fx(), ffx()}}, Precedence{});
    CHECK_FALSE(v.accepted);
    CHECK(mentions(v, "rule 1"));
    CHECK(mentions(v, "does not decrease"));
  }

  SUBCASE("a non-joinable critical pair is named") {
    Trs fork = {{1, fx(), F("a")}, {2, fx(), F("b")}};
    Precedence prec = Precedence::from_pairs({{"f", "a"}, {"f", "b"}});
    Verdict v = verify_convergence(fork, prec);
    CHECK_FALSE(v.accepted);
    CHECK(mentions(v, "is not joinable"));
  }

  SUBCASE("fuel exhaustion rejects instead of accepting") {
    Verdict v = verify_convergence({{1, ffx(), fx()}}, Precedence{}, 0);
    CHECK_FALSE(v.accepted);
    CHECK(mentions(v, "fuel exhausted"));
  }
}

TEST_CASE("verify_e_subset_r joins both sides of each input equation") {
  CHECK(verify_e_subset_r(initial(), final_rules()).accepted);
  CHECK(verify_e_subset_r({}, final_rules()).accepted);

  SUBCASE("an unprovable equation is named") {
    Es bad = initial();
    bad.push_back({3, fx(), gx()});
    Verdict v = verify_e_subset_r(bad, final_rules());
    CHECK_FALSE(v.accepted);
    CHECK(mentions(v, "equation 3"));
  }

  SUBCASE("fuel exhaustion rejects") {
    Verdict v = verify_e_subset_r(initial(), final_rules(), 0);
    CHECK_FALSE(v.accepted);
    CHECK(mentions(v, "fuel exhausted"));
  }
}

TEST_CASE("verify_r_subset_e with per-rule conversions") {
  Es e0 = initial();
  Trs rules = final_rules();
  ConversionsJust just = conversions_just();
  CHECK(verify_r_subset_e(e0, rules, just).accepted);

  SUBCASE("every rule needs a conversion") {
    ConversionsJust missing = just;
    missing.per_rule.erase(5);
    Verdict v = verify_r_subset_e(e0, rules, missing);
    CHECK_FALSE(v.accepted);
    CHECK(mentions(v, "no conversion for rule 5"));
  }

  SUBCASE("stray conversions are rejected") {
    ConversionsJust extra = just;
    extra.per_rule.emplace(9, Conversion{fx(), {}});
    Verdict v = verify_r_subset_e(e0, rules, extra);
    CHECK_FALSE(v.accepted);
    CHECK(mentions(v, "unknown rule 9"));
  }

  SUBCASE("a broken conversion is rejected") {
    ConversionsJust broken = just;
    Conversion& conv = broken.per_rule.at(4);
    REQUIRE(!conv.steps.empty());
    conv.steps.pop_back();
    Verdict v = verify_r_subset_e(e0, rules, broken);
    CHECK_FALSE(v.accepted);
    CHECK(mentions(v, "rule 4"));
  }
}

TEST_CASE("verify_r_subset_e with exported records") {
  Es e0 = initial();
  Trs rules = final_rules();
  HistoryJust just = history_just();
  REQUIRE(just.records.size() == 5);
  CHECK(verify_r_subset_e(e0, rules, just).accepted);

  SUBCASE("records must appear in increasing index order") {
    HistoryJust reordered = just;
    std::swap(reordered.records[0], reordered.records[1]);
    Verdict v = verify_r_subset_e(e0, rules, reordered);
    CHECK_FALSE(v.accepted);
    CHECK(mentions(v, "does not increase"));

    HistoryJust late = just;
    std::swap(late.records[3], late.records[4]);
    Verdict w = verify_r_subset_e(e0, rules, late);
    CHECK_FALSE(w.accepted);
    // record 5 now precedes the record 4 its own steps rely on
    CHECK(mentions(w, "unavailable index 4"));
  }

  SUBCASE("records may not reference later indices") {
    HistoryJust forward = just;
    forward.records[2].justification.steps[0].ref = 4;
    Verdict v = verify_r_subset_e(e0, rules, forward);
    CHECK_FALSE(v.accepted);
    CHECK(mentions(v, "unavailable index 4"));
  }

  SUBCASE("records carry at most two steps") {
    HistoryJust padded = just;
    padded.records[2].justification.steps.push_back(
        padded.records[2].justification.steps[0]);
    Verdict v = verify_r_subset_e(e0, rules, padded);
    CHECK_FALSE(v.accepted);
    CHECK(mentions(v, "more than two steps"));
  }

  SUBCASE("the justification must span the record") {
    HistoryJust off_start = just;
    off_start.records[2].justification.start = gx();
    Verdict a = verify_r_subset_e(e0, rules, off_start);
    CHECK_FALSE(a.accepted);
    CHECK(mentions(a, "start"));

    HistoryJust off_end = just;
    off_end.records[2].justification.steps.pop_back();
    Verdict b = verify_r_subset_e(e0, rules, off_end);
    CHECK_FALSE(b.accepted);
    CHECK(mentions(b, "end"));

    HistoryJust unchained = just;
    std::swap(unchained.records[2].justification.steps[0],
              unchained.records[2].justification.steps[1]);
    Verdict c = verify_r_subset_e(e0, rules, unchained);
    CHECK_FALSE(c.accepted);
    CHECK(mentions(c, "chain"));
  }

  SUBCASE("an unmirrored record cannot span a flipped rule") {
    // index 4 as originally deduced: g(x) to g(f(x)), the reverse of rule 4;
    // record 5 then reads index 4 in those unmirrored sides
    HistoryJust unmirrored = just;
    AuxiliaryRecord& rec = unmirrored.records[3];
    REQUIRE(rec.equation.index == 4);
    rec.equation = {4, gx(), gfx()};
    Step up{gx(), ggfx(), 2, StepKind::Equation, StepDir::RL, {}, {}};
    Step down{ggfx(), gfx(), 3, StepKind::Equation, StepDir::LR, {}, {}};
    rec.justification = Conversion{gx(), {up, down}};
    REQUIRE(unmirrored.records[4].justification.steps[0].ref == 4);
    unmirrored.records[4].justification.steps[0].dir = StepDir::LR;
    Verdict v = verify_r_subset_e(e0, rules, unmirrored);
    CHECK_FALSE(v.accepted);
    CHECK(mentions(v, "does not span its rule"));
  }

  SUBCASE("initial indices may be restated only up to side order") {
    HistoryJust swapped = just;
    Step back{fx(), ffx(), 1, StepKind::Equation, StepDir::RL, {}, {}};
    swapped.records[0] =
        AuxiliaryRecord{{1, fx(), ffx()}, Conversion{fx(), {back}}};
    // rule 1 is f(f(x)) -> f(x), so the swapped record no longer spans it
    Verdict v = verify_r_subset_e(e0, rules, swapped);
    CHECK_FALSE(v.accepted);
    CHECK(mentions(v, "does not span its rule"));

    HistoryJust renamed = just;
    renamed.records[0].equation = {1, ffx(), ffx()};
    renamed.records[0].justification = Conversion{ffx(), {}};
    Verdict w = verify_r_subset_e(e0, rules, renamed);
    CHECK_FALSE(w.accepted);
    CHECK(mentions(w, "reuses an initial index"));
  }

  SUBCASE("every rule needs a record") {
    HistoryJust missing = just;
    missing.records.pop_back();
    Verdict v = verify_r_subset_e(e0, rules, missing);
    CHECK_FALSE(v.accepted);
    CHECK(mentions(v, "no record for rule 5"));
  }
}

TEST_CASE("verify_certificate accepts completion claims in both styles") {
  CHECK(verify_certificate(completion_cert(conversions_just())).accepted);
  CHECK(verify_certificate(completion_cert(history_just())).accepted);

  SUBCASE("dropping a rule breaks the equation check") {
    Certificate cert = completion_cert(history_just());
    std::get<CompletionClaim>(cert.claim).rules.pop_back();  // gg -> g
    Verdict v = verify_certificate(cert);
    CHECK_FALSE(v.accepted);
    CHECK(mentions(v, "equation 2"));
  }

  SUBCASE("tiny fuel rejects rather than accepts") {
    for (int fuel : {0, 1}) {
      CHECK_FALSE(
          verify_certificate(completion_cert(history_just()), fuel).accepted);
      CHECK_FALSE(
          verify_certificate(completion_cert(conversions_just()), fuel)
              .accepted);
    }
  }
}

TEST_CASE("verify_certificate rejects malformed shapes") {
  SUBCASE("reserved characters") {
    Certificate cert = completion_cert(history_just());
    cert.e0[0].lhs = f1(f1(V("1#x")));
    CHECK(mentions(verify_certificate(cert), "reserved character"));

    Certificate sym = completion_cert(history_just());
    sym.signature.push_back({"h#", 1});
    CHECK(mentions(verify_certificate(sym), "reserved character"));
  }

  SUBCASE("undeclared or misused symbols") {
    Certificate cert = completion_cert(history_just());
    cert.e0[0].rhs = F("h", {x()});
    CHECK(mentions(verify_certificate(cert), "undeclared function symbol"));

    Certificate arity = completion_cert(history_just());
    arity.e0[0].rhs = F("f", {x(), x()});
    CHECK(mentions(verify_certificate(arity), "arity"));

    Certificate clash = completion_cert(history_just());
    clash.e0[0].rhs = f1(V("g"));
    CHECK(mentions(verify_certificate(clash),
                   "used both as variable and function symbol"));

    Certificate dup = completion_cert(history_just());
    dup.signature = {{"f", 1}, {"f", 2}, {"g", 1}};
    CHECK_FALSE(verify_certificate(dup).accepted);
  }

  SUBCASE("index hygiene") {
    Certificate dup_eq = completion_cert(history_just());
    dup_eq.e0.push_back({1, fx(), fx()});
    CHECK(mentions(verify_certificate(dup_eq), "duplicate initial equation"));

    Certificate dup_rule = completion_cert(history_just());
    std::get<CompletionClaim>(dup_rule.claim).rules.push_back({1, ggx(), gx()});
    CHECK(mentions(verify_certificate(dup_rule), "duplicate rule"));

    Certificate neg = completion_cert(history_just());
    neg.e0[0].index = 0;
    CHECK(mentions(verify_certificate(neg), "non-positive"));
  }

  SUBCASE("precedence over undeclared symbols") {
    Certificate cert = completion_cert(history_just());
    std::get<CompletionClaim>(cert.claim).prec =
        Precedence::from_pairs({{"f", "h"}});
    CHECK(mentions(verify_certificate(cert), "undeclared symbol 'h'"));
  }

  SUBCASE("evidence fields must match the evidence kind") {
    Certificate cert = proof_cert(f1(gfx()), f1(ggx()), EvidenceKind::Nf);
    std::get<ProofClaim>(cert.claim).conversion = Conversion{fx(), {}};
    CHECK(mentions(verify_certificate(cert), "conversion evidence mismatch"));

    Certificate nojoin = proof_cert(f1(gfx()), f1(ggx()), EvidenceKind::Join);
    CHECK(mentions(verify_certificate(nojoin), "join evidence mismatch"));
  }
}

TEST_CASE("verify_certificate checks proof claims by evidence kind") {
  Term s = f1(gfx());
  Term t = f1(ggx());

  SUBCASE("normal-form evidence") {
    CHECK(verify_certificate(proof_cert(s, t, EvidenceKind::Nf)).accepted);
    Verdict v = verify_certificate(proof_cert(fx(), gx(), EvidenceKind::Nf));
    CHECK_FALSE(v.accepted);
    CHECK(mentions(v, "distinct normal forms"));
  }

  SUBCASE("join evidence replays against the rules") {
    Certificate cert = proof_cert(s, t, EvidenceKind::Join);
    std::optional<Join> join = joinable(final_rules(), s, t);
    REQUIRE(join);
    std::get<ProofClaim>(cert.claim).join = join;
    CHECK(verify_certificate(cert).accepted);

    Certificate wrong_meet = cert;
    std::get<ProofClaim>(wrong_meet.claim).join->meet = fx();
    Verdict v = verify_certificate(wrong_meet);
    CHECK_FALSE(v.accepted);
    CHECK(mentions(v, "meet"));

    Certificate broken = cert;
    std::get<ProofClaim>(broken.claim).join->left.clear();
    CHECK_FALSE(verify_certificate(broken).accepted);

    Certificate bad_step = cert;
    std::get<ProofClaim>(bad_step.claim).join->left[0].pos = {1, 1};
    Verdict w = verify_certificate(bad_step);
    CHECK_FALSE(w.accepted);
    CHECK(mentions(w, "join evidence"));
  }

  SUBCASE("conversion evidence stands alone") {
    std::optional<Join> join = joinable(final_rules(), s, t);
    REQUIRE(join);
    Conversion conv = recall(retained(), initial(), *join);

    Certificate cert = proof_cert(s, t, EvidenceKind::Conversion);
    std::get<ProofClaim>(cert.claim).conversion = conv;
    std::get<ProofClaim>(cert.claim).rules.clear();  // no completion needed
    cert.justification = ConversionsJust{};
    CHECK(verify_certificate(cert).accepted);

    Certificate broken = cert;
    std::get<ProofClaim>(broken.claim).conversion->steps.pop_back();
    Verdict v = verify_certificate(broken);
    CHECK_FALSE(v.accepted);
    CHECK(mentions(v, "conversion evidence"));
  }
}

TEST_CASE("verify_certificate checks disproof claims") {
  Verdict ok = verify_certificate(disproof_cert(fx(), gx()));
  CHECK(ok.accepted);

  Verdict joins = verify_certificate(disproof_cert(f1(gfx()), f1(ggx())));
  CHECK_FALSE(joins.accepted);
  CHECK(mentions(joins, "join"));

  SUBCASE("tiny fuel rejects rather than accepts") {
    for (int fuel : {0, 1})
      CHECK_FALSE(verify_certificate(disproof_cert(fx(), gx()), fuel).accepted);
  }

  SUBCASE("proof and disproof of the same goal exclude each other") {
    Term s = f1(gfx());
    Term t = f1(ggx());
    CHECK(verify_certificate(proof_cert(s, t, EvidenceKind::Nf)).accepted);
    CHECK_FALSE(verify_certificate(disproof_cert(s, t)).accepted);

    CHECK(verify_certificate(disproof_cert(fx(), gx())).accepted);
    CHECK_FALSE(
        verify_certificate(proof_cert(fx(), gx(), EvidenceKind::Nf)).accepted);
  }
}
