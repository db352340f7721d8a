#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "kbrec/critpairs.hpp"
#include "kbrec/order.hpp"
#include "kbrec/rewrite.hpp"
#include "kbrec/term.hpp"

namespace kbrec::testsupport {

using Rng = std::mt19937_64;

inline Term V(const std::string& name) { return Term::var(name); }
inline Term F(const std::string& name, std::vector<Term> args = {}) {
  return Term::app(name, std::move(args));
}

/// Wraps two terms so single-term helpers (match, renaming) can treat the
/// pair atomically. The reserved separator keeps the wrapper out of any
/// user signature.
Term wrap_pair(const Term& l, const Term& r);

/// True iff `specific` is `general` under some substitution.
bool is_instance_of(const Term& general, const Term& specific);

/// True iff the terms are equal up to a consistent variable renaming.
bool is_variant_term(const Term& a, const Term& b);

struct TermGenOptions {
  std::vector<Symbol> symbols;    // at least one constant
  std::vector<std::string> vars;  // may be empty for ground terms
  std::size_t max_depth = 3;
};

Term random_term(Rng& rng, const TermGenOptions& opt);

/// Substitution sending each given variable to a random term.
Subst random_subst(Rng& rng, const std::vector<std::string>& vars,
                   const TermGenOptions& opt);

/// Random strict precedence: pairs drawn from one shuffled linear order, so
/// the closure never cycles.
Precedence random_precedence(Rng& rng, const std::vector<std::string>& names,
                             std::size_t num_pairs);

/// Random TRS with up to `max_rules` rules: left sides are non-variable,
/// right-side variables always occur on the left.
Trs random_trs(Rng& rng, const TermGenOptions& opt, std::size_t max_rules);

/// Breadth-first bounded search for a conversion between s and t using the
/// equations in both directions (directions that would invent variables are
/// skipped). Intermediate terms larger than max(|s|, |t|) + size_slack are
/// not explored, which keeps growing theories finite; true therefore means
/// convertible, false means no conversion within that size bound. nullopt
/// means the node budget ran out before the frontier was exhausted.
std::optional<bool> convertible_bfs(const Es& eqs, const Term& s,
                                    const Term& t, std::size_t max_visited,
                                    std::size_t size_slack = 6);

/// Hand-written equation files that complete under the orders given in
/// their PREC sections.
struct CorpusEntry {
  std::string name;
  std::string text;
};
const std::vector<CorpusEntry>& corpus();

/// 57-rule system over f, g, h, c and five variables whose only critical
/// pair of interest arises between the first two rules; that pair is not
/// joinable although each of its bounded-substitution instances rewrites to
/// c on both sides.
Trs make_rc();

/// The non-joinable critical pair of the first two rules, written over
/// x1..x6: h(g(x1,x2), h(g(x3,x4), g(x5,x6))) versus
/// h(g(x5,x6), h(g(x1,x2), g(x3,x4))).
std::pair<Term, Term> rc_critical_pair();

/// Candidate terms for instantiating that pair: the five variables plus c,
/// f(x4,x5), g(x4,x5), h(x4,x5).
std::vector<Term> rc_candidates();

}  // namespace kbrec::testsupport
