#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "kbrec/order.hpp"
#include "kbrec/recall.hpp"
#include "kbrec/rewrite.hpp"
#include "kbrec/term.hpp"

namespace kbrec {

/// Which kind of rule justification a certificate carries.
enum class Style { Conversion, History };

/// Per-rule conversions over the initial equations, keyed by rule index.
struct ConversionsJust {
  std::map<int, Conversion> per_rule;
  bool operator==(const ConversionsJust&) const = default;
};

/// Exported records, in strictly increasing index order; each equation is
/// justified by a short conversion over initial equations and earlier
/// records.
struct HistoryJust {
  std::vector<AuxiliaryRecord> records;
  bool operator==(const HistoryJust&) const = default;
};

using Justification = std::variant<ConversionsJust, HistoryJust>;

/// The rules both decrease under the precedence and have joinable critical
/// pairs, and they prove exactly the initial equations.
struct CompletionClaim {
  Trs rules;
  Precedence prec;
  bool operator==(const CompletionClaim&) const = default;
};

enum class EvidenceKind { Conversion, Join, Nf };

/// s and t are equal under the initial equations. Conversion evidence is
/// self-contained; join and normal-form evidence additionally rely on the
/// completion checks.
struct ProofClaim {
  Term s;
  Term t;
  Trs rules;
  Precedence prec;
  EvidenceKind evidence = EvidenceKind::Nf;
  std::optional<Conversion> conversion;  // set iff evidence == Conversion
  std::optional<Join> join;              // set iff evidence == Join
  bool operator==(const ProofClaim&) const = default;
};

/// s and t are not equal under the initial equations: the completed rules
/// give them distinct normal forms.
struct DisproofClaim {
  Term s;
  Term t;
  Trs rules;
  Precedence prec;
  bool operator==(const DisproofClaim&) const = default;
};

using Claim = std::variant<CompletionClaim, ProofClaim, DisproofClaim>;

struct Certificate {
  std::vector<Symbol> signature;  // sorted by name
  Es e0;
  Claim claim;
  Justification justification;
};

struct Verdict {
  bool accepted = false;
  std::string first_failure;  // empty when accepted
  static Verdict ok() { return {true, {}}; }
  static Verdict reject(std::string why) { return {false, std::move(why)}; }
};

/// Rules decrease under the precedence and every critical pair joins.
/// Fuel exhaustion rejects; it is never treated as success.
Verdict verify_convergence(const Trs& rules, const Precedence& prec,
                           int fuel = kDefaultFuel);

/// Both sides of every initial equation reach the same normal form.
Verdict verify_e_subset_r(const Es& e0, const Trs& rules,
                          int fuel = kDefaultFuel);

/// Every rule is equationally justified over the initial equations, either
/// by a direct conversion per rule or by replaying exported records in
/// order.
Verdict verify_r_subset_e(const Es& e0, const Trs& rules,
                          const Justification& just, int fuel = kDefaultFuel);

/// Full certificate check: structural hygiene, then the checks demanded by
/// the claim. Completion claims need all three subset checks; proofs need
/// their evidence (conversion evidence stands alone, join and normal-form
/// evidence also need the completion checks); disproofs need the completion
/// checks plus distinct normal forms.
Verdict verify_certificate(const Certificate& cert, int fuel = kDefaultFuel);

}  // namespace kbrec
