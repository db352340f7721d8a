#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "kbrec/rewrite.hpp"
#include "kbrec/term.hpp"

namespace kbrec {

/// Variable-renaming prefixes used when overlapping two rules; both contain
/// the reserved separator, so renamed copies never capture each other or any
/// user variable.
inline constexpr const char* kInnerPrefix = "1#";
inline constexpr const char* kOuterPrefix = "2#";

/// Unifiable overlap of the renamed inner rule's left side with a
/// non-variable position of the renamed outer rule's left side. Root
/// overlaps of two variant rules are excluded.
struct Overlap {
  int inner_index = 0;
  int outer_index = 0;
  Position pos;
  Subst mgu;  // over the renamed variables
};

/// Peak u with its two one-step reducts; the steps reference the original
/// rules and replay against the unrenamed system.
struct CriticalPair {
  Term peak;
  Term left;   // inner rule applied at pos
  Term right;  // outer rule applied at the root
  Step left_step;
  Step right_step;
};

/// True iff the two rules are equal up to a consistent variable renaming.
bool is_variant(const Rule& a, const Rule& b);

/// All overlaps between ordered rule pairs, outer rule major, inner rule
/// minor (both in stored order), positions pre-order.
std::vector<Overlap> overlaps(const Trs& trs);

CriticalPair overlap_to_cp(const Trs& trs, const Overlap& ov);

/// overlaps() mapped through overlap_to_cp, same order.
std::vector<CriticalPair> critical_pairs(const Trs& trs);

struct CpCheck {
  enum class Status { AllJoinable, NonJoinable, FuelExhausted };
  Status status = Status::AllJoinable;
  std::optional<CriticalPair> witness;  // first non-joinable pair
};

/// Joins every critical pair; reports the first non-joinable one, or fuel
/// exhaustion if some pair could not be normalized (never treated as
/// success).
CpCheck all_cps_joinable(const Trs& trs, int fuel = kDefaultFuel);

struct OracleBounds {
  std::size_t max_depth = 4;   // leaves have depth 1
  std::size_t num_vars = 3;    // fresh variables available to the universe
  std::size_t budget = 200000; // enumerated terms plus checked peaks
  int fuel = kDefaultFuel;
};

struct OraclePeak {
  Term peak;
  Term left;
  Term right;
};

struct OracleResult {
  enum class Status { LocallyConfluent, NotLocallyConfluent, ResourceLimit };
  Status status = Status::LocallyConfluent;
  std::optional<OraclePeak> witness;
  std::size_t terms_enumerated = 0;
  std::size_t peaks_checked = 0;
};

/// Brute-force check: enumerates every term over the system's symbols plus
/// fresh variables up to the depth bound, forms all one-step peaks, and
/// joins them. Returns the first non-joinable peak, a resource verdict if
/// the budget runs out, or success. Fuel exhaustion while joining a peak
/// propagates as FuelError (the verdict is then unknown).
OracleResult local_confluence_oracle(const Trs& trs,
                                     const OracleBounds& bounds = {});

}  // namespace kbrec
