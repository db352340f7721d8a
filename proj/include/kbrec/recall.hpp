#pragma once

#include <vector>

#include "kbrec/completion.hpp"
#include "kbrec/rewrite.hpp"

namespace kbrec {

/// One exported record: an equation plus the conversion (at most two steps,
/// through the recorded middle term) justifying it from earlier indices.
struct AuxiliaryRecord {
  Equation equation;
  Conversion justification;
  bool operator==(const AuxiliaryRecord&) const = default;
};

/// Rewrites a join into a single conversion running start-to-meet-to-start:
/// the right steps are reversed. Every step is normalized to an equation
/// step whose direction is relative to the sides recorded for its index
/// (the initial equation's sides when the index is initial, the record's
/// left/right otherwise). Throws HistoryError when a step does not fit.
Conversion join_to_conversion(const History& h, const Es& e0,
                              const Join& join);

/// Expands one step through the record it references: the step becomes at
/// most two steps via the recorded middle term, instantiated by the step's
/// substitution under its position. Steps referencing an initial equation
/// are returned unchanged (normalized); steps with reference 0 or equal
/// endpoints are dropped. Throws HistoryError for missing records, forward
/// references, or endpoints that do not fit the record.
Conversion expand_step(const History& h, const Es& e0, const Step& step);

/// Repeatedly expands the leftmost step that does not reference an initial
/// equation; the result is a conversion using initial equations only.
Conversion recall(const History& h, const Es& e0, const Join& join);

/// Exports every record, in index order, as an equation justified by a
/// conversion over earlier indices; consumers can then check the records in
/// one pass. Initial-shape self-references resolve to the initial equation.
std::vector<AuxiliaryRecord> export_auxiliary(const History& h, const Es& e0);

}  // namespace kbrec
