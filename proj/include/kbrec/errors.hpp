#pragma once

#include <stdexcept>
#include <string>

namespace kbrec {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad identifiers, arity clashes, out-of-range positions,
/// violated operation preconditions.
struct InputError : Error {
  using Error::Error;
};

/// Unparsable problem file or certificate; the message carries a location
/// (line/column for text, a JSON-pointer-like path for certificates).
struct ParseError : InputError {
  using InputError::InputError;
};

/// A rewrite sequence did not terminate within its fuel budget.
struct FuelError : Error {
  using Error::Error;
};

/// An enumeration exceeded its configured budget.
struct ResourceError : Error {
  using Error::Error;
};

/// A recording history that cannot justify what it claims: missing entries,
/// forward references, endpoints that do not fit the referenced sides.
struct HistoryError : Error {
  using Error::Error;
};

/// A schema-valid certificate whose steps cannot be replayed.
struct CertError : Error {
  using Error::Error;
};

/// Completion hit an equation that the reduction order cannot orient.
struct UnorientableError : Error {
  explicit UnorientableError(int index)
      : Error("equation " + std::to_string(index) + " cannot be oriented"),
        eq_index(index) {}
  int eq_index;
};

}  // namespace kbrec
