#pragma once

#include <string>

#include "kbrec/certify.hpp"

namespace kbrec {

inline constexpr const char* kFormatVersion = "kbrec-1";

/// Deterministic JSON rendering (sorted keys, two-space indent, trailing
/// newline). Step sources and targets are not stored; they are replayed
/// from the surrounding starts and endpoints.
std::string serialize_certificate(const Certificate& cert);

/// Strict parse: unknown or missing fields, wrong types, and a wrong
/// format_version throw ParseError with a path into the document. Steps are
/// replayed to reconstruct their sources and targets; a step that cannot be
/// replayed throws CertError (the certificate is rejected, not malformed).
Certificate parse_certificate(const std::string& text);

}  // namespace kbrec
