#pragma once

#include <ostream>
#include <string>

#include "kbrec/certify.hpp"
#include "kbrec/completion.hpp"
#include "kbrec/problem.hpp"

namespace kbrec {

/// Exit-code contract shared by every command.
inline constexpr int kExitYes = 0;    // proved / completed / accepted
inline constexpr int kExitNo = 1;     // disproved / rejected / not completed
inline constexpr int kExitError = 2;  // parse failure, resource limit, unknown

struct DriverOptions {
  int fuel = kDefaultFuel;
  int max_steps = kDefaultMaxSteps;
  Style style = Style::History;
  std::string prec_text;  // overrides the file's precedence when set
  bool has_prec = false;
  std::string out_path;  // certificate destination, none when empty
};

/// Completion claim over the run's final rules, justified in the given
/// style. The certificate's precedence keeps only pairs over symbols that
/// occur in its own terms.
Certificate build_completion_certificate(const RunResult& run, Style style);

/// Proof claim for s ≈ t. Conversion style recalls the join into a direct
/// initial-equation conversion; history style keeps the join as evidence and
/// justifies the rules by exported records.
Certificate build_proof_certificate(const RunResult& run, const Term& s,
                                    const Term& t, const Join& join,
                                    Style style);

/// Disproof claim for s ≈ t over the run's final rules.
Certificate build_disproof_certificate(const RunResult& run, const Term& s,
                                       const Term& t, Style style);

/// Command bodies behind the CLI; each reads the named file, writes results
/// to `out` and diagnostics to `err`, and returns an exit code.
int cmd_complete(const std::string& path, const DriverOptions& opts,
                 std::ostream& out, std::ostream& err);
int cmd_prove(const std::string& path, const std::string& goal_text,
              const DriverOptions& opts, std::ostream& out, std::ostream& err);
int cmd_check(const std::string& path, const DriverOptions& opts,
              std::ostream& out, std::ostream& err);
int cmd_cps(const std::string& path, const DriverOptions& opts,
            std::ostream& out, std::ostream& err);
int cmd_normalize(const std::string& path, const std::string& term_text,
                  const DriverOptions& opts, std::ostream& out,
                  std::ostream& err);

}  // namespace kbrec
