#pragma once

// Subcommand drivers shared by the CLI and the tests. Each make_* function
// computes a report from a validated config; run_command adds validation,
// output routing and the exit-code contract (0 ok, 1 verification failure,
// 2 invalid input).

#include <iosfwd>
#include <string>

#include "matbrane/config.hpp"
#include "matbrane/report.hpp"

namespace matbrane {

enum ExitCode : int { exit_ok = 0, exit_verification_failed = 1, exit_invalid_input = 2 };

SpectrumReport make_spectrum_report(const RunConfig& cfg);
IdentityReport make_identity_report(const RunConfig& cfg);
CondenseReport make_condense_report(const RunConfig& cfg);
CurveReport make_curve_report(const RunConfig& cfg);

int cmd_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_identities(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_condense(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_curve(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Dispatches by subcommand name: spectrum, identities, condense, curve.
int run_command(const std::string& name, const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace matbrane
