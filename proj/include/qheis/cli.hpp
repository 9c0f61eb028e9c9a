#pragma once

#include <iosfwd>
#include <string>

#include "qheis/config.hpp"

namespace qheis {

enum ExitCode : int {
    kExitOk = 0,
    kExitConfigError = 1,
    kExitNumericalFailure = 2,
    kExitIoError = 3,
};

/// Run one subcommand against a parsed config, writing result files into
/// cfg.out_dir:
///   anneal   -> trajectory.csv + report.json
///   spectrum -> spectrum.csv
///   ground   -> ground.json
///   presets  -> preset listing on `out` (no files)
/// Returns an ExitCode; never throws (error text goes to `err`).
int dispatch(const std::string& command, const RunConfig& cfg, std::ostream& out,
             std::ostream& err);

/// Exit code for an exception in flight (used by main around config parsing).
int exit_code_for(const std::exception& e);

} // namespace qheis
