#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nsexact/run_config.hpp"

namespace nsexact {

/// Exit codes shared by every command: 0 pass, 1 build/verification failure,
/// 2 usage or configuration error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;

/// Fixed 17-significant-digit formatting used by every CSV cell, so repeated
/// runs are byte-identical.
std::string format_g17(double v);

/// Samples (u, p) on the configured grid and writes <out_dir>/fields.csv with
/// columns x,y,z,t,ux,uy,uz,p.
int cmd_generate(const RunConfig& config, const std::string& out_dir,
                 std::ostream& diag);

/// Runs the full verifier; writes <out_dir>/report.txt (human-readable, also
/// streamed to diag) and <out_dir>/checks.csv with columns
/// check,max,mean,tolerance,pass. Returns 0 iff every check passed.
int cmd_verify(const RunConfig& config, const std::string& out_dir, std::ostream& diag);

/// Refinement sweep along one axis; writes <out_dir>/sweep.csv with columns
/// level,residual. Needs at least three levels.
int cmd_sweep(const RunConfig& config, const std::string& axis,
              const std::vector<double>& levels, const std::string& out_dir,
              std::ostream& diag);

}  // namespace nsexact
