#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "sobolev/config.hpp"

namespace sobolev {

enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitNumerical = 3, kExitNonTermination = 4 };

/// Runs one experiment, writes its artifacts under c.out and a summary to `log`.
/// Module errors propagate as exceptions.
void run_experiment(const RunConfig& c, std::ostream& log);

struct SelftestRow {
  std::string name;
  double value;
  double tolerance;
  bool pass;
};

/// Cross-representation suite: pairwise backend agreement, adjoint identities
/// and closed-form kernels. Quick (well under 10 s).
std::vector<SelftestRow> selftest_rows();
bool selftest(std::ostream& out);

/// Command line entry point; args exclude the program name. Maps module errors
/// to exit codes 2 (config / argument), 3 (numerical failure), 4 (non-termination).
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sobolev
