#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "config.hpp"

namespace cfiebem::cli {

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"mesh-info",   "convergence",  "sweep-h",      "sweep-kappa",
                                              "sweep-eta",   "mie-validate", "dump-matrices"};
  return names;
}

// Runs one subcommand, writes its CSV/mesh/matrix outputs and a manifest into
// cfg.out_dir, and returns the process exit status (nonzero iff a mandatory stage failed).
int run_command(const std::string& name, const RunConfig& cfg, std::ostream& log);

}  // namespace cfiebem::cli
