#pragma once

#include <string>
#include <vector>

#include "cli/output.hpp"
#include "cli/run_config.hpp"

// The four subcommands. Each has a pure "run_" builder that computes result
// tables without touching the filesystem (tests drive these directly) and a
// "cmd_" entry point that validates the config, runs the builder, writes the
// output, and returns the process exit code.

namespace qscreen::cli {

Table run_contrast_sweep(const ContrastSweepConfig& cfg);

Table run_angular_density(const AngularDensityConfig& cfg);

struct Snapshot {
  double t = 0.0;
  Table field;  // columns x, y, abs_psi_sq over the rectangular grid
};
struct EvolveTables {
  std::vector<Snapshot> snapshots;
  Table boundary;  // columns t, wall, s, absorption_density
};
EvolveTables run_evolve_2d(const Evolve2DConfig& cfg);

struct CheckResult {
  std::string name;
  double measured = 0.0;
  double bound = 0.0;
  bool passed = false;
  std::string note;  // exception text when a check aborted
};
std::vector<CheckResult> run_validate(const ValidateConfig& cfg);

// "out.csv" + "snapshot0" -> "out_snapshot0.csv"; extensionless base paths
// get "_snapshot0" appended.
std::string derived_path(const std::string& base, const std::string& tag);

int cmd_contrast_sweep(const ContrastSweepConfig& cfg);
int cmd_angular_density(const AngularDensityConfig& cfg);
int cmd_evolve_2d(const Evolve2DConfig& cfg);
int cmd_validate(const ValidateConfig& cfg);

}  // namespace qscreen::cli
