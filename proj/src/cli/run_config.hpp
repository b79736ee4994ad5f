#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qscreen/quadrature.hpp"

// Configuration records for the four subcommands. Each record validates
// itself before any computation runs; violations throw ConfigError whose
// message starts with the offending field so the user can map it straight
// back to a flag or config-file key.

namespace qscreen::cli {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Options shared by every subcommand.
struct CommonConfig {
  std::string output_path;     // empty writes to stdout
  std::string format = "csv";  // csv | json
  int jobs = 1;                // rows computed concurrently up to this count
  double abs_tol = 0.0;        // 0 keeps the library default
  double rel_tol = 0.0;        // 0 keeps the library default
  bool quick = false;

  void validate() const;
  // Applies the tolerance overrides to a library-sized spec.
  QuadratureSpec apply(QuadratureSpec spec) const;
};

// contrast-sweep: 1D detection contrast over a beta grid.
struct ContrastSweepConfig {
  CommonConfig common;
  double k0 = 0.0;
  std::optional<double> k1;  // superposition packet when present
  std::vector<double> re_beta = {0.0};
  std::vector<double> im_beta;  // explicit grid; wins over the range below
  double im_beta_min = 0.0;
  double im_beta_max = 0.0;
  int im_beta_count = 0;
  std::string im_beta_spacing = "log";  // log | linear
  std::optional<double> L;  // adds the finite-distance columns

  void validate() const;
  // The resolved Im(beta) grid (explicit list, or the generated range).
  std::vector<double> im_beta_grid() const;
};

// angular-density: 2D angular detection densities on a screen.
struct AngularDensityConfig {
  CommonConfig common;
  double kx = 0.0;
  double ky = 0.0;
  double beta_re = 0.0;
  double beta_im = 0.0;
  std::string screen = "inclined";   // inclined | l-shaped
  std::vector<double> alpha;         // inclined orientations; default pi/2
  std::vector<double> L;             // screen distances for finite-L columns
  std::vector<std::string> methods;  // subset of {st, farfield, finite}
  int points = 721;
  // Explicit grid override. The default grid spans the admissible interval;
  // an explicit one may cross the screen plane, in which case the offending
  // rows are flagged out-of-domain and the run continues.
  std::optional<double> theta_min;
  std::optional<double> theta_max;

  void validate() const;
  // Methods actually run: the explicit list, or the default for the screen
  // shape (st + farfield for inclined, plus finite when L is given; st +
  // finite for the corner screen).
  std::vector<std::string> resolved_methods() const;
};

// evolve-2d: corner-screen field snapshots and wall absorption.
struct Evolve2DConfig {
  CommonConfig common;
  double kx = 0.0;
  double ky = 0.0;
  double beta_re = 0.0;
  double beta_im = 0.0;
  double L = 15.0;
  std::vector<double> times;
  int grid_points = 200;
  double x_min = -25.0;
  double y_min = -25.0;

  void validate() const;
};

// validate: the built-in cross-check suite; everything lives in common.
struct ValidateConfig {
  CommonConfig common;
};

}  // namespace qscreen::cli
