#include <exception>
#include <iostream>
#include <stdexcept>

#include "CLI11.hpp"
#include "cli/commands.hpp"
#include "qscreen/quadrature.hpp"

// Exit codes: 0 success, 1 validation-suite failure, 2 configuration or
// usage error, 3 numerical non-convergence.

namespace {

using namespace qscreen::cli;

void add_common_options(CLI::App* sub, CommonConfig* common) {
  // Let `qscreen <subcommand> --config file.ini` reach the top-level
  // --config option, and let a [subcommand] section in the file select
  // the subcommand when it is not named on the command line.
  sub->fallthrough();
  sub->configurable();
  sub->add_option("--output", common->output_path,
                  "Output file path (stdout when omitted)");
  sub->add_option("--format", common->format, "Output format: csv or json")
      ->capture_default_str();
  sub->add_option("--jobs", common->jobs,
                  "Compute rows concurrently with up to this many workers")
      ->capture_default_str();
  sub->add_option("--abs-tol", common->abs_tol,
                  "Quadrature absolute tolerance override (0 keeps the "
                  "library default)");
  sub->add_option("--rel-tol", common->rel_tol,
                  "Quadrature relative tolerance override (0 keeps the "
                  "library default)");
  sub->add_flag("--quick", common->quick,
                "Run the smaller, faster configuration");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Detection probabilities for Gaussian wave packets at absorbing "
      "screens: 1D contrast sweeps, 2D angular densities, corner-screen "
      "snapshots, and the built-in cross-check suite. All quantities are "
      "dimensionless (lengths in packet widths, momenta in their inverse, "
      "times in packet widths squared)."};
  app.set_version_flag("--version", qscreen::cli::kVersion);
  app.set_config("--config", "",
                 "Read options from an INI/TOML file holding one "
                 "[subcommand] section with key = value lines; flags given "
                 "on the command line override the file");
  app.allow_config_extras(false);
  app.require_subcommand(1);

  ContrastSweepConfig sweep;
  CLI::App* sweep_cmd = app.add_subcommand(
      "contrast-sweep",
      "1D detection probabilities and their contrast over a beta grid");
  sweep_cmd->add_option("--k0", sweep.k0, "Central momentum of the packet")
      ->required();
  sweep_cmd->add_option("--k1", sweep.k1,
                        "Second momentum: run the two-bump superposition "
                        "packet instead of the single Gaussian");
  sweep_cmd->add_option("--re-beta", sweep.re_beta, "Re(beta) grid values")
      ->delimiter(',')
      ->capture_default_str();
  sweep_cmd->add_option("--im-beta", sweep.im_beta,
                        "Explicit Im(beta) grid values")
      ->delimiter(',');
  sweep_cmd->add_option("--im-beta-min", sweep.im_beta_min,
                        "Generated Im(beta) grid: smallest value");
  sweep_cmd->add_option("--im-beta-max", sweep.im_beta_max,
                        "Generated Im(beta) grid: largest value");
  sweep_cmd->add_option("--im-beta-count", sweep.im_beta_count,
                        "Generated Im(beta) grid: number of points");
  sweep_cmd->add_option("--im-beta-spacing", sweep.im_beta_spacing,
                        "Generated Im(beta) grid spacing: log or linear")
      ->capture_default_str();
  sweep_cmd->add_option("--L", sweep.L,
                        "Finite screen distance; adds the contrast_L column "
                        "and switches p_abc to the finite-distance value");
  add_common_options(sweep_cmd, &sweep.common);

  AngularDensityConfig angular;
  CLI::App* angular_cmd = app.add_subcommand(
      "angular-density", "2D angular detection densities on a screen");
  angular_cmd->add_option("--kx", angular.kx, "Packet momentum, x component")
      ->required();
  angular_cmd->add_option("--ky", angular.ky, "Packet momentum, y component")
      ->required();
  angular_cmd->add_option("--beta-re", angular.beta_re, "Re(beta)")
      ->capture_default_str();
  angular_cmd->add_option("--beta-im", angular.beta_im, "Im(beta), > 0")
      ->required();
  angular_cmd->add_option("--screen", angular.screen,
                          "Screen shape: inclined or l-shaped")
      ->capture_default_str();
  angular_cmd->add_option("--alpha", angular.alpha,
                          "Inclined-screen orientations to sweep (radians; "
                          "default pi/2)")
      ->delimiter(',');
  angular_cmd->add_option("--L", angular.L,
                          "Screen distances for the finite-L method")
      ->delimiter(',');
  angular_cmd->add_option("--methods", angular.methods,
                          "Densities to compute: st, farfield, finite "
                          "(default depends on the screen shape)")
      ->delimiter(',');
  angular_cmd->add_option("--points", angular.points,
                          "Number of theta samples per curve")
      ->capture_default_str();
  angular_cmd->add_option("--theta-min", angular.theta_min,
                          "Explicit theta grid start (default: the "
                          "admissible interval)");
  angular_cmd->add_option("--theta-max", angular.theta_max,
                          "Explicit theta grid end");
  add_common_options(angular_cmd, &angular.common);

  Evolve2DConfig evolve;
  CLI::App* evolve_cmd = app.add_subcommand(
      "evolve-2d",
      "Corner-screen probability-density snapshots and wall absorption");
  evolve_cmd->add_option("--kx", evolve.kx, "Packet momentum, x component")
      ->required();
  evolve_cmd->add_option("--ky", evolve.ky, "Packet momentum, y component")
      ->required();
  evolve_cmd->add_option("--beta-re", evolve.beta_re, "Re(beta)")
      ->capture_default_str();
  evolve_cmd->add_option("--beta-im", evolve.beta_im, "Im(beta), > 0")
      ->required();
  evolve_cmd->add_option("--L", evolve.L, "Corner screen distance")
      ->capture_default_str();
  evolve_cmd->add_option("--times", evolve.times, "Snapshot times")
      ->delimiter(',')
      ->required();
  evolve_cmd->add_option("--grid-points", evolve.grid_points,
                         "Samples per axis of the rectangular grid")
      ->capture_default_str();
  evolve_cmd->add_option("--x-min", evolve.x_min, "Grid lower bound in x")
      ->capture_default_str();
  evolve_cmd->add_option("--y-min", evolve.y_min, "Grid lower bound in y")
      ->capture_default_str();
  add_common_options(evolve_cmd, &evolve.common);

  ValidateConfig validate;
  CLI::App* validate_cmd = app.add_subcommand(
      "validate",
      "Cross-check suite: closed forms against the independent grid "
      "evolution, both probability routes, contractivity, the norm ledger, "
      "and the 2D densities");
  add_common_options(validate_cmd, &validate.common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help, --version
    app.exit(e);
    return 2;
  }

  try {
    if (sweep_cmd->parsed()) return cmd_contrast_sweep(sweep);
    if (angular_cmd->parsed()) return cmd_angular_density(angular);
    if (evolve_cmd->parsed()) return cmd_evolve_2d(evolve);
    if (validate_cmd->parsed()) return cmd_validate(validate);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const qscreen::QuadratureNonConvergence& e) {
    std::cerr << "numerical non-convergence: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
