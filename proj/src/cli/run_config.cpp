#include "cli/run_config.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace qscreen::cli {

namespace {

void require_finite(double v, const char* field) {
  if (!std::isfinite(v)) {
    throw ConfigError(std::string(field) + ": must be finite");
  }
}

}  // namespace

void CommonConfig::validate() const {
  if (format != "csv" && format != "json") {
    throw ConfigError("format: expected 'csv' or 'json', got '" + format +
                      "'");
  }
  if (jobs < 1 || jobs > 256) {
    throw ConfigError("jobs: expected a worker count in [1, 256]");
  }
  if (abs_tol < 0.0 || !std::isfinite(abs_tol)) {
    throw ConfigError("abs-tol: must be >= 0 and finite (0 keeps the "
                      "library default)");
  }
  if (rel_tol < 0.0 || !std::isfinite(rel_tol)) {
    throw ConfigError("rel-tol: must be >= 0 and finite (0 keeps the "
                      "library default)");
  }
}

QuadratureSpec CommonConfig::apply(QuadratureSpec spec) const {
  if (abs_tol > 0.0) spec.abs_tol = abs_tol;
  if (rel_tol > 0.0) spec.rel_tol = rel_tol;
  return spec;
}

void ContrastSweepConfig::validate() const {
  common.validate();
  require_finite(k0, "k0");
  if (k1) {
    require_finite(*k1, "k1");
    if (*k1 == k0) {
      throw ConfigError("k1: superposition needs two distinct momenta "
                        "(k1 == k0)");
    }
  }
  if (re_beta.empty()) {
    throw ConfigError("re-beta: the grid is empty");
  }
  for (double re : re_beta) require_finite(re, "re-beta");
  if (im_beta.empty() && im_beta_count == 0) {
    throw ConfigError("im-beta: the grid is empty (provide --im-beta or "
                      "--im-beta-min/--im-beta-max/--im-beta-count)");
  }
  if (!im_beta.empty()) {
    for (double im : im_beta) {
      require_finite(im, "im-beta");
      if (im <= 0.0) {
        throw ConfigError("im-beta: detection runs need Im(beta) > 0 "
                          "everywhere on the grid");
      }
    }
  } else {
    if (im_beta_count < 1) {
      throw ConfigError("im-beta-count: must be >= 1");
    }
    require_finite(im_beta_min, "im-beta-min");
    require_finite(im_beta_max, "im-beta-max");
    if (im_beta_min <= 0.0) {
      throw ConfigError("im-beta-min: detection runs need Im(beta) > 0");
    }
    if (im_beta_max < im_beta_min) {
      throw ConfigError("im-beta-max: must be >= im-beta-min");
    }
    if (im_beta_count > 1 && im_beta_max == im_beta_min) {
      throw ConfigError("im-beta-count: a degenerate range [a, a] admits "
                        "only one point");
    }
    if (im_beta_spacing != "log" && im_beta_spacing != "linear") {
      throw ConfigError("im-beta-spacing: expected 'log' or 'linear', got '" +
                        im_beta_spacing + "'");
    }
  }
  if (L) {
    require_finite(*L, "L");
    if (*L <= 0.0) throw ConfigError("L: screen distance must be > 0");
  }
}

std::vector<double> ContrastSweepConfig::im_beta_grid() const {
  if (!im_beta.empty()) return im_beta;
  std::vector<double> grid(static_cast<size_t>(im_beta_count));
  if (im_beta_count == 1) {
    grid[0] = im_beta_min;
    return grid;
  }
  if (im_beta_spacing == "log") {
    const double lo = std::log(im_beta_min);
    const double hi = std::log(im_beta_max);
    for (int i = 0; i < im_beta_count; ++i) {
      grid[static_cast<size_t>(i)] =
          std::exp(lo + (hi - lo) * i / (im_beta_count - 1));
    }
  } else {
    for (int i = 0; i < im_beta_count; ++i) {
      grid[static_cast<size_t>(i)] =
          im_beta_min + (im_beta_max - im_beta_min) * i / (im_beta_count - 1);
    }
  }
  grid.front() = im_beta_min;
  grid.back() = im_beta_max;
  return grid;
}

void AngularDensityConfig::validate() const {
  common.validate();
  require_finite(kx, "kx");
  require_finite(ky, "ky");
  require_finite(beta_re, "beta-re");
  require_finite(beta_im, "beta-im");
  if (beta_im <= 0.0) {
    throw ConfigError("beta-im: detection runs need Im(beta) > 0");
  }
  if (screen != "inclined" && screen != "l-shaped") {
    throw ConfigError("screen: expected 'inclined' or 'l-shaped', got '" +
                      screen + "'");
  }
  for (double a : alpha) require_finite(a, "alpha");
  if (screen == "l-shaped" && !alpha.empty()) {
    throw ConfigError("alpha: the corner screen has a fixed orientation");
  }
  for (double dist : L) {
    require_finite(dist, "L");
    if (dist <= 0.0) throw ConfigError("L: screen distances must be > 0");
  }
  if (points < 2) throw ConfigError("points: need at least 2 grid points");
  if (theta_min.has_value() != theta_max.has_value()) {
    throw ConfigError("theta-min/theta-max: provide both or neither");
  }
  if (theta_min) {
    require_finite(*theta_min, "theta-min");
    require_finite(*theta_max, "theta-max");
    if (*theta_max <= *theta_min) {
      throw ConfigError("theta-max: must be > theta-min");
    }
  }

  const std::set<std::string> known = {"st", "farfield", "finite"};
  for (const auto& m : methods) {
    if (known.count(m) == 0) {
      throw ConfigError("methods: unknown method '" + m +
                        "' (expected st, farfield, finite)");
    }
  }
  const auto resolved = resolved_methods();
  const bool wants_farfield =
      std::find(resolved.begin(), resolved.end(), "farfield") !=
      resolved.end();
  const bool wants_finite =
      std::find(resolved.begin(), resolved.end(), "finite") != resolved.end();
  if (wants_farfield && screen == "l-shaped") {
    throw ConfigError("methods: 'farfield' applies to the inclined screen "
                      "only (sample the corner screen at large L instead)");
  }
  if (wants_finite && L.empty()) {
    throw ConfigError("L: the 'finite' method needs at least one screen "
                      "distance");
  }
  if (!wants_finite && !L.empty()) {
    throw ConfigError("methods: screen distances were given but 'finite' is "
                      "not among the methods");
  }
}

std::vector<std::string> AngularDensityConfig::resolved_methods() const {
  if (!methods.empty()) return methods;
  std::vector<std::string> out = {"st"};
  if (screen == "inclined") {
    out.push_back("farfield");
    if (!L.empty()) out.push_back("finite");
  } else {
    out.push_back("finite");
  }
  return out;
}

void Evolve2DConfig::validate() const {
  common.validate();
  require_finite(kx, "kx");
  require_finite(ky, "ky");
  require_finite(beta_re, "beta-re");
  require_finite(beta_im, "beta-im");
  if (beta_im <= 0.0) {
    throw ConfigError("beta-im: detection runs need Im(beta) > 0");
  }
  require_finite(L, "L");
  if (L <= 0.0) throw ConfigError("L: screen distance must be > 0");
  if (times.empty()) throw ConfigError("times: provide at least one time");
  for (double t : times) {
    require_finite(t, "times");
    if (t < 0.0) throw ConfigError("times: snapshot times must be >= 0");
  }
  if (grid_points < 2 || grid_points > 4000) {
    throw ConfigError("grid-points: expected a grid size in [2, 4000]");
  }
  require_finite(x_min, "x-min");
  require_finite(y_min, "y-min");
  if (x_min >= L) throw ConfigError("x-min: must be < L");
  if (y_min >= L) throw ConfigError("y-min: must be < L");
  if (common.output_path.empty()) {
    throw ConfigError("output: evolve-2d writes one file per snapshot and "
                      "needs an output path");
  }
}

}  // namespace qscreen::cli
