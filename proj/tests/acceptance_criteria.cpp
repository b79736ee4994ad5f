// Acceptance suite: one line per shipped claim, checked end to end against
// the library exactly as a user would call it. Every bound here was frozen
// after measuring the quantity with an independent scratch computation; the
// companion unit suites pin the same numbers at module level.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "qscreen/complex_erf.hpp"
#include "qscreen/detection_1d.hpp"
#include "qscreen/pde_oracle.hpp"
#include "qscreen/scattering_2d.hpp"
#include "qscreen/wavepacket_1d.hpp"

using namespace qscreen;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> grid(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    grid[static_cast<size_t>(i)] =
        std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (n - 1));
  }
  return grid;
}

// 1. The scattering prediction for a fast packet: the quadrature result
// equals 1 - erfc(k0)/2, and the tiny deficit follows the large-k0
// asymptotic e^{-k0^2} / (2 sqrt(pi) k0) within 1%.
Outcome deficit_asymptotic() {
  const double k0 = 20.0;
  const Packet1D p = Packet1D::gaussian(k0);
  const double p_st = p_st_1d(p, detection_quadrature_spec(p, 2.0));
  const double deficit = 0.5 * erfc_complex({k0, 0.0}).real();
  const double closed_gap = std::fabs(p_st - (1.0 - deficit));
  const double asym = std::exp(-k0 * k0) / (2.0 * std::sqrt(kPi) * k0);
  const double rel = std::fabs(deficit - asym) / deficit;
  return {closed_gap < 1e-12 && rel < 1e-2,
          "closed-form gap " + num(closed_gap) + " (< 1e-12), deficit vs "
          "asymptotic " + num(rel) + " relative (< 1e-2)"};
}

// 2. Tuned-screen contrast sweep at k0 = 20: the lossless-screen curve
// bottoms out where Im(beta) matches the packet momentum, and the L = 2
// screen already sits on the far-field curve everywhere on the grid.
Outcome tuned_minimum() {
  const Packet1D p = Packet1D::gaussian(20.0);
  const QuadratureSpec spec = detection_quadrature_spec(p, 2.0);
  const double p_st = p_st_1d(p, spec);
  const auto im_grid = log_grid(1.0, 400.0, 65);

  double worst_gap = 0.0;
  double min_c = 1e300;
  double min_at = 0.0;
  for (double re : {0.0, 5.0, 20.0}) {
    for (double im : im_grid) {
      const auto beta = AbcParameter::physical({re, im});
      // The momentum-route finite-L probability needs Re(beta) <= 0; the
      // detection weight depends on Re(beta) only through its square, so
      // the mirrored parameter computes the same probability.
      const auto mirror = AbcParameter::physical({-re, im});
      const double c_inf = contrast_infinity(p, beta, spec);
      const double c_L = p_st - p_abc_dollard(p, mirror, 2.0, spec);
      worst_gap = std::max(worst_gap, std::fabs(c_L - c_inf));
      if (re == 0.0 && c_inf < min_c) {
        min_c = c_inf;
        min_at = im;
      }
    }
  }
  return {min_at >= 18.0 && min_at <= 22.0 && worst_gap < 1e-3,
          "Re(beta)=0 minimum at Im(beta) " + num(min_at) +
          " (in [18, 22]), max |C_L2 - C_inf| " + num(worst_gap) +
          " (< 1e-3)"};
}

// 3. Two-momentum superposition floor: no tuning of the absorber brings the
// far-field contrast below about one half, and the two-point saddle
// estimate tracks the exact curve over the central tuning range.
Outcome superposition_floor() {
  const Packet1D p = Packet1D::superposition(5.0, 1000.0);
  const QuadratureSpec spec = detection_quadrature_spec(p, 10.0);

  double min_c = 1e300;
  for (double im : log_grid(1.0, 2000.0, 81)) {
    min_c = std::min(
        min_c, contrast_infinity(p, AbcParameter::physical({0.0, im}), spec));
  }
  double worst = 0.0;
  for (double im : log_grid(2.0, 200.0, 33)) {
    const auto beta = AbcParameter::physical({0.0, im});
    worst = std::max(worst,
                     std::fabs(contrast_infinity(p, beta, spec) -
                               contrast_laplace_approx(5.0, 1000.0, beta.beta)));
  }
  return {min_c >= 0.48 && min_c <= 0.52 && worst < 0.01,
          "min contrast " + num(min_c) + " (in [0.48, 0.52]), saddle "
          "estimate off by " + num(worst) + " on Im(beta) in [2, 200] "
          "(< 0.01)"};
}

// 4. The closed-form solution against the independent grid evolution:
// second-order convergence down to a 1e-4 discrepancy at the finest level,
// with roughly 4x error reduction per refinement.
Outcome grid_convergence() {
  std::vector<double> errors;
  for (double h : {2.4e-3, 1.2e-3, 6e-4}) {
    const int n = static_cast<int>(std::lround(30.0 / h)) + 1;
    const auto grid = Grid1D::make(-20.0, 10.0, n, h / 4.8);
    errors.push_back(
        validate_closed_form(5.0, {0.0, 5.0}, 10.0, grid, {1.0, 2.0, 4.0}));
  }
  const double r1 = errors[0] / errors[1];
  const double r2 = errors[1] / errors[2];
  const bool ratios_ok = r1 > 2.8 && r1 < 5.5 && r2 > 2.8 && r2 < 5.5;
  return {errors[2] < 1e-4 && ratios_ok,
          "finest rel L2 error " + num(errors[2]) + " (< 1e-4), reduction "
          "ratios " + num(r1) + ", " + num(r2) + " (in [2.8, 5.5])"};
}

// 5. The two independent detection-probability routes (time integral at the
// screen, momentum integral with the reflection weight) agree pointwise.
Outcome dual_route() {
  double worst = 0.0;
  for (double k0 : {2.0, 5.0, 20.0}) {
    const Packet1D p = Packet1D::gaussian(k0);
    const QuadratureSpec spec = detection_quadrature_spec(p, 10.0);
    for (double im : {0.7, 2.0, 20.0}) {
      const auto beta = AbcParameter::physical({0.0, im});
      worst = std::max(worst,
                       std::fabs(p_abc_time_integral(p, beta, 10.0, spec) -
                                 p_abc_dollard(p, beta, 10.0, spec)));
    }
  }
  return {worst < 1e-6,
          "max route disagreement " + num(worst) + " on the 3x3 grid "
          "(< 1e-6)"};
}

// 6. The grid evolution is contractive for differences of states, and its
// per-step absorption bookkeeping matches the endpoint-sampled density to
// third order in the step size.
Outcome contractivity_ledger() {
  const auto grid = Grid1D::make(-5.0, 5.0, 401, 1e-3);
  std::mt19937 rng(20260814u);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const auto random_state = [&] {
    std::vector<Complex> psi(static_cast<size_t>(grid.n_points));
    for (int j = 1; j < grid.n_points; ++j) {
      const double envelope = std::exp(-0.5 * grid.x(j) * grid.x(j));
      psi[static_cast<size_t>(j)] =
          envelope * Complex(gauss(rng), gauss(rng));
    }
    psi[0] = 0.0;
    return psi;
  };
  double worst_defect = 0.0;
  for (int pair = 0; pair < 10; ++pair) {
    const auto a = random_state();
    const auto b = random_state();
    worst_defect =
        std::max(worst_defect, contractivity_check(a, b, {0.3, 1.5}, grid, 0.2));
  }

  // Per-step norm loss against the trapezoid of the sampled densities at two
  // step sizes: the gap is O(dt^3), so halving dt divides it by ~8.
  double gap[2] = {0.0, 0.0};
  int level = 0;
  for (double dt : {2e-3, 1e-3}) {
    const auto ledger_grid = Grid1D::make(-30.0, 6.0, 3601, dt);
    std::vector<Complex> psi0(static_cast<size_t>(ledger_grid.n_points));
    for (int j = 0; j < ledger_grid.n_points; ++j) {
      psi0[static_cast<size_t>(j)] =
          psi_tG(ledger_grid.x(j), 0.0, 3.0, {0.0, 2.0}, 6.0);
    }
    const auto led = evolve_robin(psi0, {0.0, 2.0}, ledger_grid, 2.4).ledger;
    for (size_t i = 0; i + 1 < led.times.size(); ++i) {
      const double step_loss = led.cumulative[i + 1] - led.cumulative[i];
      const double trapezoid =
          0.5 * dt * (led.absorbed_density[i] + led.absorbed_density[i + 1]);
      gap[level] = std::max(gap[level], std::fabs(step_loss - trapezoid));
    }
    ++level;
  }
  const double ratio = gap[0] / gap[1];
  return {worst_defect < 1e-10 && gap[0] < 2e-7 && ratio > 6.0 &&
              ratio < 10.0,
          "contraction defect " + num(worst_defect) + " over 10 pairs "
          "(< 1e-10), per-step ledger gap " + num(gap[0]) +
          " (< 2e-7) shrinking 8x per dt halving (ratio " + num(ratio) +
          ")"};
}

// 7. Tilting the screen changes the absorbing prediction but not the free
// one: the scattering density is computed without reference to the screen
// orientation and repeats bitwise, the five far-field curves separate
// visibly relative to their peaks, and the L = 15 line integrals land on
// the far-field curve.
Outcome tilted_screens() {
  const Packet2D p{-1.0, std::sqrt(3.0)};
  const auto beta = AbcParameter::physical({0.0, 2.0});
  const auto spec = scattering_quadrature_spec(p, 15.0);
  const std::vector<double> dalphas = {-0.2, -0.1, 0.0, 0.1, 0.2};

  // Common direction window admissible for every tilt.
  const double lo = kPi / 2.0 + 0.2 - kPi + 1e-2;
  const double hi = kPi / 2.0 - 0.2 - 1e-2;
  std::vector<double> thetas(301);
  for (int i = 0; i < 301; ++i) {
    thetas[static_cast<size_t>(i)] = lo + (hi - lo) * i / 300.0;
  }

  bool st_identical = true;
  std::vector<double> st_reference;
  std::vector<std::vector<double>> curves;
  std::vector<double> peaks;
  for (double dalpha : dalphas) {
    const double alpha = kPi / 2.0 + dalpha;
    std::vector<double> st_here;
    std::vector<double> curve;
    double peak = 0.0;
    for (double th : thetas) {
      st_here.push_back(dp_st_dtheta(p, th, spec));
      curve.push_back(dp_abc_dtheta_farfield(p, th, beta, alpha, spec));
      peak = std::max(peak, curve.back());
    }
    if (st_reference.empty()) {
      st_reference = st_here;
    } else {
      st_identical = st_identical && st_here == st_reference;
    }
    curves.push_back(std::move(curve));
    peaks.push_back(peak);
  }

  double min_separation = 1e300;
  for (size_t i = 0; i < curves.size(); ++i) {
    for (size_t j = i + 1; j < curves.size(); ++j) {
      double dmax = 0.0;
      for (size_t m = 0; m < thetas.size(); ++m) {
        dmax = std::max(dmax, std::fabs(curves[i][m] - curves[j][m]));
      }
      min_separation =
          std::min(min_separation, dmax / std::max(peaks[i], peaks[j]));
    }
  }

  const auto geom = ScreenGeometry::inclined(kPi / 2.0, 15.0);
  double worst_marker = 0.0;
  for (double th : angular_grid(geom, 25)) {
    worst_marker = std::max(
        worst_marker,
        std::fabs(dp_abc_dtheta_finite_L(p, th, beta, geom, spec) -
                  dp_abc_dtheta_farfield(p, th, beta, kPi / 2.0, spec)));
  }
  return {st_identical && min_separation > 0.05 && worst_marker < 1e-3,
          std::string("free curve bitwise tilt-independent: ") +
          (st_identical ? "yes" : "NO") + ", min pairwise separation " +
          num(min_separation) + " of peak (> 0.05), worst L=15 marker gap " +
          num(worst_marker) + " (< 1e-3)"};
}

// 8. The corner screen splits a fast packet into two arrival lobes that the
// free prediction does not have, and at L = 100 roughly two thirds of the
// packet lands on the vertical wall and one third on the horizontal one.
Outcome corner_screen() {
  const Packet2D p{9.66, 2.59};
  const auto beta = AbcParameter::physical({0.0, 2.59});

  const auto geom = ScreenGeometry::l_shaped(50.0);
  const auto spec = scattering_quadrature_spec(p, 50.0);
  std::vector<double> abc, st;
  for (double th : angular_grid(geom, 721)) {
    abc.push_back(dp_abc_dtheta_finite_L(p, th, beta, geom, spec));
    st.push_back(dp_st_dtheta(p, th, spec));
  }
  const auto interior_maxima = [](const std::vector<double>& v) {
    const double global = *std::max_element(v.begin(), v.end());
    int count = 0;
    for (size_t i = 1; i + 1 < v.size(); ++i) {
      if (v[i] > v[i - 1] && v[i] > v[i + 1] && v[i] > 0.01 * global) ++count;
    }
    return count;
  };
  const int abc_peaks = interior_maxima(abc);
  const int st_peaks = interior_maxima(st);

  const auto totals = section_totals_lshaped(
      p, beta, 100.0, scattering_quadrature_spec(p, 100.0));
  const bool totals_ok = totals.vertical >= 0.63 && totals.vertical <= 0.69 &&
                         totals.horizontal >= 0.30 &&
                         totals.horizontal <= 0.36;
  return {abc_peaks == 2 && st_peaks == 1 && totals_ok,
          "L=50 absorbing lobes " + std::to_string(abc_peaks) +
          " (= 2) vs free " + std::to_string(st_peaks) +
          " (= 1); L=100 wall totals " + num(totals.vertical) +
          " (in [0.63, 0.69]) and " + num(totals.horizontal) +
          " (in [0.30, 0.36])"};
}

// 9. Both reflective limits suppress detection. The almost-transparent
// screen detects at the rate of its Im(beta); the almost-hard wall detects
// at the 4<k>/Im(beta) rate, which is 2e-5 at Im(beta) = 1e6 and drops
// below 1e-6 only once Im(beta) reaches ~1e8.
Outcome limit_suppression() {
  const Packet1D p = Packet1D::gaussian(5.0);
  const QuadratureSpec spec = detection_quadrature_spec(p, 10.0);
  const auto probe = [&](double im) {
    return p_abc_dollard(p, AbcParameter::physical({0.0, im}), 10.0, spec);
  };
  const double soft = probe(1e-8);
  const double hard = probe(1e6);
  const double harder = probe(1e8);
  return {soft < 1e-6 && hard < 1e-4 && harder < 1e-6,
          "P at Im(beta)=1e-8: " + num(soft) + " (< 1e-6), at 1e6: " +
          num(hard) + " (< 1e-4, exact rate 4<k>/Im(beta) = 2e-5), at "
          "1e8: " + num(harder) + " (< 1e-6)"};
}

// 10. A packet of negative momentum never reaches the screen: both the
// far-field contrast and the detection probability vanish. Loose absolute
// tolerances let the quadrature certify the near-zero integrals.
Outcome negative_momentum() {
  const Packet1D p = Packet1D::gaussian(-5.0);
  QuadratureSpec spec = detection_quadrature_spec(p, 10.0);
  spec.abs_tol = 1e-8;
  spec.rel_tol = 1e-3;
  const auto beta = AbcParameter::physical({0.0, 5.0});
  const double c_inf = contrast_infinity(p, beta, spec);
  const double p_abc = p_abc_dollard(p, beta, 10.0, spec);
  return {c_inf < 1e-6 && p_abc < 1e-6,
          "C_inf " + num(c_inf) + " and P_ABC " + num(p_abc) + " (< 1e-6)"};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"scattering deficit asymptotic", deficit_asymptotic},
      {"tuned-screen contrast minimum", tuned_minimum},
      {"superposition contrast floor", superposition_floor},
      {"closed form vs grid evolution", grid_convergence},
      {"dual detection routes", dual_route},
      {"contractivity and ledger", contractivity_ledger},
      {"tilted screens", tilted_screens},
      {"corner screen", corner_screen},
      {"reflective limits", limit_suppression},
      {"negative momentum", negative_momentum},
  };

  int failures = 0;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("aborted: ") + e.what()};
    }
    failures += outcome.pass ? 0 : 1;
    std::printf("criterion %2d %s  %s: %s\n", index,
                outcome.pass ? "PASS" : "FAIL", c.name,
                outcome.detail.c_str());
    std::fflush(stdout);
  }
  if (failures > 0) {
    std::printf("%d of 10 criteria failed\n", failures);
    return 1;
  }
  std::printf("all 10 criteria passed\n");
  return 0;
}
