#include "qscreen/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

namespace qscreen {
namespace {

// 15-point Kronrod extension of 7-point Gauss (QUADPACK dqk15 constants).
// Nodes are the positive half; index 7 is the midpoint.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

// Gauss weights attach to the odd-index Kronrod nodes.
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
  double a = 0.0;
  double b = 0.0;
  double integral = 0.0;
  double error = 0.0;
  bool operator<(const Panel& o) const { return error < o.error; }
};

[[noreturn]] void throw_nonfinite(double x, double fx) {
  std::ostringstream msg;
  msg << "quadrature: integrand returned non-finite value " << fx << " at x = "
      << x;
  throw std::domain_error(msg.str());
}

// One G7K15 evaluation over [a, b] with the QUADPACK error heuristic:
// the raw |K - G| difference is sharpened by the 1.5-power rule and capped by
// resasc, the Kronrod integral of |f - mean|, so the bound stays meaningful
// for integrands that are nearly constant or nearly zero on the panel.
Panel evaluate_panel(const std::function<double(double)>& f, double a,
                     double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  double fv[15];
  for (int j = 0; j < 7; ++j) {
    fv[j] = f(center - half * kXgk[j]);
    fv[14 - j] = f(center + half * kXgk[j]);
  }
  fv[7] = f(center);
  for (int j = 0; j < 15; ++j) {
    if (!std::isfinite(fv[j])) {
      const double x = center + half * ((j < 7) ? -kXgk[j] : kXgk[14 - j]);
      throw_nonfinite(x, fv[j]);
    }
  }

  double resk = kWgk[7] * fv[7];
  double resabs = kWgk[7] * std::abs(fv[7]);
  double resg = kWg[3] * fv[7];
  for (int j = 0; j < 7; ++j) {
    const double s = fv[j] + fv[14 - j];
    resk += kWgk[j] * s;
    resabs += kWgk[j] * (std::abs(fv[j]) + std::abs(fv[14 - j]));
    if (j % 2 == 1) resg += kWg[j / 2] * s;
  }
  const double mean = resk * 0.5;
  double resasc = kWgk[7] * std::abs(fv[7] - mean);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::abs(fv[j] - mean) + std::abs(fv[14 - j] - mean));
  }

  Panel p;
  p.a = a;
  p.b = b;
  p.integral = resk * half;
  resasc *= half;
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  // Guard against an error estimate below what roundoff in resabs supports.
  const double round_floor =
      50.0 * std::numeric_limits<double>::epsilon() * resabs * half * 2.0;
  p.error = std::max(err, round_floor);
  return p;
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(abs_tol >= 0.0) || !(rel_tol >= 0.0)) {
    throw std::invalid_argument("QuadratureSpec: tolerances must be >= 0");
  }
  if (abs_tol == 0.0 && rel_tol == 0.0) {
    throw std::invalid_argument(
        "QuadratureSpec: abs_tol and rel_tol cannot both be zero");
  }
  if (!(k_max > 0.0) || !(t_max > 0.0)) {
    throw std::invalid_argument(
        "QuadratureSpec: truncation radii must be positive and finite");
  }
  if (max_subdivisions < 1) {
    throw std::invalid_argument("QuadratureSpec: max_subdivisions must be >= 1");
  }
}

QuadratureNonConvergence::QuadratureNonConvergence(
    const QuadratureResult& partial)
    : std::runtime_error([&partial] {
        std::ostringstream msg;
        msg << "quadrature did not converge: value = " << partial.value
            << ", error bound = " << partial.error_bound << " after "
            << partial.subdivisions << " subdivisions";
        return msg.str();
      }()),
      partial_(partial) {}

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b,
                                    const QuadratureSpec& spec,
                                    std::vector<double> breakpoints) {
  spec.validate();
  if (!(std::isfinite(a) && std::isfinite(b))) {
    throw std::invalid_argument("integrate_adaptive: endpoints must be finite");
  }
  QuadratureResult result;
  if (a == b) return result;

  // Seed panels at [a, b] cut at every interior breakpoint, then bisect each
  // seed once. The extra level costs one rule evaluation per panel and makes
  // a feature sitting between two seed nodes much harder to step over
  // unnoticed; it does not replace breakpoints for genuinely narrow bumps.
  std::vector<double> cuts;
  cuts.push_back(a);
  std::sort(breakpoints.begin(), breakpoints.end());
  for (double x : breakpoints) {
    if (x > a && x < b && x != cuts.back()) cuts.push_back(x);
  }
  cuts.push_back(b);
  std::vector<double> edges;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    edges.push_back(cuts[i]);
    edges.push_back(0.5 * (cuts[i] + cuts[i + 1]));
  }
  edges.push_back(cuts.back());

  std::priority_queue<Panel> heap;
  double total = 0.0;
  double total_err = 0.0;
  for (size_t i = 0; i + 1 < edges.size(); ++i) {
    Panel p = evaluate_panel(f, edges[i], edges[i + 1]);
    total += p.integral;
    total_err += p.error;
    heap.push(p);
  }

  int splits = 0;
  while (total_err > std::max(spec.abs_tol, spec.rel_tol * std::abs(total)) &&
         splits < spec.max_subdivisions) {
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      // Panel is at roundoff width; its error cannot be reduced further.
      total_err -= worst.error;
      worst.error = 0.0;
      heap.push(worst);
      ++splits;
      continue;
    }
    Panel left = evaluate_panel(f, worst.a, mid);
    Panel right = evaluate_panel(f, mid, worst.b);
    total += left.integral + right.integral - worst.integral;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++splits;
  }

  result.value = total;
  result.error_bound = total_err;
  result.subdivisions = splits;
  result.converged =
      total_err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
  return result;
}

void DecayingTailSpec::validate() const {
  if (!(window0 > 0.0) || !std::isfinite(window0)) {
    throw std::invalid_argument(
        "DecayingTailSpec: window0 must be positive and finite");
  }
  if (!(quiet_gate >= 0.0) || !std::isfinite(quiet_gate)) {
    throw std::invalid_argument(
        "DecayingTailSpec: quiet_gate must be >= 0 and finite");
  }
  if (!(quiet_level >= 0.0)) {
    throw std::invalid_argument("DecayingTailSpec: quiet_level must be >= 0");
  }
  if (!(t_max > 0.0) || !std::isfinite(t_max)) {
    throw std::invalid_argument(
        "DecayingTailSpec: t_max must be positive and finite");
  }
}

QuadratureResult integrate_decaying(const std::function<double(double)>& f,
                                    const DecayingTailSpec& march,
                                    const QuadratureSpec& window_spec) {
  march.validate();
  window_spec.validate();

  QuadratureResult acc;
  double window = march.window0;
  int quiet_run = 0;
  int windows = 0;
  double t0 = 0.0;
  while (t0 < march.t_max) {
    const double t1 = std::min(t0 + window, march.t_max);
    const QuadratureResult r = integrate_adaptive(f, t0, t1, window_spec);
    (void)require_converged(r);
    acc.value += r.value;
    acc.error_bound += r.error_bound;
    ++windows;
    if (t1 >= march.quiet_gate) {
      quiet_run = (std::abs(r.value) < march.quiet_level) ? quiet_run + 1 : 0;
      if (quiet_run >= 5) break;
      // Keep the window a bounded fraction of elapsed time so an algebraic
      // tail is swept in logarithmically many windows.
      window = std::min(window * 1.15, std::max(2.0, t1 / 8.0));
    }
    t0 = t1;
  }
  // With windows a fixed fraction of t and an integrand decaying like t^-3
  // or faster, successive window contributions shrink by a constant factor,
  // so the unswept tail is bounded by a small multiple of the quiet
  // threshold; fold that and the five quiet contributions into the error.
  acc.error_bound += 10.0 * march.quiet_level;
  acc.subdivisions = windows;
  return acc;
}

QuadratureResult integrate_semi_infinite(const std::function<double(double)>& f,
                                         const QuadratureSpec& spec,
                                         SemiAxis axis,
                                         std::vector<double> breakpoints) {
  spec.validate();
  const double radius = (axis == SemiAxis::momentum) ? spec.k_max : spec.t_max;
  QuadratureResult r = integrate_adaptive(f, 0.0, radius, spec, breakpoints);

  // Coarse scan of |f| past the truncation point. Three fixed panels over one
  // further radius catch a slowly decaying tail well enough to flag it; the
  // Gaussian-damped integrands of this project produce an exact-looking zero.
  const double span = radius;
  double tail = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double lo = radius + span * i / 3.0;
    const double hi = radius + span * (i + 1) / 3.0;
    Panel p = evaluate_panel([&f](double x) { return std::abs(f(x)); }, lo, hi);
    tail += p.integral;
  }
  r.tail_estimate = std::abs(tail);
  return r;
}

double require_converged(const QuadratureResult& r) {
  if (!r.converged) throw QuadratureNonConvergence(r);
  return r.value;
}

}  // namespace qscreen
