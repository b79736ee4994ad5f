#include "qscreen/scattering_2d.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qscreen {
namespace {

constexpr double kPi = 3.14159265358979323846;

void require_finite_beta(Complex beta, const char* op) {
  if (!std::isfinite(beta.real()) || !std::isfinite(beta.imag())) {
    std::ostringstream msg;
    msg << op << ": beta must be finite";
    throw std::invalid_argument(msg.str());
  }
}

void require_physical(const AbcParameter& beta, const char* op) {
  if (!(beta.beta.imag() > 0.0)) {
    std::ostringstream msg;
    msg << op << " requires an absorbing screen (Im beta > 0), got beta = ("
        << beta.beta.real() << ", " << beta.beta.imag() << ")";
    throw std::domain_error(msg.str());
  }
}

// Admissibility of a detection direction, including the grazing cutoff.
void require_admissible(const ScreenGeometry& geom, double theta,
                        const char* op) {
  if (!std::isfinite(theta)) {
    std::ostringstream msg;
    msg << op << ": theta must be finite";
    throw std::invalid_argument(msg.str());
  }
  // The slack absorbs one-ulp endpoint rounding in externally built grids;
  // it is nine orders below the cutoff itself.
  const double slack = 1e-9;
  const double lo = geom.theta_min() + kGrazingCutoff - slack;
  const double hi = geom.theta_max() - kGrazingCutoff + slack;
  if (!(theta >= lo && theta <= hi)) {
    std::ostringstream msg;
    msg << op << ": theta = " << theta
        << " is outside the admissible interval [" << lo << ", " << hi
        << "] (screen directions, including the " << kGrazingCutoff
        << " grazing cutoff, do not meet the screen)";
    throw std::domain_error(msg.str());
  }
}

// Momentum-space weight of the packet along direction theta, written with
// the combined exponent so large |k0| cannot overflow:
//   G^2(k0) G^2(k) exp(2 k k0 c) = exp(-(k - k0 c)^2 - (k0 s)^2) / pi.
double momentum_weight(double k, double a, double b) {
  return std::exp(-(k - a) * (k - a) - b * b) / kPi;
}

// One 1D factor of the separable 2D solution, evaluated at a fixed point.
struct Factor {
  bool screened = true;  // absorbed 1D solution; false for free evolution
  double pos = 0.0;      // coordinate the factor is evaluated at
  double k = 0.0;        // central momentum component along this axis
};

// Time by which every factor's signal at its evaluation point has arrived:
// a screened factor sees the direct packet and its mirror image from 2L-pos,
// a free factor just the packet; slow or receding components spread
// diffusively (width ~ t), so distance itself bounds the arrival time.
double arrival_gate(const Factor& f, double L) {
  const double d = f.screened ? (2.0 * L - f.pos) : std::abs(f.pos);
  const double speed = std::abs(f.k);
  return (speed > 0.5) ? (d + 6.0) / speed : d + 6.0;
}

// Earliest direct transit, used only to size the first march window.
double first_transit(const Factor& f) {
  if (f.pos > 0.0 && f.k > 0.5 && f.screened) return f.pos / f.k;
  if (!f.screened && std::abs(f.k) > 0.5 && f.pos * f.k > 0.0) {
    return f.pos / f.k;
  }
  return -1.0;
}

// Shared core of dp_abc_dtheta_finite_L: the line element factor times the
// time-integrated absorption at the screen point, with the product solution
// split into its two 1D factors.
double finite_L_density(const Factor& fa, const Factor& fb, Complex beta,
                        double L, double dl, const QuadratureSpec& spec) {
  const auto factor_value = [&](const Factor& f, double t) {
    return f.screened ? psi_tG(f.pos, t, f.k, beta, L)
                      : phi_tG(f.pos, t, f.k);
  };
  const auto integrand = [&](double t) {
    return dl * beta.imag() *
           std::norm(factor_value(fa, t) * factor_value(fb, t));
  };

  DecayingTailSpec march;
  march.quiet_gate = std::max(arrival_gate(fa, L), arrival_gate(fb, L));
  march.quiet_level = spec.abs_tol / 10.0;
  march.t_max = spec.t_max;
  double t_first = -1.0;
  for (double cand : {first_transit(fa), first_transit(fb)}) {
    if (cand > 0.0 && (t_first < 0.0 || cand < t_first)) t_first = cand;
  }
  march.window0 =
      (t_first > 0.0) ? std::clamp(0.5 * t_first, 0.25, 2.0) : 2.0;

  QuadratureSpec win_spec = spec;
  win_spec.abs_tol = spec.abs_tol / 10.0;

  const QuadratureResult r = integrate_decaying(integrand, march, win_spec);
  return std::max(0.0, r.value);
}

// Feature directions of the corner-screen density, used to seed the section
// quadrature: the through direction of the packet and, when both components
// advance, the direction where the lobe reflected off the vertical segment
// crosses the horizontal one (the mirror packet from x = 2L reaches y = L at
// x = 2L - k0x L / k0y, at a distance-independent angle).
std::vector<double> section_seeds(const Packet2D& p) {
  std::vector<double> seeds;
  const auto add = [&seeds](double c) {
    seeds.push_back(c - 0.4);
    seeds.push_back(c);
    seeds.push_back(c + 0.4);
  };
  if (p.k0() > 0.5) add(p.theta0());
  if (p.k0x > 0.5 && p.k0y > 0.5) {
    add(std::atan2(1.0, 2.0 - p.k0x / p.k0y));
  }
  return seeds;
}

}  // namespace

double Packet2D::k0() const { return std::hypot(k0x, k0y); }

double Packet2D::theta0() const { return std::atan2(k0y, k0x); }

ScreenGeometry ScreenGeometry::inclined(double alpha, double L) {
  if (!std::isfinite(alpha)) {
    throw std::invalid_argument(
        "ScreenGeometry: inclination alpha must be finite");
  }
  if (!(L > 0.0) || !std::isfinite(L)) {
    throw std::invalid_argument(
        "ScreenGeometry: screen distance L must be positive and finite");
  }
  ScreenGeometry g;
  g.kind = Kind::inclined;
  g.alpha = alpha;
  g.L = L;
  return g;
}

ScreenGeometry ScreenGeometry::l_shaped(double L) {
  if (!(L > 0.0) || !std::isfinite(L)) {
    throw std::invalid_argument(
        "ScreenGeometry: screen distance L must be positive and finite");
  }
  ScreenGeometry g;
  g.kind = Kind::l_shaped;
  g.alpha = 0.0;
  g.L = L;
  return g;
}

double ScreenGeometry::theta_min() const {
  return (kind == Kind::inclined) ? alpha - kPi : -kPi / 2.0;
}

double ScreenGeometry::theta_max() const {
  return (kind == Kind::inclined) ? alpha : kPi;
}

ScreenPoint screen_point(const ScreenGeometry& geom, double theta) {
  require_admissible(geom, theta, "screen_point");
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  double radius = 0.0;
  if (geom.kind == ScreenGeometry::Kind::inclined) {
    radius = geom.L / std::sin(geom.alpha - theta);
  } else {
    radius = geom.L / std::max(c, s);
  }
  return {radius * c, radius * s};
}

double line_element_factor(const ScreenGeometry& geom, double theta) {
  const ScreenPoint r = screen_point(geom, theta);
  return (r.x * r.x + r.y * r.y) / geom.L;
}

QuadratureSpec scattering_quadrature_spec(const Packet2D& p, double L) {
  if (!(L > 0.0) || !std::isfinite(L)) {
    throw std::invalid_argument("screen distance L must be positive and finite");
  }
  QuadratureSpec spec;
  spec.k_max = std::max(spec.k_max, p.k0() + 12.0);
  // Generous ceiling: the absorption march normally ends on the quiet-stop
  // rule long before this (grazing directions gate on the mirror arrival at
  // distance ~ L / cutoff, still far below the ceiling).
  spec.t_max = std::max(60.0 * L + 100.0, 5.0e6);
  return spec;
}

double dp_st_dtheta(const Packet2D& p, double theta,
                    const QuadratureSpec& spec) {
  if (!std::isfinite(theta)) {
    throw std::invalid_argument("dp_st_dtheta: theta must be finite");
  }
  const double a = p.k0() * std::cos(theta - p.theta0());
  const double b = p.k0() * std::sin(theta - p.theta0());
  const auto r = integrate_semi_infinite(
      [a, b](double k) { return k * momentum_weight(k, a, b); }, spec,
      SemiAxis::momentum, {a - 6.0, a + 6.0});
  return std::max(0.0, require_converged(r));
}

Complex psi_t_2d_inclined(double x, double y, double t, const Packet2D& p,
                          Complex beta, const ScreenGeometry& geom) {
  if (geom.kind != ScreenGeometry::Kind::inclined) {
    throw std::invalid_argument(
        "psi_t_2d_inclined requires an inclined screen geometry");
  }
  require_finite_beta(beta, "psi_t_2d_inclined");
  const double sn = std::sin(geom.alpha);
  const double cs = std::cos(geom.alpha);
  const double r_par = x * sn - y * cs;   // along the outward normal
  const double r_perp = x * cs + y * sn;  // along the screen
  const double k_par = p.k0x * sn - p.k0y * cs;
  const double k_perp = p.k0x * cs + p.k0y * sn;
  return psi_tG(r_par, t, k_par, beta, geom.L) * phi_tG(r_perp, t, k_perp);
}

Complex psi_t_2d_lshaped(double x, double y, double t, const Packet2D& p,
                         Complex beta, double L) {
  require_finite_beta(beta, "psi_t_2d_lshaped");
  return psi_tG(x, t, p.k0x, beta, L) * psi_tG(y, t, p.k0y, beta, L);
}

double dp_abc_dtheta_farfield(const Packet2D& p, double theta,
                              const AbcParameter& beta, double alpha,
                              const QuadratureSpec& spec) {
  require_physical(beta, "dp_abc_dtheta_farfield");
  require_admissible(ScreenGeometry::inclined(alpha, 1.0), theta,
                     "dp_abc_dtheta_farfield");
  const Complex bb = beta.beta / std::sin(alpha - theta);
  const double re = bb.real();
  const double im = bb.imag();
  const double a = p.k0() * std::cos(theta - p.theta0());
  const double b = p.k0() * std::sin(theta - p.theta0());
  const auto r = integrate_semi_infinite(
      [=](double k) {
        // |k - i bb|^2 = (k + Im bb)^2 + (Re bb)^2, never zero for Im bb > 0.
        const double denom = (k + im) * (k + im) + re * re;
        return 4.0 * im * k * k * momentum_weight(k, a, b) / denom;
      },
      spec, SemiAxis::momentum, {a - 6.0, a + 6.0});
  return std::max(0.0, require_converged(r));
}

double dp_abc_dtheta_finite_L(const Packet2D& p, double theta,
                              const AbcParameter& beta,
                              const ScreenGeometry& geom,
                              const QuadratureSpec& spec) {
  require_physical(beta, "dp_abc_dtheta_finite_L");
  const ScreenPoint r = screen_point(geom, theta);  // checks admissibility
  const double dl = (r.x * r.x + r.y * r.y) / geom.L;

  Factor fa, fb;
  if (geom.kind == ScreenGeometry::Kind::inclined) {
    const double sn = std::sin(geom.alpha);
    const double cs = std::cos(geom.alpha);
    fa = {true, r.x * sn - r.y * cs, p.k0x * sn - p.k0y * cs};
    fb = {false, r.x * cs + r.y * sn, p.k0x * cs + p.k0y * sn};
  } else {
    fa = {true, r.x, p.k0x};
    fb = {true, r.y, p.k0y};
  }
  return finite_L_density(fa, fb, beta.beta, geom.L, dl, spec);
}

SectionTotals section_totals_lshaped(const Packet2D& p,
                                     const AbcParameter& beta, double L,
                                     const QuadratureSpec& spec) {
  require_physical(beta, "section_totals_lshaped");
  const ScreenGeometry geom = ScreenGeometry::l_shaped(L);

  QuadratureSpec theta_spec = spec;
  theta_spec.abs_tol = std::max(spec.abs_tol, 1e-8);
  theta_spec.rel_tol = std::max(spec.rel_tol, 1e-5);
  theta_spec.max_subdivisions = 60;

  const auto density = [&](double theta) {
    return dp_abc_dtheta_finite_L(p, theta, beta, geom, spec);
  };
  const std::vector<double> seeds = section_seeds(p);
  const QuadratureResult vert =
      integrate_adaptive(density, -kPi / 2.0 + kGrazingCutoff, kPi / 4.0,
                         theta_spec, seeds);
  const QuadratureResult horiz = integrate_adaptive(
      density, kPi / 4.0, kPi - kGrazingCutoff, theta_spec, seeds);
  (void)require_converged(vert);
  (void)require_converged(horiz);

  SectionTotals totals;
  totals.vertical = std::max(0.0, vert.value);
  totals.horizontal = std::max(0.0, horiz.value);
  totals.quadrature_error = vert.total_error() + horiz.total_error();
  return totals;
}

std::vector<double> angular_grid(const ScreenGeometry& geom, int n) {
  if (n < 2) {
    throw std::invalid_argument("angular_grid requires at least 2 samples");
  }
  const double lo = geom.theta_min() + kGrazingCutoff;
  const double hi = geom.theta_max() - kGrazingCutoff;
  std::vector<double> grid(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    grid[static_cast<size_t>(j)] = lo + (hi - lo) * j / (n - 1);
  }
  grid.back() = hi;  // pin the endpoint against accumulated rounding
  return grid;
}

std::vector<AngularDensitySample> angular_density_profile(
    const Packet2D& p, const AbcParameter& beta, const ScreenGeometry& geom,
    DensityMethod method, const QuadratureSpec& spec, int n) {
  if (method == DensityMethod::abc_farfield &&
      geom.kind != ScreenGeometry::Kind::inclined) {
    throw std::invalid_argument(
        "angular_density_profile: the far-field density applies to the "
        "inclined screen; sample the corner screen at finite L instead");
  }
  std::vector<AngularDensitySample> profile;
  for (double theta : angular_grid(geom, n)) {
    AngularDensitySample s;
    s.theta = theta;
    s.method = method;
    switch (method) {
      case DensityMethod::st:
        s.dP_dtheta = dp_st_dtheta(p, theta, spec);
        break;
      case DensityMethod::abc_farfield:
        s.dP_dtheta = dp_abc_dtheta_farfield(p, theta, beta, geom.alpha, spec);
        break;
      case DensityMethod::abc_finite_L:
        s.dP_dtheta = dp_abc_dtheta_finite_L(p, theta, beta, geom, spec);
        break;
    }
    profile.push_back(s);
  }
  return profile;
}

}  // namespace qscreen
