#pragma once

#include <vector>

#include "qscreen/quadrature.hpp"
#include "qscreen/wavepacket_1d.hpp"

// 2D detection densities for a unit-width isotropic Gaussian packet launched
// from the origin at a distant screen: the scattering-theory angular density
// (orientation independent), the absorbing-screen angular density (both the
// exact far-screen form and finite-distance line integrals), and section
// totals for the corner screen. Two screen shapes are supported: a flat
// screen at normal distance L inclined at angle alpha to the x-axis, and the
// corner ("L"-shaped) screen max(x, y) = L.

namespace qscreen {

// Isotropic unit-width Gaussian packet boosted by (k0x, k0y): the initial
// state is G(x) G(y) e^{i k0.r}, which is exactly unit norm.
struct Packet2D {
  double k0x = 0.0;
  double k0y = 0.0;

  double k0() const;      // |central momentum|
  double theta0() const;  // Arg(k0x + i k0y); 0 for the packet at rest
};

// Detection surface. The inclined screen is the line n(alpha).r = L with
// outward normal n(alpha) = (sin alpha, -cos alpha); the packet occupies the
// half-plane n.r < L. The corner screen is max(x, y) = L with the packet in
// the quadrant below-left. Detection angles theta are measured from the
// origin; each shape admits the open interval (theta_min, theta_max) of
// directions that actually meet the screen.
struct ScreenGeometry {
  enum class Kind { inclined, l_shaped };

  Kind kind = Kind::inclined;
  double alpha = 0.0;  // inclination; meaningful for the inclined kind only
  double L = 1.0;

  // Throw std::invalid_argument for non-finite alpha or L <= 0.
  static ScreenGeometry inclined(double alpha, double L);
  static ScreenGeometry l_shaped(double L);

  double theta_min() const;  // alpha - pi, or -pi/2 for the corner screen
  double theta_max() const;  // alpha, or pi for the corner screen
};

// Directions within this distance of the screen plane (the ends of the
// admissible interval) are treated as out of domain: the line element
// diverges there while the density itself vanishes, so grids exclude them.
inline constexpr double kGrazingCutoff = 1e-3;

// Point R_theta where the ray at angle theta meets the screen, and the line
// element factor dl/dtheta = |R_theta|^2 / L of the screen segment swept per
// unit angle. Both throw std::domain_error outside the admissible interval
// or within kGrazingCutoff of its ends.
struct ScreenPoint {
  double x = 0.0;
  double y = 0.0;
};
ScreenPoint screen_point(const ScreenGeometry& geom, double theta);
double line_element_factor(const ScreenGeometry& geom, double theta);

// How an angular density sample was produced.
enum class DensityMethod { st, abc_farfield, abc_finite_L };

struct AngularDensitySample {
  double theta = 0.0;
  double dP_dtheta = 0.0;
  DensityMethod method = DensityMethod::st;
};

// Quadrature spec sized for the packet and screen scale: momentum radius
// |k0| + 12 widths, time ceiling generous enough that the absorption march
// always ends on its quiet-stop rule instead.
QuadratureSpec scattering_quadrature_spec(const Packet2D& p, double L);

// Scattering-theory angular density: the momentum-space mass of the packet
// flowing into direction theta,
//   dP_ST/dtheta = G^2(k0) Int_0^inf dk k G^2(k) exp(2 k k0 cos(theta-theta0)).
// Independent of the screen shape and orientation; defined for every theta.
double dp_st_dtheta(const Packet2D& p, double theta,
                    const QuadratureSpec& spec);

// Exact wavefunction at time t >= 0 in the presence of the inclined screen:
// the absorbed 1D solution along the screen normal times free evolution
// parallel to it. Any finite beta is accepted (limit studies included).
Complex psi_t_2d_inclined(double x, double y, double t, const Packet2D& p,
                          Complex beta, const ScreenGeometry& geom);

// Exact wavefunction for the corner screen: the product of two absorbed 1D
// solutions, one per axis, each with the same beta and screen distance L.
Complex psi_t_2d_lshaped(double x, double y, double t, const Packet2D& p,
                         Complex beta, double L);

// Far-screen (L -> infinity) absorbing-screen angular density for the
// inclined screen,
//   dP_ABC/dtheta = 4 G^2(k0) Im(bb) Int_0^inf dk k^2 G^2(k)
//                   exp(2 k k0 cos(theta-theta0)) / |k - i bb|^2,
// with bb = beta csc(alpha - theta), through which the result depends on the
// screen orientation. Requires Im(beta) > 0 and theta inside the admissible
// interval away from grazing (std::domain_error otherwise).
double dp_abc_dtheta_farfield(const Packet2D& p, double theta,
                              const AbcParameter& beta, double alpha,
                              const QuadratureSpec& spec);

// Finite-distance absorbing-screen angular density for either screen shape:
//   dP_ABC/dtheta = (dl/dtheta) Im(beta) Int_0^inf dt |psi_t(R_theta)|^2,
// with psi_t the exact product solution for the shape. Requires
// Im(beta) > 0 and theta in the admissible interval away from grazing.
double dp_abc_dtheta_finite_L(const Packet2D& p, double theta,
                              const AbcParameter& beta,
                              const ScreenGeometry& geom,
                              const QuadratureSpec& spec);

// Totals over the two sections of the corner screen: vertical is the x = L
// segment (theta below the corner angle pi/4), horizontal the y = L segment.
// The corner direction itself has measure zero; it is assigned to the
// horizontal section. Grazing-cutoff slivers at the interval ends are
// excluded; the density vanishes toward them, so the omitted mass is far
// below the reported quadrature error.
struct SectionTotals {
  double vertical = 0.0;
  double horizontal = 0.0;
  double quadrature_error = 0.0;
};
SectionTotals section_totals_lshaped(const Packet2D& p,
                                     const AbcParameter& beta, double L,
                                     const QuadratureSpec& spec);

// Uniform angular grid of n samples spanning the admissible interval with
// the grazing cutoff clipped off both ends. Requires n >= 2.
std::vector<double> angular_grid(const ScreenGeometry& geom, int n = 721);

// Density profile over angular_grid(geom, n) by the requested method. The
// far-field method applies to the inclined screen only (the corner screen's
// far-screen limit is reached through finite-L sampling at large L); beta is
// ignored by the scattering-theory method.
std::vector<AngularDensitySample> angular_density_profile(
    const Packet2D& p, const AbcParameter& beta, const ScreenGeometry& geom,
    DensityMethod method, const QuadratureSpec& spec, int n = 721);

}  // namespace qscreen
