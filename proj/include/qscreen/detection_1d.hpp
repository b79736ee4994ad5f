#pragma once

#include "qscreen/quadrature.hpp"
#include "qscreen/wavepacket_1d.hpp"

// 1D detection probabilities for a packet launched at an absorbing screen:
// the scattering prediction (momentum-space flux through the screen), the
// absorbing-screen prediction (time-integrated absorption there), and the
// contrast between the two, both at finite screen distance and in the
// far-screen limit.

namespace qscreen {

// One (packet, beta, L) comparison. Probabilities are clamped to [0, 1] when
// quadrature noise pushes them marginally outside; the unclamped values are
// kept alongside so nothing is hidden. contrast = p_st - p_abc always holds
// on the clamped fields.
struct ContrastReport {
  double p_st = 0.0;
  double p_abc = 0.0;
  double contrast = 0.0;
  double quadrature_error = 0.0;  // summed total_error of both integrals
  double p_st_raw = 0.0;
  double p_abc_raw = 0.0;
};

// Quadrature spec sized for a packet and screen distance: momentum radius
// covers every packet bump plus 12 widths, the time radius covers the
// slowest bump's transit with a wide margin.
QuadratureSpec detection_quadrature_spec(const Packet1D& p, double L);

// Probability that scattering theory assigns to eventual right-side
// detection: the positive-momentum weight of the initial packet.
double p_st_1d(const Packet1D& p, const QuadratureSpec& spec);

// Absorbing-screen detection probability as the time integral
// Im(beta) * integral_0^inf |psi_t(L)|^2 dt of the closed-form
// wavefunction. Requires Im(beta) > 0 (throws std::domain_error otherwise).
double p_abc_time_integral(const Packet1D& p, const AbcParameter& beta,
                           double L, const QuadratureSpec& spec);

// Same probability through the stationary route:
// 1 - integral_0^inf |psi~(-k) + rho(k) psi~(k) e^{2ikL}|^2 dk.
// Valid for Im(beta) > 0 and Re(beta) <= 0; throws std::domain_error for
// Re(beta) > 0 (use the time integral there).
double p_abc_dollard(const Packet1D& p, const AbcParameter& beta, double L,
                     const QuadratureSpec& spec);

// Full report at finite screen distance, p_abc via the time integral.
ContrastReport contrast_L(const Packet1D& p, const AbcParameter& beta,
                          double L, const QuadratureSpec& spec);

// Far-screen contrast integral_0^inf |rho(k)|^2 |psi~(k)|^2 dk. Well-defined
// for any beta without a pole at some k >= 0, physical or not.
double contrast_infinity(const Packet1D& p, const AbcParameter& beta,
                         const QuadratureSpec& spec);

// Two-point saddle approximation of the far-screen contrast for a
// superposition packet: (|rho(k0)|^2 + |rho(k1)|^2) / (2N).
double contrast_laplace_approx(double k0, double k1, Complex beta);

// Minimum of the approximation over beta, (1 - 4 k0 k1/(k0-k1)^2) / (2N).
// Reported verbatim: for nearby momenta it goes negative even though the
// exact far-screen contrast never does. Throws for k0 == k1.
double contrast_laplace_minimum(double k0, double k1);

}  // namespace qscreen
