#pragma once

#include <complex>

// Closed-form 1D wave functions for a unit-width Gaussian packet evolving
// freely and in the presence of an absorbing screen at x = L. The screen is
// modelled by the Robin condition  d/dx psi(L, t) = beta psi(L, t)  with
// Im beta > 0 in the physical (absorbing) regime. Everything here is in the
// packet's natural units: lengths in initial widths, momenta in inverse
// widths, times in width^2 (hbar = m = 1).

namespace qscreen {

using Complex = std::complex<double>;

// Robin coefficient with a physical/limit-study tag. Absorption requires
// Im beta > 0; the limit-study constructor admits any finite value so the
// Neumann (beta = 0) and Dirichlet (|beta| -> inf along the imaginary axis)
// checks can be expressed, but downstream detection operations refuse
// non-physical values.
struct AbcParameter {
  Complex beta{0.0, 1.0};
  bool physical_regime = true;

  // Throws std::invalid_argument unless Im beta > 0 and beta is finite.
  static AbcParameter physical(Complex beta);
  // Any finite beta; flagged non-physical unless Im beta > 0.
  static AbcParameter limit_study(Complex beta);
};

// Initial packet: either a single boosted Gaussian or an equal-weight
// superposition of two. The superposition norm factor
// N = 1 + exp(-(k0-k1)^2/4) makes the represented state exactly unit-norm.
struct Packet1D {
  enum class Kind { gaussian, superposition };

  Kind kind = Kind::gaussian;
  double k0 = 0.0;
  double k1 = 0.0;  // superposition only

  static Packet1D gaussian(double k0);
  static Packet1D superposition(double k0, double k1);

  // Superposition norm factor N; 1.0 for the single-Gaussian case so that
  // 1/sqrt(2N) style expressions stay well-defined.
  double norm_N() const;
  // Largest central momentum, used to size momentum-space truncation radii.
  double max_momentum() const;
};

// Screen position for the 1D problem.
struct Screen1D {
  double L = 1.0;

  // Throws std::invalid_argument unless L > 0 and finite.
  static Screen1D at(double L);
};

// Unit-norm Gaussian profile pi^{-1/4} exp(-x^2/2).
double gaussian_G(double x);

// Reflection amplitude rho(k) = (k + i beta)/(k - i beta) of the screen for
// a plane wave of momentum k. Throws std::domain_error at the pole
// k = i beta (reachable only for real beta = -k in limit studies).
Complex rho_beta(double k, Complex beta);

// |rho(k)|^2 evaluated via the cancellation-free closed formula
// 1 - 4 k Im(beta) / (Re(beta)^2 + (k + Im(beta))^2).
double rho_beta_abs2(double k, Complex beta);

// Free evolution of the boosted Gaussian: exact solution of the
// Schroedinger equation on the whole line with psi(x, 0) = e^{i k0 x} G(x).
// Principal branch of sqrt(1 + it) throughout.
Complex phi_tG(double x, double t, double k0);

// The three terms of the screen wavefunction: free packet, mirror image
// about x = L, and the absorption correction proportional to beta.
struct PsiTerms {
  Complex direct;
  Complex mirror;
  Complex absorption;

  Complex sum() const { return direct + mirror + absorption; }
};

// Exact wavefunction at time t >= 0 under the Robin screen at L, for the
// single-Gaussian initial packet with central momentum k0. Valid for any
// complex beta; overflow in extreme limit-study corners raises
// std::overflow_error rather than returning inf.
Complex psi_tG(double x, double t, double k0, Complex beta, double L);

// Same value split into its three terms (sum() reproduces psi_tG); used by
// structural tests and diagnostics.
PsiTerms psi_tG_decomposed(double x, double t, double k0, Complex beta,
                           double L);

// Screen wavefunction for the two-Gaussian superposition packet,
// (psi_tG(..k0..) + psi_tG(..k1..)) / sqrt(2N).
Complex psi_t_superposition(double x, double t, double k0, double k1,
                            Complex beta, double L);

// Momentum-space amplitude of the initial packet: G(k - k0) for the single
// Gaussian, (G(k-k0) + G(k-k1))/sqrt(2N) for the superposition.
Complex momentum_wavefunction(const Packet1D& p, double k);

// Upper bound on |psi_0^G(x) - e^{i k0 x} G(x)| over x <= L: the initial
// state of the screen problem differs from the free Gaussian only by
// exponentially small mirror and absorption pieces, and this bound
// quantifies "exponentially small" so callers can assert their L is far
// enough. Requires L - Re(beta) > 0.
double initial_condition_bound(double k0, Complex beta, double L);

}  // namespace qscreen
