#pragma once

// Independent finite-difference check of the closed forms: trapezoidal-in-time
// (Crank-Nicolson class) stepping of 2i dpsi/dt = -psi'' on [x_min, L], with
// the absorbing Robin condition psi'(L) = beta psi(L) closed to second order
// by a ghost point and homogeneous Dirichlet at the truncated left edge.
//
// With the trapezoidal norm (half weights at the end nodes) the scheme obeys
// an exact per-step identity: the norm loss of a step equals
// Im(beta) * dt * |mu(L)|^2, where mu is the midpoint state (psi_n+psi_{n+1})/2.
// Unitarity for Im(beta) = 0, contractivity of differences for Im(beta) > 0,
// and the absorption ledger's bookkeeping all follow from this identity at
// machine precision; only the *accuracy* of the solution is O(h^2 + dt^2).

#include <complex>
#include <vector>

#include "qscreen/wavepacket_1d.hpp"

namespace qscreen {

// Uniform spatial grid on [x_min, L] with fixed time step. The last node
// sits exactly on the screen. Construct through make(), which validates.
struct Grid1D {
  double x_min = 0.0;
  double L = 0.0;
  int n_points = 0;
  double dt = 0.0;

  static Grid1D make(double x_min, double L, int n_points, double dt);

  double h() const { return (L - x_min) / (n_points - 1); }
  double x(int j) const { return x_min + h() * j; }
  int screen_index() const { return n_points - 1; }
};

// Per-step record of the detection process. absorbed_density samples the
// arrival-time density Im(beta)*|psi(L,t)|^2 at the step times; cumulative
// is the probability absorbed so far, measured as the initial norm^2 minus
// the current norm^2 (equal to 1 - |psi_t|^2 for unit-norm input).
struct AbsorptionLedger {
  std::vector<double> times;
  std::vector<double> absorbed_density;
  std::vector<double> cumulative;
};

struct EvolutionResult {
  std::vector<Complex> psi;  // final state on the grid nodes
  AbsorptionLedger ledger;   // one entry per step, including t = 0
};

// Trapezoidal norm^2 of a grid function (the inner product under which the
// scheme's norm-loss identity is exact).
double grid_norm_sq(const std::vector<Complex>& psi, const Grid1D& grid);

// Evolves psi0 (values on all grid nodes, left edge ~ 0) to t_final.
// Requirements: Im(beta) >= 0 and finite (Im(beta) = 0 runs the unitary
// limit); t_final a whole number of time steps; psi0 finite with
// |psi0[0]| negligible. Aborts with a diagnostic if the norm grows beyond
// roundoff or if solution amplitude above 1e-7 reaches the node next to
// the left wall (the artificial Dirichlet edge would contaminate the run).
EvolutionResult evolve_robin(const std::vector<Complex>& psi0, Complex beta,
                             const Grid1D& grid, double t_final);

// Evolves two states under the same operator and returns the worst per-step
// defect of the contraction identity for their difference:
//   max over steps of  d/dt |delta|^2 + Im(beta) |delta_mid(L)|^2,
// with the screen value taken at the step midpoint, where the identity is
// exact; the return is roundoff-sized when the scheme is healthy, and any
// growth of the difference norm shows up as a positive defect. No left-wall
// guard here: contraction is a property of the discrete operator, wall
// included.
double contractivity_check(const std::vector<Complex>& psi_a,
                           const std::vector<Complex>& psi_b, Complex beta,
                           const Grid1D& grid, double t_final);

// Seeds the grid with the closed-form solution at t = 0, evolves it, and
// returns the maximum relative L2 discrepancy against the closed form over
// the requested sample times. Requires h <= 0.02 / max(1, |k0|) so the
// packet's phase is resolved; each sample time must be a whole number of
// steps.
double validate_closed_form(double k0, Complex beta, double L,
                            const Grid1D& grid,
                            const std::vector<double>& t_samples);

}  // namespace qscreen
