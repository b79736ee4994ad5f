#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

// Adaptive Gauss-Kronrod quadrature for the semi-infinite momentum and time
// integrals. All integrands in this project are Gaussian-damped, so plain
// truncation at a spec radius plus adaptive bisection is sufficient; the
// truncated tail is estimated separately and reported, never silently dropped.

namespace qscreen {

struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  // Truncation radii for the two semi-infinite axes that occur in practice.
  // Callers integrating a packet-dependent quantity should widen these to the
  // packet: k_max ~ (largest central momentum) + 12, t_max ~ 10 L/k0 + 100.
  double k_max = 40.0;
  double t_max = 200.0;
  int max_subdivisions = 4000;

  // Throws std::invalid_argument when tolerances/radii are unusable.
  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error_bound = 0.0;    // quadrature estimate over the truncated range
  double tail_estimate = 0.0;  // estimated |integral| beyond the truncation
  int subdivisions = 0;
  bool converged = true;

  double total_error() const { return error_bound + tail_estimate; }
};

// Thrown by require_converged; carries the partial result and the tolerance
// that was actually achieved.
class QuadratureNonConvergence : public std::runtime_error {
 public:
  explicit QuadratureNonConvergence(const QuadratureResult& partial);
  const QuadratureResult& partial() const { return partial_; }

 private:
  QuadratureResult partial_;
};

// Which truncation radius of the spec applies to [0, inf) integration.
enum class SemiAxis { momentum, time };

// Adaptive integral of f over [a, b]. Optional interior breakpoints seed the
// initial panels (needed when the integrand has narrow bumps the first
// Kronrod rule would step over, e.g. a width-1 Gaussian at k=5 in [0, 1000]).
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b,
                                    const QuadratureSpec& spec,
                                    std::vector<double> breakpoints = {});

// Integral of f over [0, inf), truncated at spec.k_max or spec.t_max per the
// axis; the tail beyond the radius is estimated by a coarse scan and reported
// in QuadratureResult::tail_estimate.
QuadratureResult integrate_semi_infinite(const std::function<double(double)>& f,
                                         const QuadratureSpec& spec,
                                         SemiAxis axis = SemiAxis::momentum,
                                         std::vector<double> breakpoints = {});

// Returns r.value, or throws QuadratureNonConvergence when !r.converged.
double require_converged(const QuadratureResult& r);

// March parameters for integrate_decaying. The integrand is assumed to be a
// non-negative density that may stay negligible for a while (packet in
// transit), burst, and then decay algebraically. Windows grow geometrically
// once past quiet_gate so an algebraic tail is swept in logarithmically many
// windows; the march stops after five consecutive windows contribute less
// than quiet_level each, but never before quiet_gate (quiet windows before
// the signal arrives must not be mistaken for the tail).
struct DecayingTailSpec {
  double window0 = 2.0;      // width of the first window
  double quiet_gate = 0.0;   // no quiet-stop (and no growth) before this time
  double quiet_level = 0.0;  // window contribution considered negligible
  double t_max = 1.0e6;      // hard ceiling; sized generously by callers

  // Throws std::invalid_argument when the march cannot terminate sensibly.
  void validate() const;
};

// Integral of f over [0, t_max) by the window march described on
// DecayingTailSpec. Each window is integrated adaptively against window_spec
// and must converge (QuadratureNonConvergence otherwise). The reported
// error_bound sums the window bounds plus 10 * quiet_level for the five
// quiet windows and the unswept tail; subdivisions counts windows.
QuadratureResult integrate_decaying(const std::function<double(double)>& f,
                                    const DecayingTailSpec& march,
                                    const QuadratureSpec& window_spec);

}  // namespace qscreen
