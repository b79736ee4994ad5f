#include "qscreen/detection_1d.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace qscreen {
namespace {

struct Integral {
  double value = 0.0;
  double error = 0.0;  // quadrature + truncation
};

// Momentum bumps of the packet, for breakpoint seeding and radius sizing.
std::vector<double> packet_centers(const Packet1D& p) {
  if (p.kind == Packet1D::Kind::gaussian) return {p.k0};
  return {p.k0, p.k1};
}

// Breakpoints bracketing each momentum bump at +-6 widths. Mirrored centers
// are included for integrands that sample the packet at -k.
std::vector<double> momentum_breakpoints(const Packet1D& p,
                                         bool include_mirrored) {
  std::vector<double> bp;
  for (double c : packet_centers(p)) {
    bp.push_back(c - 6.0);
    bp.push_back(c + 6.0);
    if (include_mirrored) {
      bp.push_back(-c - 6.0);
      bp.push_back(-c + 6.0);
    }
  }
  return bp;
}

void require_physical(const AbcParameter& beta, const char* op) {
  if (!(beta.beta.imag() > 0.0)) {
    std::ostringstream msg;
    msg << op << " requires an absorbing screen (Im beta > 0), got beta = ("
        << beta.beta.real() << ", " << beta.beta.imag() << ")";
    throw std::domain_error(msg.str());
  }
}

void require_screen(double L) {
  if (!(L > 0.0) || !std::isfinite(L)) {
    throw std::invalid_argument("screen position L must be positive and finite");
  }
}

// Clamps a quadrature result to [0, 1], tolerating noise of the integral's
// own error scale; a probability far outside that window means the caller's
// configuration violates the setup (packet not supported left of the
// screen), which deserves an exception rather than a clamp.
double clamp_probability(const Integral& integral, const char* op) {
  const double slack = 1e-9 + 100.0 * integral.error;
  if (integral.value < -slack || integral.value > 1.0 + slack) {
    std::ostringstream msg;
    msg << op << " produced probability " << integral.value
        << " outside [0,1] beyond quadrature noise; the packet is not "
           "effectively supported on the screen's incoming side";
    throw std::domain_error(msg.str());
  }
  return std::min(1.0, std::max(0.0, integral.value));
}

Integral st_integral(const Packet1D& p, const QuadratureSpec& spec) {
  const auto r = integrate_semi_infinite(
      [&p](double k) { return std::norm(momentum_wavefunction(p, k)); }, spec,
      SemiAxis::momentum, momentum_breakpoints(p, false));
  (void)require_converged(r);
  return {r.value, r.total_error()};
}

// Time-integrated absorption at the screen, marched by integrate_decaying:
// after the transit the signal at the screen decays only algebraically, as
// t^-3, which the geometric windows sweep in logarithmically many steps.
// Windows are sized to the fastest transit; the quiet-stop is gated until
// the slowest bump's trailing edge has reached the screen.
Integral abc_time_integral(const Packet1D& p, const AbcParameter& beta,
                           double L, const QuadratureSpec& spec) {
  const Complex b = beta.beta;
  const auto integrand = [&](double t) {
    const Complex psi =
        (p.kind == Packet1D::Kind::gaussian)
            ? psi_tG(L, t, p.k0, b, L)
            : psi_t_superposition(L, t, p.k0, p.k1, b, L);
    return b.imag() * std::norm(psi);
  };

  double k_fast = 0.0, k_slow = 0.0;
  for (double c : packet_centers(p)) {
    if (c > 0.5) {
      k_fast = std::max(k_fast, c);
      k_slow = (k_slow == 0.0) ? c : std::min(k_slow, c);
    }
  }
  DecayingTailSpec march;
  march.window0 =
      (k_fast > 0.0) ? std::clamp(L / (2.0 * k_fast), 0.25, 2.0) : 2.0;
  march.quiet_gate = (k_slow > 0.0) ? (L + 6.0) / k_slow : 0.0;
  march.quiet_level = spec.abs_tol / 10.0;
  march.t_max = spec.t_max;

  QuadratureSpec win_spec = spec;
  win_spec.abs_tol = spec.abs_tol / 10.0;

  const QuadratureResult r = integrate_decaying(integrand, march, win_spec);
  return {r.value, r.error_bound};
}

Integral dollard_integral(const Packet1D& p, const AbcParameter& beta,
                          double L, const QuadratureSpec& spec) {
  const Complex b = beta.beta;
  const auto integrand = [&](double k) {
    const Complex reflected = momentum_wavefunction(p, -k);
    const Complex incoming = momentum_wavefunction(p, k);
    const Complex phase = std::polar(1.0, 2.0 * k * L);
    return std::norm(reflected + rho_beta(k, b) * incoming * phase);
  };
  const auto r = integrate_semi_infinite(integrand, spec, SemiAxis::momentum,
                                         momentum_breakpoints(p, true));
  (void)require_converged(r);
  return {1.0 - r.value, r.total_error()};
}

}  // namespace

QuadratureSpec detection_quadrature_spec(const Packet1D& p, double L) {
  require_screen(L);
  QuadratureSpec spec;
  spec.k_max = std::max(spec.k_max, p.max_momentum() + 12.0);
  double k_slow = 0.0;
  for (double c : packet_centers(p)) {
    if (c > 0.5) k_slow = (k_slow == 0.0) ? c : std::min(k_slow, c);
  }
  // Generous ceiling: the time march normally ends on the quiet-stop rule
  // long before this, but the algebraic tail of slow packets can need
  // t ~ sqrt(tail_amplitude / abs_tol) to sink below the quiet threshold.
  spec.t_max = std::max(10.0 * L / std::max(k_slow, 0.5) + 100.0, 5.0e6);
  return spec;
}

double p_st_1d(const Packet1D& p, const QuadratureSpec& spec) {
  return clamp_probability(st_integral(p, spec), "p_st_1d");
}

double p_abc_time_integral(const Packet1D& p, const AbcParameter& beta,
                           double L, const QuadratureSpec& spec) {
  require_physical(beta, "p_abc_time_integral");
  require_screen(L);
  return clamp_probability(abc_time_integral(p, beta, L, spec),
                           "p_abc_time_integral");
}

double p_abc_dollard(const Packet1D& p, const AbcParameter& beta, double L,
                     const QuadratureSpec& spec) {
  require_physical(beta, "p_abc_dollard");
  require_screen(L);
  if (beta.beta.real() > 0.0) {
    throw std::domain_error(
        "p_abc_dollard is derived under Re(beta) <= 0; use "
        "p_abc_time_integral for Re(beta) > 0");
  }
  return clamp_probability(dollard_integral(p, beta, L, spec),
                           "p_abc_dollard");
}

ContrastReport contrast_L(const Packet1D& p, const AbcParameter& beta,
                          double L, const QuadratureSpec& spec) {
  require_physical(beta, "contrast_L");
  require_screen(L);
  const Integral st = st_integral(p, spec);
  const Integral abc = abc_time_integral(p, beta, L, spec);

  ContrastReport report;
  report.p_st_raw = st.value;
  report.p_abc_raw = abc.value;
  report.p_st = clamp_probability(st, "contrast_L(p_st)");
  report.p_abc = clamp_probability(abc, "contrast_L(p_abc)");
  report.contrast = report.p_st - report.p_abc;
  report.quadrature_error = st.error + abc.error;
  return report;
}

double contrast_infinity(const Packet1D& p, const AbcParameter& beta,
                         const QuadratureSpec& spec) {
  const Complex b = beta.beta;
  const auto r = integrate_semi_infinite(
      [&](double k) {
        return rho_beta_abs2(k, b) * std::norm(momentum_wavefunction(p, k));
      },
      spec, SemiAxis::momentum, momentum_breakpoints(p, false));
  return require_converged(r);
}

double contrast_laplace_approx(double k0, double k1, Complex beta) {
  const double N = Packet1D::superposition(k0, k1).norm_N();
  return (rho_beta_abs2(k0, beta) + rho_beta_abs2(k1, beta)) / (2.0 * N);
}

double contrast_laplace_minimum(double k0, double k1) {
  if (k0 == k1) {
    throw std::invalid_argument(
        "contrast_laplace_minimum is undefined for k0 == k1");
  }
  const double N = Packet1D::superposition(k0, k1).norm_N();
  const double d = k0 - k1;
  return (1.0 - 4.0 * k0 * k1 / (d * d)) / (2.0 * N);
}

}  // namespace qscreen
