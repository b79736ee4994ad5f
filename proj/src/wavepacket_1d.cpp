#include "qscreen/wavepacket_1d.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qscreen/complex_erf.hpp"

namespace qscreen {
namespace {

const double kPiQuarterInv = std::pow(M_PI, -0.25);

void require_finite(const char* name, double v) {
  if (!std::isfinite(v)) {
    std::ostringstream msg;
    msg << name << " must be finite, got " << v;
    throw std::invalid_argument(msg.str());
  }
}

void require_finite(const char* name, Complex v) {
  require_finite(name, v.real());
  require_finite(name, v.imag());
}

void require_time(double t) {
  require_finite("t", t);
  if (t < 0.0) throw std::invalid_argument("t must be >= 0");
}

}  // namespace

AbcParameter AbcParameter::physical(Complex beta) {
  require_finite("beta", beta);
  if (!(beta.imag() > 0.0)) {
    std::ostringstream msg;
    msg << "absorbing screen requires Im(beta) > 0, got beta = ("
        << beta.real() << ", " << beta.imag() << ")";
    throw std::invalid_argument(msg.str());
  }
  return AbcParameter{beta, true};
}

AbcParameter AbcParameter::limit_study(Complex beta) {
  require_finite("beta", beta);
  return AbcParameter{beta, beta.imag() > 0.0};
}

Packet1D Packet1D::gaussian(double k0) {
  require_finite("k0", k0);
  return Packet1D{Kind::gaussian, k0, 0.0};
}

Packet1D Packet1D::superposition(double k0, double k1) {
  require_finite("k0", k0);
  require_finite("k1", k1);
  return Packet1D{Kind::superposition, k0, k1};
}

double Packet1D::norm_N() const {
  if (kind == Kind::gaussian) return 1.0;
  const double d = k0 - k1;
  return 1.0 + std::exp(-0.25 * d * d);
}

double Packet1D::max_momentum() const {
  if (kind == Kind::gaussian) return std::abs(k0);
  return std::max(std::abs(k0), std::abs(k1));
}

Screen1D Screen1D::at(double L) {
  require_finite("L", L);
  if (!(L > 0.0)) throw std::invalid_argument("screen position L must be > 0");
  return Screen1D{L};
}

double gaussian_G(double x) { return kPiQuarterInv * std::exp(-0.5 * x * x); }

Complex rho_beta(double k, Complex beta) {
  require_finite("k", k);
  require_finite("beta", beta);
  const Complex i_beta(-beta.imag(), beta.real());
  const Complex den = k - i_beta;
  if (den == Complex(0.0, 0.0)) {
    throw std::domain_error("rho_beta singular: k equals i*beta");
  }
  return (k + i_beta) / den;
}

double rho_beta_abs2(double k, Complex beta) {
  require_finite("k", k);
  require_finite("beta", beta);
  const double re = beta.real(), im = beta.imag();
  const double den = re * re + (k + im) * (k + im);
  if (den == 0.0) {
    throw std::domain_error("rho_beta_abs2 singular: k equals i*beta");
  }
  return 1.0 - 4.0 * k * im / den;
}

Complex phi_tG(double x, double t, double k0) {
  require_finite("x", x);
  require_finite("k0", k0);
  require_time(t);
  const Complex one_it(1.0, t);
  const Complex s = std::sqrt(one_it);  // principal branch, Re s > 0
  const Complex num(x, -k0);            // x - i k0
  // pi^{-1/4} exp(-k0^2/2 - (x - i k0)^2 / (2(1+it))) / sqrt(1+it).
  // The combined exponent has non-positive real part (|phi| <= pi^{-1/4}),
  // so this never overflows; the tails underflow to an honest zero.
  const Complex expo = -0.5 * k0 * k0 - 0.5 * num * num / one_it;
  return kPiQuarterInv * std::exp(expo) / s;
}

PsiTerms psi_tG_decomposed(double x, double t, double k0, Complex beta,
                           double L) {
  require_finite("x", x);
  require_finite("k0", k0);
  require_finite("beta", beta);
  require_finite("L", L);
  require_time(t);

  PsiTerms terms;
  terms.direct = phi_tG(x, t, k0);
  terms.mirror = phi_tG(2.0 * L - x, t, k0);
  if (beta == Complex(0.0, 0.0)) {
    terms.absorption = Complex(0.0, 0.0);
    return terms;
  }

  const Complex one_it(1.0, t);
  const Complex s = std::sqrt(one_it);
  const Complex i_beta(-beta.imag(), beta.real());
  const double y = 2.0 * L - x;  // mirror coordinate
  // Combined exponent of the absorption term. Its scaled residue
  // exp(a - z^2) equals pi^{1/4} sqrt(1+it) phi_tG(y), which has modulus
  // <= 1, so exp_erfc_scaled never overflows for physically reachable
  // arguments.
  const Complex km = k0 - i_beta;
  const Complex a =
      -0.5 * km * km + Complex(0.0, 0.5 * t) * beta * beta - beta * y;
  const Complex z = (Complex(y, -k0) - beta * one_it) /
                    (std::sqrt(2.0) * s);
  const double pref = std::sqrt(2.0 * std::sqrt(M_PI));
  terms.absorption = pref * beta * exp_erfc_scaled(a, z);
  return terms;
}

Complex psi_tG(double x, double t, double k0, Complex beta, double L) {
  return psi_tG_decomposed(x, t, k0, beta, L).sum();
}

Complex psi_t_superposition(double x, double t, double k0, double k1,
                            Complex beta, double L) {
  const Packet1D p = Packet1D::superposition(k0, k1);
  const double scale = 1.0 / std::sqrt(2.0 * p.norm_N());
  return scale * (psi_tG(x, t, k0, beta, L) + psi_tG(x, t, k1, beta, L));
}

Complex momentum_wavefunction(const Packet1D& p, double k) {
  require_finite("k", k);
  if (p.kind == Packet1D::Kind::gaussian) {
    return Complex(gaussian_G(k - p.k0), 0.0);
  }
  const double scale = 1.0 / std::sqrt(2.0 * p.norm_N());
  return Complex(scale * (gaussian_G(k - p.k0) + gaussian_G(k - p.k1)), 0.0);
}

double initial_condition_bound(double k0, Complex beta, double L) {
  require_finite("k0", k0);
  require_finite("beta", beta);
  require_finite("L", L);
  const double gap = L - beta.real();
  if (!(gap > 0.0)) {
    throw std::invalid_argument(
        "initial_condition_bound requires L - Re(beta) > 0");
  }
  const double ratio = (k0 + beta.imag()) / gap;
  return gaussian_G(L) *
         (1.0 + 2.0 * std::abs(beta) / gap * std::sqrt(1.0 + ratio * ratio));
}

}  // namespace qscreen
