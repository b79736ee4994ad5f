#include "qscreen/complex_erf.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qscreen {

namespace {

using cplx = std::complex<double>;

constexpr double kInvSqrtPi = 0.564189583547756286948;  // 1/sqrt(pi)

// Largest x with e^x finite in double; anything above is a genuine overflow.
constexpr double kExpOverflow = 709.78;

void require_finite(cplx z, const char* who) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw std::invalid_argument(std::string(who) + ": non-finite argument");
}

// ---------------------------------------------------------------------------
// Weideman rational approximation of w(z) on the closed upper half-plane
// (J.A.C. Weideman, SIAM J. Numer. Anal. 31 (1994) 1497).
//
//   Z = (Lw + iz)/(Lw - iz),   w(z) ~= 2 p(Z)/(Lw - iz)^2 + (1/sqrt(pi))/(Lw - iz)
//
// with p a degree-(N-1) polynomial whose coefficients are Fourier cosine
// coefficients of f(theta) = exp(-t^2) (Lw^2 + t^2), t = Lw tan(theta/2).
// The conformal map pushes the error to the real axis, where it is uniform,
// so no special-casing near Im z = 0 is needed. N = 96 keeps the absolute
// error on w below ~1e-15 over the |z| < 9 disc handled here (verified
// against 50-digit references in the tests).
// ---------------------------------------------------------------------------

constexpr int kWeidemanN = 96;

struct WeidemanTable {
  double Lw;
  std::array<double, kWeidemanN> a;  // a[0] multiplies Z^0, ..., a[N-1] Z^{N-1}
};

WeidemanTable make_weideman_table() {
  WeidemanTable tb{};
  const int N = kWeidemanN;
  const int M = 2 * N;      // sample count per half period
  const int M2 = 2 * M;     // full trapezoidal sample count
  const long double Lw =
      std::sqrt(static_cast<long double>(N) / std::sqrt(2.0L));
  tb.Lw = static_cast<double>(Lw);

  // f(theta_k) on the half grid; f is even in theta and vanishes at theta=pi.
  std::array<long double, 2 * kWeidemanN> f{};
  const long double pi = std::numbers::pi_v<long double>;
  f[0] = Lw * Lw;
  for (int k = 1; k < M; ++k) {
    const long double theta = static_cast<long double>(k) * pi / M;
    const long double t = Lw * std::tan(theta / 2);
    f[k] = std::exp(-t * t) * (Lw * Lw + t * t);
  }
  for (int j = 1; j <= N; ++j) {
    long double s = f[0];
    for (int k = 1; k < M; ++k)
      s += 2 * f[k] * std::cos(static_cast<long double>(j) * k * pi / M);
    tb.a[j - 1] = static_cast<double>(s / M2);
  }
  return tb;
}

cplx faddeeva_w_weideman(cplx z) {
  static const WeidemanTable tb = make_weideman_table();
  const cplx d = cplx(tb.Lw, 0.0) - cplx(0.0, 1.0) * z;  // Lw - iz
  const cplx Z = (cplx(tb.Lw, 0.0) + cplx(0.0, 1.0) * z) / d;
  cplx p = tb.a[kWeidemanN - 1];
  for (int n = kWeidemanN - 2; n >= 0; --n) p = p * Z + tb.a[n];
  return 2.0 * p / (d * d) + kInvSqrtPi / d;
}

// Laplace continued fraction, accurate (relatively) for large |z| in the
// upper half-plane:  w(z) = (i/sqrt(pi)) / (z - (1/2)/(z - 1/(z - (3/2)/...))).
// Depth chosen per |z| band; bands verified against references in the tests.
cplx faddeeva_w_contfrac(cplx z, double abs2) {
  int depth;
  if (abs2 > 1600.0)       depth = 10;   // |z| > 40
  else if (abs2 > 484.0)   depth = 16;   // |z| > 22
  else if (abs2 > 196.0)   depth = 24;   // |z| > 14
  else                     depth = 40;   // |z| >= 9
  cplx r = 0.0;
  for (int n = depth; n >= 1; --n) r = (0.5 * n) / (z - r);
  return cplx(0.0, kInvSqrtPi) / (z - r);
}

// w on the closed upper half-plane only.
cplx faddeeva_w_upper(cplx z) {
  const double abs2 = std::norm(z);
  return abs2 >= 81.0 ? faddeeva_w_contfrac(z, abs2) : faddeeva_w_weideman(z);
}

}  // namespace

std::complex<double> faddeeva_w(std::complex<double> z) {
  require_finite(z, "faddeeva_w");
  if (z.imag() >= 0.0) return faddeeva_w_upper(z);
  // Lower half-plane: w(z) = 2 e^{-z^2} - w(-z); |w| ~ e^{Im z ^2} can overflow.
  const cplx mz2 = -z * z;
  if (mz2.real() > kExpOverflow)
    throw std::overflow_error("faddeeva_w: value exceeds double range");
  return 2.0 * std::exp(mz2) - faddeeva_w_upper(-z);
}

std::complex<double> erfcx_complex(std::complex<double> z) {
  require_finite(z, "erfcx_complex");
  if (z.real() >= 0.0) return faddeeva_w_upper(cplx(0.0, 1.0) * z);
  // erfcx(z) = 2 e^{z^2} - erfcx(-z); e^{z^2} dominates and may overflow.
  const cplx z2 = z * z;
  if (z2.real() > kExpOverflow)
    throw std::overflow_error("erfcx_complex: value exceeds double range");
  return 2.0 * std::exp(z2) - faddeeva_w_upper(cplx(0.0, -1.0) * z);
}

std::complex<double> erfc_complex(std::complex<double> z) {
  require_finite(z, "erfc_complex");
  if (z.real() < 0.0) return 2.0 - erfc_complex(-z);
  // erfc(z) = e^{-z^2} w(iz); Re(-z^2) = y^2 - x^2 may legitimately be large.
  const cplx w = faddeeva_w_upper(cplx(0.0, 1.0) * z);
  const cplx mz2 = -z * z;
  const double mag = mz2.real() + std::log(std::abs(w));
  if (mag > kExpOverflow)
    throw std::overflow_error("erfc_complex: value exceeds double range");
  if (mz2.real() <= 700.0) return std::exp(mz2) * w;
  // Split the exponent so neither factor overflows on its own.
  const double shift = mz2.real() - 700.0;
  return std::exp(mz2 - shift) * (w * std::exp(shift));
}

std::complex<double> exp_erfc_scaled(std::complex<double> a,
                                     std::complex<double> z) {
  require_finite(a, "exp_erfc_scaled");
  require_finite(z, "exp_erfc_scaled");
  if (z.real() < 0.0) {
    // e^a (2 - erfc(-z)) = 2 e^a - exp_erfc_scaled(a, -z).
    if (a.real() > kExpOverflow - 1.0)
      throw std::overflow_error("exp_erfc_scaled: value exceeds double range");
    return 2.0 * std::exp(a) - exp_erfc_scaled(a, -z);
  }
  const cplx w = erfcx_complex(z);  // |w| <= 1 on Re z >= 0
  const cplx u = a - z * z;
  const double mag = u.real() + std::log(std::abs(w));
  if (mag > kExpOverflow)
    throw std::overflow_error("exp_erfc_scaled: value exceeds double range");
  if (u.real() <= 700.0) return std::exp(u) * w;
  const double shift = u.real() - 700.0;
  return std::exp(u - shift) * (w * std::exp(shift));
}

}  // namespace qscreen
