#pragma once

#include <complex>

// Complex error functions for the screen-detection closed forms.
//
// Everything here reduces to the Faddeeva function w(z) = exp(-z^2) erfc(-iz),
// computed on the closed upper half-plane by two complementary methods:
// a rational (Weideman) approximation near the origin and the Laplace
// continued fraction far from it. erfc and erfcx follow from w by exact
// identities; exp_erfc_scaled fuses the exponential prefactor with the
// erfc argument so the Eq.-of-motion closed forms never evaluate a bare
// exponential whose argument can reach hundreds.
//
// Accuracy: relative error <= ~1e-13 for |z| <= 30 wherever the true value
// lies inside the normal double range. Exact zeros of erfc (all in Re z < 0)
// are the usual caveat: absolute accuracy holds there, relative does not.

namespace qscreen {

// Faddeeva function w(z). For Im z < 0 the reflection w(z) = 2 e^{-z^2} - w(-z)
// is used; the true value there grows like e^{|Im z|^2} and the call throws
// std::overflow_error once it leaves the double range.
std::complex<double> faddeeva_w(std::complex<double> z);

// Scaled complementary error function erfcx(z) = e^{z^2} erfc(z) = w(iz).
// Bounded by 1 in magnitude for Re z >= 0; may genuinely overflow for
// Re z < 0 (throws std::overflow_error in that case).
std::complex<double> erfcx_complex(std::complex<double> z);

// Complementary error function of a complex argument.
// Throws std::overflow_error in the thin corner |Im z| >> |Re z|,
// |Im z| > ~26.6 where |erfc(z)| ~ e^{Im z ^2} exceeds DBL_MAX.
std::complex<double> erfc_complex(std::complex<double> z);

// e^a * erfc(z) evaluated jointly: internally e^{a - z^2} * erfcx(z), so the
// result is finite whenever the mathematical product is, even when e^a alone
// overflows. Throws std::overflow_error only if the product itself does
// (for Re z < 0 the reflection path is conservative: it throws when the
// 2 e^a reflection term overflows, which near a zero of erfc may precede
// genuine product overflow).
std::complex<double> exp_erfc_scaled(std::complex<double> a,
                                     std::complex<double> z);

}  // namespace qscreen
