#pragma once

#include <complex>

#include "heisen/rational.hpp"

namespace heisen {

// Shared tolerance bundle for numerical routines.
struct Accuracy {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
};

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

// e(a) = exp(2 pi i a).
std::complex<double> e2pi(std::complex<double> a);
inline std::complex<double> e2pi(double a) { return e2pi(std::complex<double>(a, 0.0)); }

inline double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

// Complementary error function, 1e-13 relative for |x| <= 10.
double erfc_real(double x);

// Scaled complement e^{x^2} erfc(x) for x >= 0; overflow-free at any size.
double erfcx_real(double x);

// erfc at a complex argument with positive real part (series / Lentz
// continued fraction). Exposed for oracles.
std::complex<double> erfc_complex(std::complex<double> w);

// e^{w^2} erfc(w) for Re w >= 0.
std::complex<double> erfcx_complex(std::complex<double> w);

// Holomorphic extension erfc(sqrt(-i tau) |x|) along the principal branch;
// requires Im(tau) > 0. Agrees with erfc_real(sqrt(v)|x|) at tau = iv.
std::complex<double> erfc_scaled(std::complex<double> tau, double x);

// Incomplete gamma Gamma(0, x) = E_1(x) for x > 0.
double gamma0(double x);

// Scaled variant e^x Gamma(0, x), overflow-free for large x.
double gamma0e(double x);

// Hurwitz zeta H(s, x) = sum_{n>=0} (x+n)^{-s}, Euler-Maclaurin continuation,
// real s != 1, x in (0, 1].
double hurwitz(double s, double x);

// log Gamma(x) for x > 0 (Stirling series with upward recursion).
double log_gamma(double x);

// Gamma'(1/2)/Gamma(1/2) = -EulerGamma - 2 log 2.
double digamma_half();

// <x> in (0, 1] with x - <x> integral; integers map to 1.
Rational frac_angle(const Rational& x);

}  // namespace heisen
