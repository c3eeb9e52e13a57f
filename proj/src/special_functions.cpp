#include "heisen/special_functions.hpp"

#include <cmath>
#include <stdexcept>

namespace heisen {

std::complex<double> e2pi(std::complex<double> a) {
    // exp(2 pi i (x+iy)) = e^{-2 pi y} (cos 2 pi x + i sin 2 pi x)
    const double mag = std::exp(-kTwoPi * a.imag());
    return {mag * std::cos(kTwoPi * a.real()), mag * std::sin(kTwoPi * a.real())};
}

namespace {

// Maclaurin series of erf, adequate through |w| ~ 2.5.
template <typename T>
T erf_series(T w) {
    const T w2 = w * w;
    T term = w;
    T sum = w;
    for (int n = 1; n < 200; ++n) {
        term *= -w2 / static_cast<double>(n);
        const T add = term / static_cast<double>(2 * n + 1);
        sum += add;
        if (std::abs(add) < 1e-18 * (std::abs(sum) + 1e-300)) break;
    }
    return sum * (2.0 / std::sqrt(kPi));
}

// Continued fraction for e^{w^2} erfc(w) = (1/sqrt(pi)) / (w + (1/2)/(w + 1/(w + (3/2)/(...)))),
// valid for Re w > 0; modified Lentz.
template <typename T>
T erfcx_cf(T w) {
    const double tiny = 1e-300;
    T f = w, C = w, D = T{};
    for (int k = 1; k <= 300; ++k) {
        const double a = 0.5 * k;  // partial numerators k/2, denominators all w
        D = w + a * D;
        if (std::abs(D) < tiny) D = tiny;
        C = w + a / C;
        if (std::abs(C) < tiny) C = tiny;
        D = 1.0 / D;
        const T delta = C * D;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-17) break;
    }
    return 1.0 / (std::sqrt(kPi) * f);
}

}  // namespace

double erfc_real(double x) {
    if (x < 0.0) return 2.0 - erfc_real(-x);
    if (x == 0.0) return 1.0;
    if (x < 1.5) return 1.0 - erf_series(x);
    if (x > 27.0) return 0.0;  // below 1e-300
    return std::exp(-x * x) * erfcx_cf(x);
}

double erfcx_real(double x) {
    if (x < 0.0) throw std::domain_error("erfcx_real: need x >= 0");
    if (x < 1.5) return std::exp(x * x) * (1.0 - erf_series(x));
    return erfcx_cf(x);
}

std::complex<double> erfc_complex(std::complex<double> w) {
    if (w.real() < 0.0) throw std::domain_error("erfc_complex: need Re w >= 0");
    if (std::abs(w) < 2.5) return 1.0 - erf_series(w);
    return std::exp(-w * w) * erfcx_cf(w);
}

std::complex<double> erfcx_complex(std::complex<double> w) {
    if (w.real() < 0.0) throw std::domain_error("erfcx_complex: need Re w >= 0");
    if (std::abs(w) < 2.5) return std::exp(w * w) * (1.0 - erf_series(w));
    return erfcx_cf(w);
}

std::complex<double> erfc_scaled(std::complex<double> tau, double x) {
    if (!(tau.imag() > 0.0)) throw std::domain_error("erfc_scaled: need Im tau > 0");
    // -i*tau has positive real part on the upper half-plane, so the principal
    // square root stays clear of the branch cut and Re sqrt(-i tau) > 0.
    const std::complex<double> root = std::sqrt(std::complex<double>(tau.imag(), -tau.real()));
    return erfc_complex(root * std::abs(x));
}

namespace {
// Legendre continued fraction: e^x E_1(x) = 1 / (x+1 - 1/(x+3 - 4/(x+5 - 9/(...))))
double gamma0e_cf(double x) {
    const double tiny = 1e-300;
    double b = x + 1.0, C = 1.0 / tiny, D = 1.0 / b, f = D;
    for (int k = 1; k <= 400; ++k) {
        const double a = -static_cast<double>(k) * k;
        b += 2.0;
        D = b + a * D;
        if (std::abs(D) < tiny) D = tiny;
        C = b + a / C;
        if (std::abs(C) < tiny) C = tiny;
        D = 1.0 / D;
        const double delta = C * D;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-17) break;
    }
    return f;
}
}  // namespace

double gamma0(double x) {
    if (!(x > 0.0)) throw std::domain_error("gamma0: need x > 0");
    if (x <= 1.5) {
        // E_1(x) = -gamma - log x + sum_{k>=1} (-1)^{k+1} x^k / (k k!)
        double term = 1.0, sum = 0.0;
        for (int k = 1; k <= 60; ++k) {
            term *= -x / k;
            const double add = -term / k;
            sum += add;
            if (std::abs(add) < 1e-18 * std::abs(sum)) break;
        }
        return -kEulerGamma - std::log(x) + sum;
    }
    if (x > 700.0) return 0.0;
    return gamma0e_cf(x) * std::exp(-x);
}

double gamma0e(double x) {
    if (!(x > 0.0)) throw std::domain_error("gamma0e: need x > 0");
    if (x <= 1.5) return std::exp(x) * gamma0(x);
    return gamma0e_cf(x);
}

namespace {
// B_2 .. B_16
constexpr double kBern[8] = {1.0 / 6.0,   -1.0 / 30.0,    1.0 / 42.0, -1.0 / 30.0,
                             5.0 / 66.0,  -691.0 / 2730.0, 7.0 / 6.0,  -3617.0 / 510.0};
}

double hurwitz(double s, double x) {
    if (s == 1.0) throw std::domain_error("hurwitz: pole at s = 1");
    if (!(x > 0.0 && x <= 1.0)) throw std::domain_error("hurwitz: need x in (0, 1]");
    // Euler-Maclaurin of fixed order 8 with the summation point pushed far
    // enough out that the first omitted correction is below 1e-17.
    const int shift = static_cast<int>(std::ceil(16.0 + std::abs(s)));
    double head = 0.0;
    for (int n = 0; n < shift; ++n) head += std::pow(x + n, -s);
    const double y = x + shift;
    double tail = std::pow(y, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(y, -s);
    double poch = s;  // rising factorial s(s+1)...(s+2k-2)
    double fact = 1.0;
    double ypow = std::pow(y, -s - 1.0);
    for (int k = 1; k <= 8; ++k) {
        fact *= (2.0 * k - 1.0) * (2.0 * k);
        tail += kBern[k - 1] * poch * ypow / fact;
        poch *= (s + 2.0 * k - 1.0) * (s + 2.0 * k);
        ypow /= y * y;
    }
    return head + tail;
}

double log_gamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("log_gamma: need x > 0");
    double shift = 0.0;
    while (x < 16.0) {
        shift -= std::log(x);
        x += 1.0;
    }
    double series = 0.0;
    double xpow = 1.0 / x;
    for (int k = 1; k <= 8; ++k) {
        series += kBern[k - 1] / (2.0 * k * (2.0 * k - 1.0)) * xpow;
        xpow /= x * x;
    }
    return shift + (x - 0.5) * std::log(x) - x + 0.5 * std::log(kTwoPi) + series;
}

double digamma_half() { return -kEulerGamma - 2.0 * std::log(2.0); }

Rational frac_angle(const Rational& x) {
    if (x.is_integer()) return Rational(1);
    return x - Rational(x.floor());
}

}  // namespace heisen
