#pragma once

#include <cmath>
#include <stdexcept>

namespace heisen {

// Closed forms for geometric-type tails with 0 < x < 1.

// sum_{m > M} x^m
inline double geom_tail0(long long m, double x) {
    return std::pow(x, static_cast<double>(m + 1)) / (1.0 - x);
}

// sum_{m > M} m x^m
inline double geom_tail1(long long m, double x) {
    const double M = static_cast<double>(m);
    return std::pow(x, M + 1.0) * ((M + 1.0) * (1.0 - x) + x) / ((1.0 - x) * (1.0 - x));
}

}  // namespace heisen
