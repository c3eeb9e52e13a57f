#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace heisen {

// 15-point Kronrod extension of the 7-point Gauss rule (positive abscissae).
// Standard constants; the embedded 7-point result drives the error estimate.
namespace gk15 {
inline constexpr double xgk[8] = {
    0.99145537112081263920685469752633, 0.94910791234275852452618968404785,
    0.86486442335976907278971278864093, 0.74153118559939443986386477328079,
    0.58608723546769113029414483825873, 0.40584515137739716690660641207696,
    0.20778495500789846760068940377324, 0.0};
inline constexpr double wgk[8] = {
    0.02293532201052922496373200805897, 0.06309209262997855329070066318921,
    0.10479001032225018383987632254152, 0.14065325971552591874518959051024,
    0.16900472663926790282658342659855, 0.19035057806478540991325640242101,
    0.20443294007529889241416199923465, 0.20948214108472782801299917489171};
inline constexpr double wg[4] = {
    0.12948496616886969327061143267908, 0.27970539148927666790146777142378,
    0.38183005050511894495036977548898, 0.41795918367346938775510204081633};
}  // namespace gk15

template <typename T>
struct QuadResult {
    T value{};
    double error = 0.0;       // estimated absolute error
    std::size_t evals = 0;
    bool converged = true;
};

namespace detail {

template <typename F, typename T>
void gk15_panel(const F& f, double a, double b, T& kronrod, double& err, std::size_t& evals) {
    const double c = 0.5 * (a + b), half = 0.5 * (b - a);
    T resk = gk15::wgk[7] * f(c);
    T resg = gk15::wg[3] * f(c);
    for (int j = 0; j < 7; ++j) {
        const double dx = half * gk15::xgk[j];
        const T fsum = f(c - dx) + f(c + dx);
        resk += gk15::wgk[j] * fsum;
        if (j % 2 == 1) resg += gk15::wg[j / 2] * fsum;
    }
    kronrod = resk * half;
    err = std::abs(resk - resg) * half;
    evals += 15;
}

}  // namespace detail

// Adaptive bisection with the GK15 pair on a finite interval. T is double or
// std::complex<double>.
template <typename T = double, typename F>
QuadResult<T> integrate(const F& f, double a, double b, double abs_tol = 1e-12,
                        double rel_tol = 1e-12, int max_depth = 48) {
    struct Seg {
        double a, b, err;
        T val;
        int depth;
        bool operator<(const Seg& o) const { return err < o.err; }
    };
    QuadResult<T> total;
    T v0;
    double e0;
    detail::gk15_panel<F, T>(f, a, b, v0, e0, total.evals);
    std::vector<Seg> heap{Seg{a, b, e0, v0, 0}};
    total.value = v0;
    total.error = e0;
    while (true) {
        const double tol = std::max(abs_tol, rel_tol * std::abs(total.value));
        if (total.error <= tol || heap.empty()) break;
        // split the segment with the worst error estimate
        std::pop_heap(heap.begin(), heap.end());
        Seg s = heap.back();
        heap.pop_back();
        if (s.depth >= max_depth) {
            total.converged = false;
            break;
        }
        const double m = 0.5 * (s.a + s.b);
        Seg l{s.a, m, 0.0, T{}, s.depth + 1}, r{m, s.b, 0.0, T{}, s.depth + 1};
        detail::gk15_panel<F, T>(f, l.a, l.b, l.val, l.err, total.evals);
        detail::gk15_panel<F, T>(f, r.a, r.b, r.val, r.err, total.evals);
        total.value += l.val + r.val - s.val;
        total.error += l.err + r.err - s.err;
        heap.push_back(l);
        std::push_heap(heap.begin(), heap.end());
        heap.push_back(r);
        std::push_heap(heap.begin(), heap.end());
        if (total.evals > 4'000'000) {
            total.converged = false;
            break;
        }
    }
    return total;
}

// Map (0, inf) through t = e^s and integrate f(t) dt/t over s in [lo, hi];
// callers pick log-range wide enough for their decay.
template <typename T = double, typename F>
QuadResult<T> integrate_log(const F& f, double t_lo, double t_hi, double abs_tol = 1e-12,
                            double rel_tol = 1e-12) {
    auto g = [&f](double s) { return f(std::exp(s)); };
    return integrate<T>(g, std::log(t_lo), std::log(t_hi), abs_tol, rel_tol);
}

// Gauss-Legendre nodes and weights on [-1, 1], Newton iteration on P_n.
struct GaussLegendre {
    std::vector<double> node;
    std::vector<double> weight;
    explicit GaussLegendre(int n);
};

}  // namespace heisen
