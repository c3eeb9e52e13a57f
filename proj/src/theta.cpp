#include "heisen/theta.hpp"

#include <algorithm>
#include <cmath>

#include "heisen/eisenstein.hpp"
#include "heisen/series_bounds.hpp"

namespace heisen {

SplitPoint iota(const LatticeContext& ctx, double t, LatticeVector x) {
    return iota_real(ctx, t, static_cast<double>(x.x1), static_cast<double>(x.x2));
}

SplitPoint iota_real(const LatticeContext& ctx, double t, double x1, double x2) {
    if (!(t > 0.0)) throw std::invalid_argument("iota: t must be positive");
    const double s = 1.0 / std::sqrt(2.0 * ctx.level);
    return SplitPoint{(x1 / t + t * x2) * s, (x1 / t - t * x2) * s};
}

int c_minus1(const LatticeContext&, CosetIndex h) {
    return (h.h1 == 0 ? 1 : 0) + (h.h2 == 0 ? 1 : 0);
}

namespace {

enum class Decay { gaussian_linear, gaussian };  // |term| <= sqrt(2v) rho e^{-pi v rho^2} resp. e^{-pi v rho^2}

// Points of the shifted coset land on a rectangular grid with cell area N in
// the coordinates (x1/(t sqrt N), t x2/sqrt N); rho^2 = 2 * majorant. Cells of
// points in the annulus [rho, rho+1) are contained in [rho-d, rho+1+d], which
// bounds their number by area/N.
double annulus_count_bound(const LatticeContext& ctx, double t, double rho) {
    const double d = 0.5 * std::sqrt(ctx.level * (t * t + 1.0 / (t * t)));
    const double outer = rho + 1.0 + d;
    const double inner = std::max(rho - d, 0.0);
    return kPi * (outer * outer - inner * inner) / ctx.level;
}

double term_bound(Decay decay, double v, double rho) {
    const double g = std::exp(-kPi * v * rho * rho);
    return decay == Decay::gaussian ? g : std::sqrt(2.0 * v) * (rho + 1.0) * g;
}

double gaussian_tail(const LatticeContext& ctx, double v, double t, double rho0, Decay decay) {
    double total = 0.0;
    for (int k = 0; k < 100000; ++k) {
        const double rho = rho0 + k;
        const double add = annulus_count_bound(ctx, t, rho) * term_bound(decay, v, rho);
        total += add;
        if (add < 1e-6 * total && k > 2) break;
    }
    return total;
}

double rho_for_tol(const LatticeContext& ctx, double v, double t, double tol, Decay decay) {
    double rho = 1.0;
    while (gaussian_tail(ctx, v, t, rho, decay) >= tol) {
        rho += 0.5;
        if (rho > 2e4) throw certification_error("kernel truncation: tolerance unachievable");
    }
    return rho;
}

struct Term {
    double major;
    double x1;
    double x2;
    std::complex<double> value;
};

// Deterministic summation: increasing majorant, then lexicographic.
std::complex<double> accumulate_sorted(std::vector<Term>& terms) {
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
        if (a.major != b.major) return a.major < b.major;
        if (a.x1 != b.x1) return a.x1 < b.x1;
        return a.x2 < b.x2;
    });
    std::complex<double> acc = 0.0;
    for (const Term& t : terms) acc += t.value;
    return acc;
}

// Walk the shifted coset {(n1+eps, n2+eps) : n = h (mod N)} inside rho(X) <= rho_max.
template <typename F>
void for_each_coset_point(const LatticeContext& ctx, CosetIndex h, double eps, double t,
                          double rho_max, F&& fn) {
    const double sN = std::sqrt(static_cast<double>(ctx.level));
    const double b1 = t * sN * rho_max + std::abs(eps) + 1.0;
    const double b2 = sN * rho_max / t + std::abs(eps) + 1.0;
    const long long n = ctx.level;
    for (long long n1 = h.h1 - n * static_cast<long long>(b1 / n + 2); n1 <= b1; n1 += n) {
        if (n1 + eps < -b1) continue;
        const double x1 = n1 + eps;
        for (long long n2 = h.h2 - n * static_cast<long long>(b2 / n + 2); n2 <= b2; n2 += n) {
            if (n2 + eps < -b2) continue;
            const double x2 = n2 + eps;
            const double a = x1 / t, b = x2 * t;
            const double rho2 = (a * a + b * b) / ctx.level;
            if (rho2 > rho_max * rho_max) continue;
            fn(x1, x2, 0.5 * rho2);
        }
    }
}

double ray_window(double t) { return std::min(1.0 / (1.0 + t * t), t * t / (1.0 + t * t)); }

// Closed geometric form of one isotropic-ray family. `other` is the residue
// of the free coordinate: rays (0, n2) for a family along n2, rays (n1, 0)
// for the mirrored one; the same formula serves both.
std::complex<double> ray_geometric(const LatticeContext& ctx, int other, ModularPoint tau,
                                   ShiftPair s) {
    if (s.eps == 0.0) return 0.0;  // the eps = 0 series over rays is empty
    const std::complex<double> pre =
        e2pi((2.0 * s.eps * s.eps_prime - s.eps * s.eps * tau.tau()) / static_cast<double>(ctx.level));
    const std::complex<double> z = s.eps * tau.tau() - s.eps_prime;
    if (s.eps > 0.0) {
        const double a = frac_angle(Rational(-other, ctx.level)).to_double();
        return -pre * e2pi(z * a) / (1.0 - e2pi(z));
    }
    const double a = frac_angle(Rational(other, ctx.level)).to_double();
    return pre * e2pi(-z * a) / (1.0 - e2pi(-z));
}

}  // namespace

double truncation_radius(const LatticeContext& ctx, double v, double t, double tol) {
    if (!(v > 0.0 && t > 0.0 && tol > 0.0))
        throw std::invalid_argument("truncation_radius: need v, t, tol > 0");
    const double rho = rho_for_tol(ctx, v, t, tol, Decay::gaussian_linear);
    return 0.5 * rho * rho;  // majorant cutoff
}

ComponentValue theta_h(const LatticeContext& ctx, CosetIndex h, ModularPoint tau, double t,
                       double tol) {
    if (!(tau.v > 0.0 && t > 0.0)) throw std::invalid_argument("theta_h: need v, t > 0");
    const double rho = rho_for_tol(ctx, tau.v, t, tol, Decay::gaussian_linear);
    std::vector<Term> terms;
    for_each_coset_point(ctx, h, 0.0, t, rho, [&](double x1, double x2, double major) {
        terms.push_back(Term{major, x1, x2, phi(tau, iota_real(ctx, t, x1, x2))});
    });
    return ComponentValue{accumulate_sorted(terms),
                          gaussian_tail(ctx, tau.v, t, rho, Decay::gaussian_linear)};
}

ComponentValue theta_star_h(const LatticeContext& ctx, CosetIndex h, ModularPoint tau, double t,
                            ShiftPair shift, double tol) {
    if (!(tau.v > 0.0 && t > 0.0)) throw std::invalid_argument("theta_star_h: need v, t > 0");
    const double rho = rho_for_tol(ctx, tau.v, t, tol, Decay::gaussian);
    std::vector<Term> terms;
    for_each_coset_point(ctx, h, shift.eps, t, rho, [&](double x1, double x2, double major) {
        const std::complex<double> character = e2pi(shift.eps_prime * (x1 + x2) / ctx.level);
        terms.push_back(
            Term{major, x1, x2, phi_star(tau, iota_real(ctx, t, x1, x2)) * character});
    });
    return ComponentValue{accumulate_sorted(terms),
                          gaussian_tail(ctx, tau.v, t, rho, Decay::gaussian)};
}

ComponentValue theta_plus_h(const LatticeContext& ctx, CosetIndex h, ModularPoint tau, double t,
                            ShiftPair shift, double tol) {
    if (!(tau.v > 0.0 && t > 0.0)) throw std::invalid_argument("theta_plus_h: need v, t > 0");
    const bool has_rays = c_minus1(ctx, h) > 0;
    if (has_rays && shift.eps != 0.0 && !(std::abs(shift.eps) < ray_window(t)))
        throw std::domain_error("theta_plus_h: eps outside the admissible ray window");

    // anisotropic terms, |n1 n2| = m >= 1; since -(n1+eps)(n2+eps) > -n1n2/2
    // each term is bounded by e^{-pi v m / N} and at most 2 d(m) <= 4m pairs
    // share a given m.
    const double x = std::exp(-kPi * tau.v / ctx.level);
    long long cutoff = 16;
    while (4.0 * geom_tail1(cutoff, x) >= tol) {
        cutoff *= 2;
        if (cutoff > (1LL << 40)) throw certification_error("theta_plus_h: tolerance unachievable");
    }
    std::vector<Term> terms;
    for (long long m = 1; m <= cutoff; ++m) {
        for (long long d : divisors(m)) {
            for (long long n1 : {d, -d}) {
                const long long n2 = -m / n1;
                if (mod_reduce(n1, ctx.level) != h.h1 || mod_reduce(n2, ctx.level) != h.h2)
                    continue;
                const double y1 = static_cast<double>(n1) + shift.eps;
                const double y2 = static_cast<double>(n2) + shift.eps;
                const double a = y1 / t, b = y2 * t;
                const double major = (a * a + b * b) / (2.0 * ctx.level);
                const double sign = sgn(y1 / t + y2 * t);
                if (sign == 0.0) continue;
                const std::complex<double> val =
                    sign * e2pi(-y1 * y2 * tau.tau() / static_cast<double>(ctx.level)) *
                    e2pi(shift.eps_prime * (y1 + y2) / ctx.level);
                terms.push_back(Term{major, y1, y2, val});
            }
        }
    }
    std::complex<double> total = accumulate_sorted(terms);
    if (h.h1 == 0) total += ray_geometric(ctx, h.h2, tau, shift);  // rays (0, n2)
    if (h.h2 == 0) total += ray_geometric(ctx, h.h1, tau, shift);  // rays (n1, 0)
    return ComponentValue{total, 4.0 * geom_tail1(cutoff, x)};
}

ComponentValue theta_tilde_eps_h(const LatticeContext& ctx, CosetIndex h, ModularPoint tau,
                                 double t, ShiftPair shift, double tol) {
    const ComponentValue plus = theta_plus_h(ctx, h, tau, t, shift, 0.5 * tol);
    const ComponentValue star = theta_star_h(ctx, h, tau, t, shift, 0.5 * tol);
    return ComponentValue{plus.value - star.value, plus.tail_bound + star.tail_bound};
}

ComponentValue theta_tilde_h(const LatticeContext& ctx, CosetIndex h, ModularPoint tau, double t,
                             double tol, TildeSign sign) {
    const ComponentValue plus = theta_plus_h(ctx, h, tau, t, ShiftPair{}, 0.5 * tol);
    const ComponentValue star = theta_star_h(ctx, h, tau, t, ShiftPair{}, 0.5 * tol);
    const double c0v = c0(ctx, h).to_double();
    const std::complex<double> value = (sign == TildeSign::proof_minus)
                                           ? c0v + plus.value - star.value
                                           : c0v + plus.value + star.value;
    return ComponentValue{value, plus.tail_bound + star.tail_bound};
}

KernelValue theta_vector(const LatticeContext& ctx, ModularPoint tau, double t, double tol) {
    KernelValue out{VectorValuedData(ctx), 0.0};
    for (CosetIndex h : all_cosets(ctx)) {
        const ComponentValue c = theta_h(ctx, h, tau, t, tol);
        out.components.at(h) = c.value;
        out.truncation_bound = std::max(out.truncation_bound, c.tail_bound);
    }
    return out;
}

KernelValue theta_tilde_vector(const LatticeContext& ctx, ModularPoint tau, double t, double tol,
                               TildeSign sign) {
    KernelValue out{VectorValuedData(ctx), 0.0};
    for (CosetIndex h : all_cosets(ctx)) {
        const ComponentValue c = theta_tilde_h(ctx, h, tau, t, tol, sign);
        out.components.at(h) = c.value;
        out.truncation_bound = std::max(out.truncation_bound, c.tail_bound);
    }
    return out;
}

}  // namespace heisen
