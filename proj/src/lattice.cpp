#include "heisen/lattice.hpp"

#include <algorithm>
#include <cmath>

namespace heisen {

std::vector<CosetIndex> all_cosets(const LatticeContext& ctx) {
    std::vector<CosetIndex> out;
    out.reserve(static_cast<size_t>(ctx.coset_count()));
    for (int a = 0; a < ctx.level; ++a)
        for (int b = 0; b < ctx.level; ++b) out.push_back(CosetIndex{a, b});
    return out;
}

Rational quad_form(const LatticeContext& ctx, LatticeVector x) {
    return Rational(x.x1 * x.x2, ctx.level);
}

Rational bilinear(const LatticeContext& ctx, LatticeVector x, LatticeVector y) {
    return Rational(x.x1 * y.x2 + x.x2 * y.x1, ctx.level);
}

double majorant(const LatticeContext& ctx, LatticeVector x, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("majorant: t must be positive");
    const double a = static_cast<double>(x.x1) / t;
    const double b = static_cast<double>(x.x2) * t;
    return (a * a + b * b) / (2.0 * ctx.level);
}

std::vector<long long> divisors(long long k) {
    if (k == 0) throw std::invalid_argument("divisors: k must be nonzero");
    if (k < 0) k = -k;
    std::vector<long long> small, large;
    for (long long d = 1; d * d <= k; ++d) {
        if (k % d != 0) continue;
        small.push_back(d);
        if (d != k / d) large.push_back(k / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

std::vector<LatticeVector> vectors_with_norm(const LatticeContext& ctx, CosetIndex h, long long m) {
    if (m == 0)
        throw std::invalid_argument(
            "vectors_with_norm: m = 0 is the infinite isotropic family; use the constant-term "
            "formulas instead");
    const long long n = ctx.level;
    std::vector<LatticeVector> out;
    for (long long d : divisors(m)) {
        // x1 = +-d, x2 = m/x1; keep vectors landing in the coset.
        for (long long x1 : {d, -d}) {
            const long long x2 = m / x1;
            if (mod_reduce(x1, n) == h.h1 && mod_reduce(x2, n) == h.h2)
                out.push_back(LatticeVector{x1, x2});
        }
    }
    std::sort(out.begin(), out.end(),
              [](const LatticeVector& a, const LatticeVector& b) { return a.x1 < b.x1; });
    return out;
}

}  // namespace heisen
