#pragma once

#include <stdexcept>
#include <vector>

#include "heisen/rational.hpp"

namespace heisen {

// The isotropic lattice L = N*Z^2 inside V = Q^2 with Q((a,b)) = a*b/N.
// The dual lattice is Z^2 and the discriminant group L*/L = (Z/N)^2.
struct LatticeContext {
    int level;  // N >= 1

    explicit LatticeContext(int n) : level(n) {
        if (n < 1) throw std::invalid_argument("LatticeContext: level must be >= 1");
    }
    int coset_count() const { return level * level; }
};

// Representative in [0, n).
inline long long mod_reduce(long long a, long long n) {
    long long r = a % n;
    return r < 0 ? r + n : r;
}

// Element of the discriminant group, always stored reduced to [0, N)^2.
struct CosetIndex {
    int h1 = 0;
    int h2 = 0;
    bool operator==(const CosetIndex&) const = default;
};

inline CosetIndex reduce_coset(const LatticeContext& ctx, long long a, long long b) {
    return CosetIndex{static_cast<int>(mod_reduce(a, ctx.level)),
                      static_cast<int>(mod_reduce(b, ctx.level))};
}

inline CosetIndex negate(const LatticeContext& ctx, CosetIndex h) {
    return reduce_coset(ctx, -h.h1, -h.h2);
}

// Row-major (h1, h2) rank; fixed ordering used by every serialization.
inline int coset_rank(const LatticeContext& ctx, CosetIndex h) {
    return h.h1 * ctx.level + h.h2;
}

std::vector<CosetIndex> all_cosets(const LatticeContext& ctx);

// Vector in the dual lattice Z^2.
struct LatticeVector {
    long long x1 = 0;
    long long x2 = 0;
    bool operator==(const LatticeVector&) const = default;
};

// Q(X) = x1*x2/N, exact.
Rational quad_form(const LatticeContext& ctx, LatticeVector x);

// B(X,Y) = Q(X+Y) - Q(X) - Q(Y) = (x1*y2 + x2*y1)/N, exact.
Rational bilinear(const LatticeContext& ctx, LatticeVector x, LatticeVector y);

// Positive definite majorant Q(X)_t = (x1^2/t^2 + t^2*x2^2)/(2N) attached to
// the frame point t; throws for t <= 0.
double majorant(const LatticeContext& ctx, LatticeVector x, double t);

// Positive divisors of |k|, ascending; k != 0.
std::vector<long long> divisors(long long k);

// The complete finite set {X in L+h : N*Q(X) = m}, i.e. x1*x2 = m with
// x1 = h1, x2 = h2 (mod N), deterministic order (sorted by x1).
// m = 0 would be the infinite isotropic family and throws.
std::vector<LatticeVector> vectors_with_norm(const LatticeContext& ctx, CosetIndex h, long long m);

}  // namespace heisen
