#pragma once

#include <complex>
#include <string>
#include <vector>

#include "heisen/lattice.hpp"

#include "json.hpp"

namespace heisen {

// Vector-valued data over the discriminant group, components in the fixed
// row-major coset order.
struct VectorValuedData {
    int level = 1;
    std::vector<std::complex<double>> comp;

    explicit VectorValuedData(const LatticeContext& ctx)
        : level(ctx.level), comp(static_cast<size_t>(ctx.coset_count())) {}

    std::complex<double>& at(CosetIndex h) {
        return comp[static_cast<size_t>(h.h1 * level + h.h2)];
    }
    const std::complex<double>& at(CosetIndex h) const {
        return comp[static_cast<size_t>(h.h1 * level + h.h2)];
    }
};

// Dense unitary matrix realizing the Weil representation (or its dual) on the
// canonical basis {e_h}, dimension N^2.
struct WeilMatrix {
    int level = 1;
    std::string label;
    std::vector<std::complex<double>> a;  // row-major, dim x dim

    int dim() const { return level * level; }
    std::complex<double>& at(int row, int col) { return a[static_cast<size_t>(row * dim() + col)]; }
    const std::complex<double>& at(int row, int col) const {
        return a[static_cast<size_t>(row * dim() + col)];
    }
};

// rho(T) e_h = e(Q(h)) e_h, diagonal.
WeilMatrix rho_T(const LatticeContext& ctx);

// rho(S) e_h = N^{-1} sum_delta e(-B(delta,h)) e_delta. The signature (1,1)
// Weil constant is 1, so no eighth root of unity appears.
WeilMatrix rho_S(const LatticeContext& ctx);

// Dual representation for the sign-flipped lattice: entrywise conjugate.
WeilMatrix rho_dual(const WeilMatrix& m);

WeilMatrix identity_matrix(const LatticeContext& ctx);
WeilMatrix multiply(const WeilMatrix& x, const WeilMatrix& y);

VectorValuedData apply(const WeilMatrix& m, const VectorValuedData& v);

// max |x_ij - y_ij|
double max_entry_diff(const WeilMatrix& x, const WeilMatrix& y);

// Unitarity defect ||M M^H - I||_max.
double unitarity_defect(const WeilMatrix& m);

// Complex entries as [re, im] pairs, row-major in the fixed coset order.
nlohmann::json weil_to_json(const WeilMatrix& m);

}  // namespace heisen
