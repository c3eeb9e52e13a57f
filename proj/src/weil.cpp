#include "heisen/weil.hpp"

#include "heisen/special_functions.hpp"

namespace heisen {

namespace {
WeilMatrix zero_matrix(const LatticeContext& ctx, std::string label) {
    WeilMatrix m;
    m.level = ctx.level;
    m.label = std::move(label);
    m.a.assign(static_cast<size_t>(ctx.coset_count()) * ctx.coset_count(), {0.0, 0.0});
    return m;
}
}  // namespace

WeilMatrix rho_T(const LatticeContext& ctx) {
    WeilMatrix m = zero_matrix(ctx, "rho(T)");
    for (CosetIndex h : all_cosets(ctx)) {
        const int r = coset_rank(ctx, h);
        m.at(r, r) = e2pi(quad_form(ctx, {h.h1, h.h2}).to_double());
    }
    return m;
}

WeilMatrix rho_S(const LatticeContext& ctx) {
    WeilMatrix m = zero_matrix(ctx, "rho(S)");
    const double inv = 1.0 / ctx.level;
    for (CosetIndex h : all_cosets(ctx)) {
        for (CosetIndex d : all_cosets(ctx)) {
            const double b = bilinear(ctx, {d.h1, d.h2}, {h.h1, h.h2}).to_double();
            m.at(coset_rank(ctx, d), coset_rank(ctx, h)) = inv * e2pi(-b);
        }
    }
    return m;
}

WeilMatrix rho_dual(const WeilMatrix& src) {
    WeilMatrix m = src;
    m.label = "dual(" + src.label + ")";
    for (auto& z : m.a) z = std::conj(z);
    return m;
}

WeilMatrix identity_matrix(const LatticeContext& ctx) {
    WeilMatrix m = zero_matrix(ctx, "id");
    for (int i = 0; i < m.dim(); ++i) m.at(i, i) = 1.0;
    return m;
}

WeilMatrix multiply(const WeilMatrix& x, const WeilMatrix& y) {
    if (x.level != y.level) throw std::invalid_argument("multiply: level mismatch");
    LatticeContext ctx(x.level);
    WeilMatrix m = zero_matrix(ctx, x.label + "*" + y.label);
    const int d = m.dim();
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k) {
            const std::complex<double> xik = x.at(i, k);
            if (xik == std::complex<double>{}) continue;
            for (int j = 0; j < d; ++j) m.at(i, j) += xik * y.at(k, j);
        }
    return m;
}

VectorValuedData apply(const WeilMatrix& m, const VectorValuedData& v) {
    if (m.level != v.level) throw std::invalid_argument("apply: dimension mismatch");
    LatticeContext ctx(m.level);
    VectorValuedData out(ctx);
    const int d = m.dim();
    for (int i = 0; i < d; ++i) {
        std::complex<double> acc = 0.0;
        for (int j = 0; j < d; ++j) acc += m.at(i, j) * v.comp[static_cast<size_t>(j)];
        out.comp[static_cast<size_t>(i)] = acc;
    }
    return out;
}

double max_entry_diff(const WeilMatrix& x, const WeilMatrix& y) {
    double worst = 0.0;
    for (size_t i = 0; i < x.a.size(); ++i) worst = std::max(worst, std::abs(x.a[i] - y.a[i]));
    return worst;
}

double unitarity_defect(const WeilMatrix& m) {
    const int d = m.dim();
    double worst = 0.0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            std::complex<double> acc = 0.0;
            for (int k = 0; k < d; ++k) acc += m.at(i, k) * std::conj(m.at(j, k));
            if (i == j) acc -= 1.0;
            worst = std::max(worst, std::abs(acc));
        }
    return worst;
}

nlohmann::json weil_to_json(const WeilMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    const int d = m.dim();
    for (int i = 0; i < d; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < d; ++j)
            row.push_back({m.at(i, j).real(), m.at(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return {{"level", m.level}, {"label", m.label}, {"dim", d}, {"entries", rows}};
}

}  // namespace heisen
