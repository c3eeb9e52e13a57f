#include "heisen/eisenstein.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "heisen/series_bounds.hpp"
#include "heisen/theta.hpp"

namespace heisen {

Rational c0(const LatticeContext& ctx, CosetIndex h) {
    if (h.h1 != 0 && h.h2 == 0)
        return Rational(1, 2) - frac_angle(Rational(h.h1, ctx.level));
    if (h.h1 == 0 && h.h2 != 0)
        return Rational(1, 2) - frac_angle(Rational(h.h2, ctx.level));
    return Rational(0);
}

long long c_coeff(const LatticeContext& ctx, CosetIndex h, long long m) {
    if (m <= 0) throw std::invalid_argument("c_coeff: need m > 0");
    long long acc = 0;
    for (const LatticeVector& x : vectors_with_norm(ctx, h, m)) acc += x.x1 > 0 ? 1 : -1;
    return acc;
}

double LogSkeleton::value() const {
    double acc = 0.0;
    for (const auto& [p, q] : terms) acc += q.to_double() * std::log(static_cast<double>(p));
    return acc;
}

namespace {
void add_prime_powers(std::map<long long, long long>& exps, long long n, long long sign) {
    for (long long p = 2; p * p <= n; ++p)
        while (n % p == 0) {
            exps[p] += sign;
            n /= p;
        }
    if (n > 1) exps[n] += sign;
}
}  // namespace

CTilde c_tilde(const LatticeContext& ctx, CosetIndex h, long long m) {
    if (m <= 0) throw std::invalid_argument("c_tilde: need m > 0");
    CTilde out;
    std::map<long long, long long> exps;
    for (const LatticeVector& x : vectors_with_norm(ctx, h, -m)) {
        const long long s = x.x1 > 0 ? 1 : -1;
        add_prime_powers(exps, std::llabs(x.x1), s);
        add_prime_powers(exps, std::llabs(x.x2), -s);
    }
    for (const auto& [p, e] : exps)
        if (e != 0) out.skeleton.terms.emplace_back(p, Rational(e));
    // the floating value comes from the exact skeleton, so full symbolic
    // cancellation (every level-one coefficient, equal-modulus pairs) is exact
    out.value = out.skeleton.value();
    return out;
}

double c_tilde0(const LatticeContext& ctx, CosetIndex h) {
    int index;
    if (h.h2 == 0)
        index = h.h1;
    else if (h.h1 == 0)
        index = h.h2;
    else
        return 0.0;
    const double a = frac_angle(Rational(index, ctx.level)).to_double();
    const double b = frac_angle(Rational(-index, ctx.level)).to_double();
    return c0(ctx, h).to_double() * (std::log(kPi * ctx.level) - digamma_half()) - log_gamma(a) +
           log_gamma(b);
}

QExpansion q_expansion(const LatticeContext& ctx, CosetIndex h, long long m_max) {
    if (m_max < 0) throw std::invalid_argument("q_expansion: need m_max >= 0");
    QExpansion exp;
    exp.level = ctx.level;
    exp.h = h;
    exp.m_max = m_max;
    const long long residue = mod_reduce(static_cast<long long>(h.h1) * h.h2, ctx.level);
    for (long long m = residue == 0 ? 0 : residue; m <= m_max; m += ctx.level)
        exp.coeffs[m] = m == 0 ? c0(ctx, h) : Rational(c_coeff(ctx, h, m));
    return exp;
}

HarmonicExpansion harmonic_expansion(const LatticeContext& ctx, CosetIndex h, long long m_max) {
    if (m_max < 0) throw std::invalid_argument("harmonic_expansion: need m_max >= 0");
    HarmonicExpansion exp;
    exp.level = ctx.level;
    exp.h = h;
    exp.m_max = m_max;
    exp.log_v_coeff = c0(ctx, h);
    const long long hol_res = mod_reduce(-static_cast<long long>(h.h1) * h.h2, ctx.level);
    for (long long m = hol_res == 0 ? 0 : hol_res; m <= m_max; m += ctx.level)
        exp.hol[m] = m == 0 ? CTilde{c_tilde0(ctx, h), {}} : c_tilde(ctx, h, m);
    const long long res = mod_reduce(static_cast<long long>(h.h1) * h.h2, ctx.level);
    for (long long m = res == 0 ? ctx.level : res; m <= m_max; m += ctx.level)
        exp.nonhol[m] = Rational(c_coeff(ctx, h, m));
    return exp;
}

namespace {
// |c_h(m)| <= 2 d(m) <= 4 sqrt(m) <= 4m and |c~_h(m)| <= 4 sqrt(m) log(mN)
// <= 4 (1 + log N) m drive the certified tails below.
double hol_tail(int level, double v, long long m_max, bool with_log) {
    const double x = std::exp(-kTwoPi * v / level);
    const double factor = with_log ? 4.0 * (1.0 + std::log(static_cast<double>(level))) : 4.0;
    return factor * geom_tail1(m_max, x);
}

double nonhol_tail(int level, double v, long long m_max) {
    // per-term bound 2 d(m) Gamma(0, 4 pi v m/N) e^{2 pi v m/N}
    //              <= 4 sqrt(m) (N/(4 pi v m)) e^{-2 pi v m / N}
    const double x = std::exp(-kTwoPi * v / level);
    return (level / (kPi * v)) / std::sqrt(static_cast<double>(m_max)) * geom_tail0(m_max, x);
}
}  // namespace

EvalResult eval_vartheta(const QExpansion& exp, ModularPoint tau) {
    if (!(tau.v > 0.0)) throw std::invalid_argument("eval_vartheta: need v > 0");
    EvalResult out;
    for (const auto& [m, c] : exp.coeffs)
        out.value += c.to_double() * e2pi(static_cast<double>(m) * tau.tau() / static_cast<double>(exp.level));
    out.tail_bound = hol_tail(exp.level, tau.v, exp.m_max, false);
    return out;
}

EvalResult eval_vartheta_tilde(const HarmonicExpansion& exp, ModularPoint tau) {
    if (!(tau.v > 0.0)) throw std::invalid_argument("eval_vartheta_tilde: need v > 0");
    EvalResult out;
    for (const auto& [m, c] : exp.hol)
        out.value += c.value * e2pi(static_cast<double>(m) * tau.tau() / static_cast<double>(exp.level));
    out.value += exp.log_v_coeff.to_double() * std::log(tau.v);
    for (const auto& [m, c] : exp.nonhol) {
        // Gamma(0, 4 pi v n) e(-n tau) via the scaled gamma: the growing
        // e^{2 pi v n} factor cancels against e^{-4 pi v n} analytically
        const double x = 4.0 * kPi * tau.v * m / exp.level;
        const double mag = gamma0e(x) * std::exp(-kTwoPi * tau.v * m / exp.level);
        out.value -= c.to_double() * mag *
                     e2pi(-static_cast<double>(m) * tau.u / static_cast<double>(exp.level));
    }
    out.tail_bound = hol_tail(exp.level, tau.v, exp.m_max, true) +
                     nonhol_tail(exp.level, tau.v, std::max<long long>(exp.m_max, 1));
    return out;
}

QExpansion xi_expansion(const HarmonicExpansion& exp) {
    QExpansion out;
    out.level = exp.level;
    out.h = exp.h;
    out.m_max = exp.m_max;
    const long long res = mod_reduce(static_cast<long long>(exp.h.h1) * exp.h.h2, exp.level);
    if (res == 0 && exp.m_max >= 0) out.coeffs[0] = exp.log_v_coeff;
    for (const auto& [m, c] : exp.nonhol) out.coeffs[m] = c;
    return out;
}

long long adapt_m_max(const LatticeContext& ctx, double v, double tol) {
    if (!(v > 0.0 && tol > 0.0)) throw std::invalid_argument("adapt_m_max: need v, tol > 0");
    long long m = 4 * ctx.level;
    while (hol_tail(ctx.level, v, m, true) + nonhol_tail(ctx.level, v, m) >= tol) {
        m *= 2;
        if (m > 2'000'000) throw certification_error("adapt_m_max: tolerance unachievable");
    }
    return m;
}

nlohmann::json coefficient_table_json(const LatticeContext& ctx, CosetIndex h, long long m_max) {
    const QExpansion q = q_expansion(ctx, h, m_max);
    const HarmonicExpansion he = harmonic_expansion(ctx, h, m_max);
    nlohmann::json jc = nlohmann::json::array();
    for (const auto& [m, c] : q.coeffs)
        jc.push_back({{"m", m}, {"num", c.num()}, {"den", c.den()}});
    nlohmann::json jt = nlohmann::json::array();
    for (const auto& [m, c] : he.hol) {
        nlohmann::json sym = nlohmann::json::array();
        for (const auto& [p, qq] : c.skeleton.terms) sym.push_back({p, qq.num(), qq.den()});
        jt.push_back({{"m", m}, {"value", c.value}, {"symbolic", sym}});
    }
    return {{"N", ctx.level}, {"h", {h.h1, h.h2}}, {"m_max", m_max}, {"c", jc}, {"c_tilde", jt}};
}

std::pair<QExpansion, HarmonicExpansion> parse_coefficient_table(const nlohmann::json& j) {
    const LatticeContext ctx(j.at("N").get<int>());
    const CosetIndex h = reduce_coset(ctx, j.at("h").at(0).get<long long>(),
                                      j.at("h").at(1).get<long long>());
    const long long m_max = j.at("m_max").get<long long>();
    QExpansion q;
    q.level = ctx.level;
    q.h = h;
    q.m_max = m_max;
    for (const auto& e : j.at("c"))
        q.coeffs[e.at("m").get<long long>()] =
            Rational(e.at("num").get<long long>(), e.at("den").get<long long>());
    HarmonicExpansion he;
    he.level = ctx.level;
    he.h = h;
    he.m_max = m_max;
    for (const auto& e : j.at("c_tilde")) {
        CTilde c;
        c.value = e.at("value").get<double>();
        for (const auto& s : e.at("symbolic"))
            c.skeleton.terms.emplace_back(s.at(0).get<long long>(),
                                          Rational(s.at(1).get<long long>(),
                                                   s.at(2).get<long long>()));
        he.hol[e.at("m").get<long long>()] = std::move(c);
    }
    he.log_v_coeff = q.coeffs.count(0) ? q.coeffs.at(0) : Rational(0);
    for (const auto& [m, c] : q.coeffs)
        if (m > 0) he.nonhol[m] = c;
    return {std::move(q), std::move(he)};
}

std::string coefficient_table_csv(const LatticeContext& ctx, CosetIndex h, long long m_max) {
    const QExpansion q = q_expansion(ctx, h, m_max);
    const HarmonicExpansion he = harmonic_expansion(ctx, h, m_max);
    std::ostringstream os;
    os << "N,h1,h2,m,c_num,c_den,c_tilde,c_tilde_symbolic\n";
    std::set<long long> ms;
    for (const auto& [m, c] : q.coeffs) ms.insert(m);
    for (const auto& [m, c] : he.hol) ms.insert(m);
    os.precision(17);
    for (long long m : ms) {
        os << ctx.level << ',' << h.h1 << ',' << h.h2 << ',' << m << ',';
        if (auto it = q.coeffs.find(m); it != q.coeffs.end())
            os << it->second.num() << ',' << it->second.den() << ',';
        else
            os << ",,";
        if (auto it = he.hol.find(m); it != he.hol.end()) {
            os << it->second.value << ',';
            std::string sep;
            for (const auto& [p, qq] : it->second.skeleton.terms) {
                os << sep << p << '^' << qq.str();
                sep = " ";
            }
        } else {
            os << ',';
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace heisen
