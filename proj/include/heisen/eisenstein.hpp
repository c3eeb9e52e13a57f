#pragma once

#include <complex>
#include <map>
#include <utility>
#include <vector>

#include "heisen/lattice.hpp"
#include "heisen/schwartz.hpp"

#include "json.hpp"

namespace heisen {

// Constant term: 1/2 - <h1/N> when N does not divide h1 but divides h2,
// 1/2 - <h2/N> in the mirrored case, 0 otherwise.
Rational c0(const LatticeContext& ctx, CosetIndex h);

// c_h(m/N) = sum of sgn(x1) over {X in L+h : x1 x2 = m}, m > 0. Exact.
long long c_coeff(const LatticeContext& ctx, CosetIndex h, long long m);

// Exact-log skeleton sum q_i log p_i over primes p_i.
struct LogSkeleton {
    std::vector<std::pair<long long, Rational>> terms;  // (prime, coefficient), primes ascending
    double value() const;
    bool empty() const { return terms.empty(); }
};

struct CTilde {
    double value = 0.0;
    LogSkeleton skeleton;
};

// c~_h(m/N) = sum of sgn(x1) log|x1/x2| over {X in L+h : x1 x2 = -m}, m > 0.
CTilde c_tilde(const LatticeContext& ctx, CosetIndex h, long long m);

// Constant term of the holomorphic part:
// c_h(0) (log(pi N) - Gamma'(1/2)/Gamma(1/2)) - log Gamma(<h1/N>) + log Gamma(<-h1/N>)
// in the case N | h2 (h2-indexed in the mirrored case, 0 otherwise). The
// second Gamma argument is <-h1/N>, the (0,1]-representative of -h1/N, which
// is what the Hurwitz-zeta derivation of the constant term produces.
double c_tilde0(const LatticeContext& ctx, CosetIndex h);

// Coefficient table of the holomorphic series: m -> c_h(m/N), exact, stored
// on the support congruence m = h1 h2 (mod N), 0 <= m <= m_max.
struct QExpansion {
    int level = 1;
    CosetIndex h;
    long long m_max = 0;
    std::map<long long, Rational> coeffs;
    bool operator==(const QExpansion&) const = default;
};

// Coefficient tables of the harmonic series: holomorphic part (support
// m = -h1 h2 mod N), the log v coefficient (= c_h(0)) and the
// non-holomorphic part carrying Gamma(0, 4 pi v n) weights (= c_h(n)).
struct HarmonicExpansion {
    int level = 1;
    CosetIndex h;
    long long m_max = 0;
    std::map<long long, CTilde> hol;
    Rational log_v_coeff;
    std::map<long long, Rational> nonhol;
};

QExpansion q_expansion(const LatticeContext& ctx, CosetIndex h, long long m_max);
HarmonicExpansion harmonic_expansion(const LatticeContext& ctx, CosetIndex h, long long m_max);

struct EvalResult {
    std::complex<double> value{};
    double tail_bound = 0.0;
};

// sum c_h(m) e(m tau / N) with a certified geometric tail bound.
EvalResult eval_vartheta(const QExpansion& exp, ModularPoint tau);

// holomorphic part + c_h(0) log v - sum c_h(m) Gamma(0, 4 pi v m/N) e(-m tau/N),
// tails certified via Gamma(0,x) < e^{-x}/x and divisor-count bounds.
EvalResult eval_vartheta_tilde(const HarmonicExpansion& exp, ModularPoint tau);

// Coefficient-level xi-image: log v coefficient -> constant term, the
// Gamma(0,.)-weighted table -> positive coefficients, holomorphic part -> 0.
QExpansion xi_expansion(const HarmonicExpansion& exp);

// Smallest m_max whose evaluation tails at height v are certified below tol.
long long adapt_m_max(const LatticeContext& ctx, double v, double tol);

// Serialization. Rationals are emitted as integer num/den pairs, skeleton
// entries as [prime, num, den] triples.
nlohmann::json coefficient_table_json(const LatticeContext& ctx, CosetIndex h, long long m_max);
std::pair<QExpansion, HarmonicExpansion> parse_coefficient_table(const nlohmann::json& j);
std::string coefficient_table_csv(const LatticeContext& ctx, CosetIndex h, long long m_max);

}  // namespace heisen
