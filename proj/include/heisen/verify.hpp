#pragma once

#include <string>
#include <vector>

#include "heisen/eisenstein.hpp"
#include "heisen/theta.hpp"
#include "heisen/weil.hpp"

#include "json.hpp"

namespace heisen {

// One named numerical check; passed is true exactly when residual <= tolerance.
struct VerificationReport {
    std::string check_name;
    nlohmann::json inputs;
    double residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    std::string notes;
};

VerificationReport make_report(std::string name, nlohmann::json inputs, double residual,
                               double tolerance, std::string notes = "");

// rho(S)^4 = 1, (rho(S)rho(T))^3 = rho(S)^2, rho(S)^2 e_h = e_{-h}, unitarity,
// and the same for the dual realization.
VerificationReport check_weil_relations(const LatticeContext& ctx, double tol);

// T- and S-transformation residuals of the holomorphic kernel Theta(tau, t).
VerificationReport check_theta_modularity(const LatticeContext& ctx, ModularPoint tau, double t,
                                          double tol);

// Poisson-summation relation of the shifted series, the residue-multiplicity
// averaging identity, and the S-relation of the completed kernel.
VerificationReport check_theta_tilde_modularity(const LatticeContext& ctx, ModularPoint tau,
                                                double t, double eps, double tol);

// Finite-difference xi of the completed kernel against the holomorphic kernel.
VerificationReport check_xi_kernel(const LatticeContext& ctx, ModularPoint tau, double t,
                                   double tol);

// Finite-difference xi of the assembled harmonic series against the
// holomorphic series.
VerificationReport check_xi_series(const LatticeContext& ctx, ModularPoint tau, double tol);

// T- and S-residuals of both assembled series (holomorphic under rho, harmonic
// under the dual) with adaptive truncation on both sides.
VerificationReport check_vartheta_modularity(const LatticeContext& ctx, ModularPoint tau,
                                             double tol);

// Quadrature-versus-closed-form residuals for every integral identity the
// coefficient formulas rest on.
std::vector<VerificationReport> check_proof_integrals(double tol);

// Evaluates both sign conventions of the completed kernel against the xi- and
// S-relations and records the winner.
VerificationReport adjudicate_tilde_sign(const LatticeContext& ctx, ModularPoint tau, double t,
                                         double tol);

// Evaluates the three candidate erfc normalizations of the bounded cone
// function against phi_star - F(phi_star at -1/tau)/tau and records the winner.
VerificationReport adjudicate_d_scaling(ModularPoint tau, double tol);

enum class OracleSide { holomorphic, harmonic };

struct OracleResult {
    double value = 0.0;
    double fit_residual = 0.0;  // max deviation of the polynomial fit on the grid
};

// s-regularized t-integral of the kernel, computed term by term with adaptive
// quadrature (ray families through their Hurwitz-zeta model plus quadrature
// error terms), polynomial-extrapolated to s = 0. Requires tau on the
// imaginary axis, where the series are real.
OracleResult constant_term_oracle(const LatticeContext& ctx, CosetIndex h, ModularPoint tau,
                                  const std::vector<double>& s_grid, OracleSide side,
                                  TildeSign sign = kAdjudicatedTildeSign);

std::vector<double> default_s_grid();

// Oracle against the assembled expansions on both sides; also rejects the
// printed sign variant.
VerificationReport check_constant_term(const LatticeContext& ctx, CosetIndex h, ModularPoint tau,
                                       double tol);

struct SuiteOptions {
    int level = 3;
    unsigned seed = 0;
    std::string suite = "all";
};

std::vector<VerificationReport> run_suite(const SuiteOptions& opt);
std::vector<std::string> suite_names();

std::string report_table(const std::vector<VerificationReport>& reports);
std::string report_jsonl(const std::vector<VerificationReport>& reports);
bool all_passed(const std::vector<VerificationReport>& reports);

}  // namespace heisen
