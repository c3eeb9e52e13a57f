#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "heisen/verify.hpp"

using namespace heisen;

TEST_CASE("report invariant: passed iff residual <= tolerance") {
    const VerificationReport a = make_report("x", {}, 1e-9, 1e-8);
    CHECK(a.passed);
    const VerificationReport b = make_report("x", {}, 1e-7, 1e-8);
    CHECK(!b.passed);
}

TEST_CASE("weil relations report") {
    for (int n : {1, 5, 12}) CHECK(check_weil_relations(LatticeContext(n), 1e-12).passed);
}

TEST_CASE("residue-multiplicity averaging identity, exactly, N <= 12") {
    for (int n = 1; n <= 12; ++n) {
        const LatticeContext ctx(n);
        for (CosetIndex h : all_cosets(ctx)) {
            std::complex<double> acc = 0.0;
            for (CosetIndex d : all_cosets(ctx))
                acc += e2pi(bilinear(ctx, {d.h1, d.h2}, {h.h1, h.h2}).to_double()) *
                       static_cast<double>(c_minus1(ctx, d));
            CHECK(std::abs(acc / static_cast<double>(n) -
                           static_cast<double>(c_minus1(ctx, h))) < 1e-11);
        }
    }
}

TEST_CASE("kernel modularity checks") {
    const LatticeContext one(1);
    CHECK(check_theta_modularity(one, {0.0, 1.0}, 1.0, 1e-8).passed);
    const LatticeContext two(2);
    CHECK(check_theta_modularity(two, {0.0, 1.0}, 1.0, 1e-9).passed);
    const LatticeContext three(3);
    CHECK(check_theta_modularity(three, {0.5, 1.5}, 2.0, 1e-8).passed);
    CHECK(check_theta_tilde_modularity(three, {0.0, 1.0}, 1.0, 0.1, 1e-7).passed);
}

TEST_CASE("xi checks") {
    const LatticeContext ctx(3);
    CHECK(check_xi_kernel(ctx, {0.0, 1.0}, 1.0, 1e-6).passed);
    CHECK(check_xi_series(ctx, {0.0, 1.0}, 1e-6).passed);
    const LatticeContext one(1);
    CHECK(check_xi_kernel(one, {0.0, 1.0}, 1.0, 1e-9).passed);
}

TEST_CASE("series modularity checks") {
    for (int n : {1, 2, 3, 4}) {
        const LatticeContext ctx(n);
        CHECK(check_vartheta_modularity(ctx, {0.0, 1.0}, 1e-8).passed);
    }
    const LatticeContext three(3);
    CHECK(check_vartheta_modularity(three, {0.0, 2.0}, 1e-6).passed);
}

TEST_CASE("proof integrals") {
    for (const VerificationReport& r : check_proof_integrals(1e-8)) {
        INFO(r.check_name, ": ", r.residual);
        CHECK(r.passed);
    }
}

TEST_CASE("adjudications") {
    const LatticeContext ctx(3);
    const VerificationReport s = adjudicate_tilde_sign(ctx, {0.0, 1.0}, 1.0, 1e-6);
    CHECK(s.passed);
    CHECK(s.notes.find("selected minus") != std::string::npos);
    const VerificationReport d = adjudicate_d_scaling({0.0, 1.0}, 1e-5);
    CHECK(d.passed);
    CHECK(d.notes.find("sqrt(-pi i tau)") != std::string::npos);
}

TEST_CASE("finite-difference residuals shrink at second order") {
    const LatticeContext ctx(3);
    const HarmonicExpansion he = harmonic_expansion(ctx, {1, 0}, 80);
    const QExpansion q = q_expansion(ctx, {1, 0}, 80);
    const ModularPoint tau{0.3, 1.2};
    auto f = [&](ModularPoint z) { return eval_vartheta_tilde(he, z).value; };
    const std::complex<double> truth = eval_vartheta(q, tau).value;
    const double steps[3] = {4e-2, 2e-2, 1e-2};
    double resid[3];
    for (int i = 0; i < 3; ++i)
        resid[i] = std::abs(xi_numeric(f, 1.0, tau, steps[i]) - truth);
    const double slope =
        std::log(resid[0] / resid[2]) / std::log(steps[0] / steps[2]);
    CHECK(slope >= 1.9);
}

TEST_CASE("constant-term oracle at a short grid") {
    const LatticeContext ctx(3);
    const VerificationReport r = check_constant_term(ctx, {1, 0}, {0.0, 10.0}, 1e-5);
    INFO(r.notes);
    CHECK(r.passed);
    CHECK_THROWS_AS(
        constant_term_oracle(ctx, {1, 0}, {0.5, 10.0}, default_s_grid(), OracleSide::harmonic),
        std::invalid_argument);
}

TEST_CASE("suite runner and serialization") {
    SuiteOptions opt;
    opt.level = 2;
    opt.suite = "weil";
    const auto reports = run_suite(opt);
    CHECK(!reports.empty());
    CHECK(all_passed(reports));
    const std::string table = report_table(reports);
    CHECK(table.find("weil-relations") != std::string::npos);
    const std::string jsonl = report_jsonl(reports);
    const nlohmann::json first = nlohmann::json::parse(jsonl.substr(0, jsonl.find('\n')));
    CHECK(first.at("passed").get<bool>());
    // reproducibility: identical inputs give identical reports
    const auto again = run_suite(opt);
    CHECK(report_jsonl(again) == jsonl);
}
