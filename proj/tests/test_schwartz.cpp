#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "heisen/quadrature.hpp"
#include "heisen/schwartz.hpp"

using namespace heisen;

namespace {
const ModularPoint kTauI{0.0, 1.0};

QuadConfig cone_cfg() {
    QuadConfig cfg;
    cfg.panel_width = 0.4;
    cfg.gl_order = 12;
    cfg.tol = 1e-5;
    cfg.damping = {0.16, 0.08, 0.04, 0.02, 0.01};
    cfg.rotated = true;
    return cfg;
}

QuadConfig gaussian_cfg(double v_eff) {
    QuadConfig cfg;
    cfg.radius = std::sqrt(42.0 / (kPi * v_eff)) + 2.5;
    cfg.panel_width = 0.4;
    cfg.gl_order = 12;
    cfg.tol = 1e-8;
    return cfg;
}
}  // namespace

TEST_CASE("phi examples") {
    CHECK(std::abs(phi(kTauI, {0.0, 3.7})) == 0.0);
    CHECK(std::abs(phi(kTauI, {1.0, 0.0}) - std::sqrt(2.0) * std::exp(-kPi)) < 1e-15);
    std::mt19937 rng(2);
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    for (int i = 0; i < 50; ++i) {
        const SplitPoint p{d(rng), d(rng)};
        const ModularPoint tau{0.3 * d(rng), 0.5 + std::abs(d(rng))};
        CHECK(std::abs(phi(tau, {-p.x, p.y}) + phi(tau, p)) < 1e-15);
    }
}

TEST_CASE("phi_star examples") {
    CHECK(std::abs(phi_star(kTauI, {0.0, 1.3})) == 0.0);
    // value at (1,0): e((0-1)/2 i) erfc(sqrt(2 pi)) = e^pi erfc(sqrt(2 pi))
    const double want = std::exp(kPi) * erfc_real(std::sqrt(kTwoPi));
    CHECK(phi_star(kTauI, {1.0, 0.0}).real() == doctest::Approx(want).epsilon(1e-13));
    CHECK(phi_star(kTauI, {1.0, 0.0}).imag() == doctest::Approx(0.0));
    // jump across x = 0 at y = 1: 2 e(y^2 tau / 2)
    const std::complex<double> jump =
        phi_star(kTauI, {1e-8, 1.0}) - phi_star(kTauI, {-1e-8, 1.0});
    CHECK(std::abs(jump - 2.0 * e2pi(0.5 * kTauI.tau())) < 1e-7);
}

TEST_CASE("phi_plus examples") {
    CHECK(std::abs(phi_plus(kTauI, {1.0, 1.0})) == 0.0);
    CHECK(std::abs(phi_plus(kTauI, {1.5, 0.2})) == 0.0);
    CHECK(std::abs(phi_plus(kTauI, {1.0, 2.0}) - std::exp(-3.0 * kPi)) < 1e-18);
    CHECK(std::abs(phi_plus(kTauI, {-1.0, 2.0}) + std::exp(-3.0 * kPi)) < 1e-18);
}

TEST_CASE("phi_tilde: vanishing, asymptotics, boundedness") {
    CHECK(std::abs(phi_tilde(kTauI, {0.0, 0.7})) == 0.0);
    // large v: erfc term dies inside the cone
    const ModularPoint high{0.0, 40.0};
    const SplitPoint p{0.5, 1.2};
    CHECK(std::abs(phi_tilde(high, p) - e2pi(0.5 * (p.y * p.y - p.x * p.x) * high.tau())) <
          1e-12);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> d(-6.0, 6.0);
    double sup = 0.0;
    for (int i = 0; i < 10000; ++i)
        sup = std::max(sup, std::abs(phi_tilde(kTauI, {d(rng), d(rng)})));
    CHECK(sup <= 1.0 + 1e-12);
}

TEST_CASE("xi_numeric") {
    SUBCASE("log v has weight-one xi image 1") {
        auto f = [](ModularPoint mp) { return std::complex<double>(std::log(mp.v), 0.0); };
        CHECK(std::abs(xi_numeric(f, 1.0, {0.3, 1.7}, 1e-4) - 1.0) < 1e-8);
    }
    SUBCASE("holomorphic functions are annihilated") {
        auto f = [](ModularPoint mp) { return e2pi(mp.tau()); };
        CHECK(std::abs(xi_numeric(f, 1.0, {0.2, 0.9}, 1e-4)) < 1e-8);
    }
    SUBCASE("xi(phi_tilde) = phi pointwise") {
        for (SplitPoint p : {SplitPoint{0.7, 1.3}, SplitPoint{1.4, 0.3}, SplitPoint{-0.8, 1.1}}) {
            auto f = [p](ModularPoint mp) { return phi_tilde(mp, p); };
            CHECK(std::abs(xi_numeric(f, 1.0, kTauI, 1e-4) - phi(kTauI, p)) < 1e-6);
        }
    }
    SUBCASE("xi(phi_star) = -phi pointwise at random samples") {
        std::mt19937 rng(4);
        std::uniform_real_distribution<double> d(-1.5, 1.5);
        for (int i = 0; i < 20; ++i) {
            const SplitPoint p{d(rng) + (d(rng) > 0 ? 0.2 : -0.2), d(rng)};
            const ModularPoint tau{0.4 * d(rng), 0.8 + 0.3 * std::abs(d(rng))};
            auto f = [p](ModularPoint mp) { return phi_star(mp, p); };
            CHECK(std::abs(xi_numeric(f, 1.0, tau, 1e-4) + phi(tau, p)) < 1e-6);
        }
    }
    SUBCASE("step guard") {
        auto f = [](ModularPoint mp) { return e2pi(mp.tau()); };
        CHECK_THROWS_AS(xi_numeric(f, 1.0, kTauI, 1e-7), std::invalid_argument);
    }
}

TEST_CASE("ft2d on the Gaussian pair") {
    QuadConfig cfg = gaussian_cfg(1.0);
    for (ModularPoint tau : {ModularPoint{0.0, 1.0}, ModularPoint{0.4, 1.3}}) {
        auto g = [&](SplitPoint q) {
            return e2pi(0.5 * tau.tau() * (q.x * q.x + q.y * q.y));
        };
        cfg.radius = std::sqrt(42.0 / (kPi * tau.v)) + 2.5;
        for (SplitPoint p : {SplitPoint{0.3, 0.7}, SplitPoint{-1.1, 0.4}}) {
            const Ft2dResult r = ft2d(g, p, cfg);
            const std::complex<double> want =
                1.0 / std::complex<double>(tau.v, -tau.u) *
                e2pi(-0.5 * (p.x * p.x + p.y * p.y) / tau.tau());
            CHECK(std::abs(r.value - want) < 1e-12);
            CHECK(r.converged);
        }
    }
}

TEST_CASE("ft2d linearity") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    QuadConfig cfg = gaussian_cfg(1.0);
    auto f1 = [](SplitPoint q) { return phi_star(kTauI, q); };
    auto f2 = [](SplitPoint q) { return e2pi(0.5 * kTauI.tau() * (q.x * q.x + q.y * q.y)); };
    for (int i = 0; i < 3; ++i) {
        const std::complex<double> a{d(rng), d(rng)}, b{d(rng), d(rng)};
        const SplitPoint p{d(rng), d(rng)};
        auto combo = [&](SplitPoint q) { return a * f1(q) + b * f2(q); };
        const std::complex<double> lhs = ft2d(combo, p, cfg).value;
        const std::complex<double> rhs =
            a * ft2d(f1, p, cfg).value + b * ft2d(f2, p, cfg).value;
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("transformation identities of the bounded functions") {
    SUBCASE("phi_tilde at tau+1 picks up e((y^2-x^2)/2)") {
        std::mt19937 rng(6);
        std::uniform_real_distribution<double> d(-2.0, 2.0);
        for (int i = 0; i < 200; ++i) {
            const SplitPoint p{d(rng), d(rng)};
            const ModularPoint tau{0.3, 1.1};
            const std::complex<double> lhs = phi_tilde({tau.u + 1.0, tau.v}, p);
            const std::complex<double> rhs =
                e2pi(0.5 * (p.y * p.y - p.x * p.x)) * phi_tilde(tau, p);
            CHECK(std::abs(lhs - rhs) < 1e-12);
        }
    }
    SUBCASE("Fourier transform of phi_tilde at -1/tau is tau times phi_tilde") {
        auto f = [](SplitPoint q) { return phi_tilde(kTauI, q); };  // -1/i = i
        QuadConfig cfg = cone_cfg();
        for (SplitPoint p : {SplitPoint{0.3, 1.1}, SplitPoint{1.3, 0.25}}) {
            const Ft2dResult r = ft2d(f, p, cfg);
            CHECK(std::abs(r.value - kTauI.tau() * phi_tilde(kTauI, p)) < 1e-5);
        }
    }
    SUBCASE("phi_star against its transform: the bounded cone function emerges") {
        QuadConfig cfg = gaussian_cfg(1.0);
        auto fstar = [](SplitPoint q) { return phi_star(kTauI, q); };
        for (SplitPoint p : {SplitPoint{0.7, 0.2}, SplitPoint{-0.45, 0.9}}) {
            const std::complex<double> target =
                phi_star(kTauI, p) - ft2d(fstar, p, cfg).value / kTauI.tau();
            CHECK(std::abs(target - d_function(kTauI, p)) < 1e-10);
            CHECK(std::abs(target - d_function(kTauI, p, DScaling::literal)) > 1e-2);
            CHECK(std::abs(target - d_function(kTauI, p, DScaling::gaussian_width)) > 1e-2);
        }
    }
}

TEST_CASE("d_function basics") {
    CHECK(std::abs(d_function(kTauI, {0.0, 1.0})) == 0.0);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> d(0.1, 2.0);
    for (int i = 0; i < 30; ++i) {
        const SplitPoint p{d(rng), d(rng) - 1.0};
        const ModularPoint tau{0.5 * (d(rng) - 1.0), d(rng)};
        CHECK(std::abs(d_function(tau, {-p.x, p.y}) + d_function(tau, p)) < 1e-14);
    }
    // continuity off x = 0 and the jump at x = 0
    const std::complex<double> jump =
        d_function(kTauI, {1e-9, 0.8}) - d_function(kTauI, {-1e-9, 0.8});
    CHECK(std::abs(jump - 2.0 * e2pi(0.5 * 0.64 * kTauI.tau())) < 1e-7);
}

TEST_CASE("ft_phi_plus") {
    SUBCASE("light cone excluded") {
        CHECK_THROWS_AS(ft_phi_plus(kTauI, 1.0, 0.0), std::domain_error);
        CHECK_THROWS_AS(ft_phi_plus(kTauI, 0.0, 0.7), std::domain_error);
    }
    SUBCASE("boundedness on a compact set off the cone") {
        for (double xr : {-1.4, -0.7, 0.5, 1.2})
            for (double yr : {-1.1, -0.4, 0.6, 1.3})
                CHECK(std::abs(ft_phi_plus(kTauI, xr, yr)) < 3.0);
    }
    SUBCASE("agreement with the two-dimensional quadrature path") {
        auto ftil = [](SplitPoint q) { return phi_tilde(kTauI, q); };
        auto fstar = [](SplitPoint q) { return phi_star(kTauI, q); };
        const QuadConfig ctil = cone_cfg();
        const QuadConfig cstar = gaussian_cfg(1.0);
        for (SplitPoint p : {SplitPoint{0.45, -1.35}, SplitPoint{-0.6, 1.4}}) {
            const std::complex<double> two_dim =
                ft2d(ftil, p, ctil).value + ft2d(fstar, p, cstar).value;
            const SplitPoint r = rotate_plus(p);
            CHECK(std::abs(two_dim - ft_phi_plus(kTauI, r.x, r.y)) < 1e-5);
        }
    }
}
