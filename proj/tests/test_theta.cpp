#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "heisen/eisenstein.hpp"
#include "heisen/theta.hpp"

using namespace heisen;

namespace {
const ModularPoint kTauI{0.0, 1.0};
const std::complex<double> kI{0.0, 1.0};
}  // namespace

TEST_CASE("iota is an isometry") {
    const LatticeContext two(2);
    const SplitPoint p = iota(two, 1.0, {1, 1});
    CHECK(p.x == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(p.y == doctest::Approx(0.0));
    const SplitPoint zero = iota(two, 0.7, {0, 0});
    CHECK(zero.x == 0.0);
    CHECK(zero.y == 0.0);

    std::mt19937 rng(0);
    std::uniform_int_distribution<long long> d(-15, 15);
    std::uniform_real_distribution<double> td(0.2, 5.0);
    for (int i = 0; i < 300; ++i) {
        const LatticeContext ctx(1 + i % 6);
        const LatticeVector x{d(rng), d(rng)};
        const double t = td(rng);
        const SplitPoint q = iota(ctx, t, x);
        CHECK(0.5 * (q.x * q.x - q.y * q.y) ==
              doctest::Approx(quad_form(ctx, x).to_double()).epsilon(1e-12));
    }
    CHECK_THROWS_AS(iota(two, 0.0, {1, 0}), std::invalid_argument);
}

TEST_CASE("c_minus1") {
    const LatticeContext ctx(3);
    CHECK(c_minus1(ctx, {0, 0}) == 2);
    CHECK(c_minus1(ctx, {1, 0}) == 1);
    CHECK(c_minus1(ctx, {1, 2}) == 0);
}

TEST_CASE("truncation radius behavior") {
    const LatticeContext ctx(3);
    const double r1 = truncation_radius(ctx, 1.0, 1.0, 1e-8);
    const double r2 = truncation_radius(ctx, 1.0, 1.0, 5e-9);
    CHECK(r2 >= r1);
    const double r3 = truncation_radius(ctx, 4.0, 1.0, 1e-8);
    CHECK(r3 < r1);
    CHECK_THROWS_AS(truncation_radius(ctx, 1.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("holomorphic kernel") {
    SUBCASE("level one vanishes identically") {
        const LatticeContext one(1);
        for (double t : {0.5, 1.0, 2.3})
            for (ModularPoint tau : {ModularPoint{0.0, 1.0}, ModularPoint{0.7, 0.6}})
                CHECK(std::abs(theta_h(one, {0, 0}, tau, t, 1e-12).value) < 1e-12);
    }
    SUBCASE("fixture and tolerance-doubling stability") {
        const LatticeContext ctx(3);
        const ComponentValue v = theta_h(ctx, {1, 0}, kTauI, 1.0, 1e-12);
        CHECK(v.value.real() == doctest::Approx(0.18512304639453422).epsilon(1e-12));
        CHECK(std::abs(v.value.imag()) < 1e-15);
        CHECK(v.tail_bound < 1e-12);
        const ComponentValue w = theta_h(ctx, {1, 0}, kTauI, 1.0, 1e-15);
        CHECK(std::abs(v.value - w.value) < 1e-12);
    }
    SUBCASE("negating the coset negates the component") {
        const LatticeContext ctx(4);
        for (CosetIndex h : all_cosets(ctx)) {
            const ModularPoint tau{0.0, 0.8};
            const std::complex<double> a = theta_h(ctx, h, tau, 1.3, 1e-12).value;
            const std::complex<double> b =
                theta_h(ctx, negate(ctx, h), tau, 1.3, 1e-12).value;
            CHECK(std::abs(a + b) < 1e-11);
        }
    }
}

TEST_CASE("shifted series") {
    const LatticeContext ctx(3);
    SUBCASE("terms with vanishing frame coordinate drop") {
        // at t = 1, X = (1,-1) has x-part 0; the sum is insensitive to it
        const ComponentValue v = theta_star_h(ctx, {1, 2}, kTauI, 1.0, ShiftPair{}, 1e-12);
        CHECK(std::isfinite(v.value.real()));
    }
    SUBCASE("fixture") {
        const ComponentValue v = theta_star_h(ctx, {1, 0}, kTauI, 1.0, ShiftPair{}, 1e-12);
        CHECK(v.value.real() == doctest::Approx(0.14403852793266389).epsilon(1e-10));
        const ComponentValue w = theta_star_h(ctx, {1, 0}, kTauI, 1.0, ShiftPair{}, 1e-15);
        CHECK(std::abs(v.value - w.value) < 1e-10);
    }
    SUBCASE("positive limit at the trivial coset jumps by one") {
        const std::complex<double> base =
            theta_star_h(ctx, {0, 0}, kTauI, 1.0, ShiftPair{}, 1e-13).value;
        double prev = 1.0;
        for (double eps : {1e-3, 1e-4}) {
            const std::complex<double> v =
                theta_star_h(ctx, {0, 0}, kTauI, 1.0, ShiftPair{eps, eps}, 1e-13).value;
            const double dev = std::abs(v - base - 1.0);
            CHECK(dev < 3.0 * eps);
            CHECK(dev < prev);
            prev = dev;
        }
    }
    SUBCASE("shift validation") {
        CHECK_THROWS_AS(ShiftPair(0.5, 0.0), std::domain_error);
        CHECK_THROWS_AS(ShiftPair(0.0, -0.5), std::domain_error);
    }
}

TEST_CASE("cone series") {
    const LatticeContext ctx(3);
    SUBCASE("no ray families for generic cosets") {
        // both residues nonzero: shift window imposes no constraint
        const ComponentValue a =
            theta_plus_h(ctx, {1, 2}, kTauI, 1.0, ShiftPair{0.45, 0.0}, 1e-12);
        CHECK(std::isfinite(a.value.real()));
    }
    SUBCASE("window enforced when rays are present") {
        // window at t = 1/2 and t = 2 is 1/5
        CHECK_THROWS_AS(theta_plus_h(ctx, {0, 1}, kTauI, 0.5, ShiftPair{0.3, 0.0}, 1e-12),
                        std::domain_error);
        CHECK_THROWS_AS(theta_plus_h(ctx, {0, 1}, kTauI, 2.0, ShiftPair{0.3, 0.0}, 1e-12),
                        std::domain_error);
    }
    SUBCASE("geometric closed form against direct partial summation") {
        const ShiftPair sh{1e-2, -1e-2};
        const ComponentValue v = theta_plus_h(ctx, {0, 1}, kTauI, 1.0, sh, 1e-12);
        // direct evaluation: anisotropic terms + the ray sum over (0, n2), n2 <= -1
        std::complex<double> rays = 0.0;
        for (long long n2 = -2; n2 >= -1502; n2 -= 3) {
            const double y1 = sh.eps, y2 = static_cast<double>(n2) + sh.eps;
            rays += sgn(y1 + y2) * e2pi(-y1 * y2 * kTauI.tau() / 3.0) *
                    e2pi(sh.eps_prime * (y1 + y2) / 3.0);
        }
        const ComponentValue aniso = theta_plus_h(ctx, {1, 1}, kTauI, 1.0, sh, 1e-12);
        (void)aniso;
        // anisotropic part of (0,1): recompute by brute force over the box
        std::complex<double> brute = rays;
        for (long long n1 = -60; n1 <= 60; ++n1)
            for (long long n2 = -60; n2 <= 60; ++n2) {
                if (mod_reduce(n1, 3) != 0 || mod_reduce(n2, 3) != 1) continue;
                if (n1 * n2 > -1) continue;
                const double y1 = n1 + sh.eps, y2 = n2 + sh.eps;
                brute += sgn(y1 + y2) * e2pi(-y1 * y2 * kTauI.tau() / 3.0) *
                         e2pi(sh.eps_prime * (y1 + y2) / 3.0);
            }
        CHECK(std::abs(v.value - brute) < 1e-10);
    }
    SUBCASE("anisotropic fixture at the zero shift") {
        const ComponentValue v = theta_plus_h(ctx, {1, 0}, kTauI, 1.0, ShiftPair{}, 1e-12);
        CHECK(v.value.real() == doctest::Approx(-0.0018674492320039906).epsilon(1e-10));
        const ComponentValue w = theta_plus_h(ctx, {1, 0}, kTauI, 1.0, ShiftPair{}, 1e-15);
        CHECK(std::abs(v.value - w.value) < 1e-11);
    }
}

TEST_CASE("completed kernel") {
    const LatticeContext ctx(3);
    SUBCASE("pole-subtracted limit with linear rate") {
        for (CosetIndex h : {CosetIndex{1, 0}, CosetIndex{0, 0}, CosetIndex{1, 2}}) {
            const std::complex<double> target = theta_tilde_h(ctx, h, kTauI, 1.0, 1e-13).value;
            for (double sign : {1.0, -1.0}) {
                double prev = 1e9;
                for (double eps : {1e-2, 5e-3, 2.5e-3}) {
                    const std::complex<double> v =
                        theta_tilde_eps_h(ctx, h, kTauI, 1.0, ShiftPair{eps, sign * eps}, 1e-13)
                            .value;
                    const std::complex<double> pole =
                        static_cast<double>(c_minus1(ctx, h)) /
                        (2.0 * kPi * kI * (kTauI.tau() - sign) * eps);
                    const double dev = std::abs(v - pole - target);
                    CHECK(dev < 0.6 * prev);  // empirical order >= 0.9 per halving
                    prev = dev;
                }
            }
        }
    }
    SUBCASE("residue count at level one") {
        const LatticeContext one(1);
        CHECK(c_minus1(one, {0, 0}) == 2);
    }
    SUBCASE("bounded in t at fixed tau") {
        double sup = 0.0;
        for (double t = 0.1; t <= 10.0; t *= 1.3)
            sup = std::max(sup,
                           std::abs(theta_tilde_h(ctx, {1, 0}, kTauI, t, 1e-10).value));
        CHECK(sup < 10.0);
    }
    SUBCASE("kernel relation: regularized series = cone - shifted") {
        const ShiftPair sh{0.05, 0.02};
        for (CosetIndex h : all_cosets(ctx)) {
            const std::complex<double> lhs =
                theta_tilde_eps_h(ctx, h, kTauI, 1.0, sh, 1e-12).value;
            const std::complex<double> rhs =
                theta_plus_h(ctx, h, kTauI, 1.0, sh, 1e-12).value -
                theta_star_h(ctx, h, kTauI, 1.0, sh, 1e-12).value;
            CHECK(std::abs(lhs - rhs) < 1e-12);
        }
    }
    SUBCASE("negated-shift symmetry against the negated coset") {
        const ShiftPair sh{0.07, 0.03}, neg{-0.07, -0.03};
        for (CosetIndex h : all_cosets(ctx)) {
            const std::complex<double> a =
                theta_tilde_eps_h(ctx, h, kTauI, 1.0, neg, 1e-12).value;
            const std::complex<double> b =
                theta_tilde_eps_h(ctx, negate(ctx, h), kTauI, 1.0, sh, 1e-12).value;
            CHECK(std::abs(a + b) < 1e-11);
        }
    }
}

TEST_CASE("vector-valued wrappers") {
    const LatticeContext ctx(2);
    const KernelValue kv = theta_vector(ctx, kTauI, 1.0, 1e-10);
    CHECK(kv.components.comp.size() == 4);
    CHECK(kv.truncation_bound < 1e-10);
    const KernelValue tv = theta_tilde_vector(ctx, kTauI, 1.0, 1e-10);
    CHECK(tv.components.comp.size() == 4);
}
