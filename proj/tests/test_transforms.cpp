#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "susyline/multiplets.hpp"
#include "susyline/transforms.hpp"

using namespace susyline;

namespace {
const double pi = std::numbers::pi;
HalfInt half(int p) { return HalfInt::halves(p); }
} // namespace

TEST_CASE("beta <-> p change of variables") {
    CHECK(beta_to_p(pi / 2, -0.5) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(beta_to_p(0.0, -0.5), std::domain_error);
    CHECK_THROWS_AS(beta_to_p(pi, -0.5), std::domain_error);
    CHECK_THROWS_AS(beta_to_p(1.0, 0.5), std::domain_error);

    std::mt19937 rng(3);
    std::uniform_real_distribution<double> lp(-2, 1);
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
        double p = std::pow(10.0, lp(rng));
        double back = beta_to_p(p_to_beta(p, -0.7), -0.7);
        worst = std::max(worst, std::abs(back - p) / p);
    }
    CHECK(worst < 1e-14);

    // far into the tangent pole the conditioning of beta itself dominates
    std::uniform_real_distribution<double> lw(-3, 3);
    double worst_wide = 0;
    for (int i = 0; i < 100; ++i) {
        double p = std::pow(10.0, lw(rng));
        double back = beta_to_p(p_to_beta(p, -0.7), -0.7);
        worst_wide = std::max(worst_wide, std::abs(back - p) / p);
    }
    CHECK(worst_wide < 1e-12);

    // strictly increasing in beta
    double prev = 0;
    for (double b = 0.1; b < pi - 0.05; b += 0.1) {
        double p = beta_to_p(b, -0.5);
        CHECK(p > prev);
        prev = p;
    }
}

TEST_CASE("momentum spinor samples") {
    Multiplet m = build_multiplet(half(1));
    MomentumSpinor ms = momentum_spinor(m.at(half(1)), half(1), 1.0);
    CHECK(ms.e_tilde == doctest::Approx(-0.5).epsilon(1e-15));

    // the grid midpoint is p = sqrt(-2 E~) = 1: beta = pi/2, alpha = 1,
    // F1(1) = Z1(pi/2) = 0.5
    size_t mid = ms.p.size() / 2;
    CHECK(ms.p[mid] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ms.f1[mid] == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(ms.phase_power_upper == 0);
    CHECK(ms.phase_power_lower == 3); // i^{-(jz+1/2)} = i^{-1} = i^3

    // decay at large p
    CHECK(std::abs(ms.f1.back()) < 1e-6);
    CHECK(std::abs(ms.f2.back()) < 1e-6);

    // zero state maps to the zero spinor
    MomentumSpinor z0 = momentum_spinor(SpinorState{half(1), {}, {}}, half(1), 1.0);
    for (double v : z0.f1) CHECK(v == 0.0);

    CHECK_THROWS_AS(momentum_spinor(m.at(half(1)), half(1), -1.0), std::invalid_argument);
}

TEST_CASE("coupled system residuals vanish on exact states") {
    for (int jt : {1, 3}) {
        Multiplet m = build_multiplet(half(jt));
        for (const SpinorState& z : m.states) {
            MomentumSpinor ms = momentum_spinor(z, m.j, 1.0);
            auto [r1, r2] = coupled_residual(ms, 1.0);
            CHECK(r1 < 1e-10);
            CHECK(r2 < 1e-10);
        }
    }
}

TEST_CASE("residual detects a perturbed component") {
    Multiplet m = build_multiplet(half(1));
    MomentumSpinor ms = momentum_spinor(m.at(half(1)), half(1), 1.0);
    for (double& v : ms.f2) v *= 1.01;
    auto [r1, r2] = coupled_residual(ms, 1.0);
    CHECK(r1 > 1e-3);
}

TEST_CASE("momentum-space normalizability") {
    Multiplet m = build_multiplet(half(3));
    for (const SpinorState& z : m.states) {
        TailScan scan = momentum_norm_scan(momentum_spinor(z, half(3), 1.0));
        CHECK(scan.converged);
        CHECK(scan.value > 0);
    }
}

TEST_CASE("bessel_j sanity") {
    CHECK(bessel_j(0, 0.0) == 1.0);
    CHECK(bessel_j(1, 0.0) == 0.0);
    CHECK(bessel_j(0, 1.0) == doctest::Approx(0.7651976865579666).epsilon(1e-14));
    CHECK(bessel_j(-1, 2.5) == doctest::Approx(-bessel_j(1, 2.5)).epsilon(1e-14));
    // half-order closed form: J_{1/2}(x) = sqrt(2/(pi x)) sin x
    for (double x : {1.5, 7.0, 40.0})
        CHECK(bessel_j(0.5, x) ==
              doctest::Approx(std::sqrt(2 / (pi * x)) * std::sin(x)).epsilon(1e-13));
}

TEST_CASE("hankel closed-form pair") {
    RadialFunction f = sample_radial([](double r) { return std::exp(-r); }, 1e-4, 1e3, 640);
    RadialFunction g = hankel(f, 0.0);
    long double num = 0, den = 0;
    for (size_t i = 0; i + 1 < g.x.size(); ++i) {
        double w = g.x[i] * (g.x[i + 1] - g.x[i]);
        double exact = std::pow(1.0 + g.x[i] * g.x[i], -1.5);
        num += w * (g.y[i] - exact) * (g.y[i] - exact);
        den += w * exact * exact;
    }
    CHECK(std::sqrt(double(num / den)) < 1e-6);
}

TEST_CASE("hankel roundtrip on decaying functions") {
    RadialFunction f1 =
        sample_radial([](double r) { return r * std::exp(-r * r); }, 1e-4, 1e3, 640);
    CHECK(hankel_roundtrip_error(f1, 1.0) < 1e-6);

    RadialFunction f0 = sample_radial([](double r) { return std::exp(-r); }, 1e-4, 1e3, 640);
    CHECK(hankel_roundtrip_error(f0, 0.0) < 1e-6);

    RadialFunction f2 =
        sample_radial([](double r) { return std::exp(-r * r); }, 1e-4, 1e3, 640);
    CHECK(hankel_roundtrip_error(f2, 2.0) < 1e-6);
}

TEST_CASE("hankel of zero is zero") {
    RadialFunction f = sample_radial([](double) { return 0.0; }, 1e-3, 1e2, 64);
    RadialFunction g = hankel(f, 0.0);
    for (double v : g.y) CHECK(v == 0.0);
}
