#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sibuya/integrator.hpp"
#include "sibuya/potential.hpp"

using namespace sibuya;

namespace {

constexpr double kPi = std::numbers::pi;

double rel_diff(const ScaledPair& a, const ScaledPair& b) {
    const cplx ds = std::exp(a.log_scale - b.log_scale);
    return (std::abs(a.value * ds - b.value) +
            std::abs(a.deriv * ds - b.deriv)) /
           (std::abs(b.value) + std::abs(b.deriv));
}

}  // namespace

TEST_CASE("parabolic cylinder closed forms at the origin") {
    // W = x^2: f_0 = sqrt(pi)/Gamma(3/4), Phi'(0)/Phi(0) =
    // -2 Gamma(3/4)/Gamma(1/4).
    RayConfig cfg;
    const Potential p = Potential::make_real(2, {0.0, 0.0});
    const ScaledPair o = canonical_origin(p, cfg);
    const double f0 = std::abs(o.value * std::exp(o.log_scale));
    const double want = std::sqrt(kPi) / std::tgamma(0.75);
    CHECK(std::abs(f0 - want) < 1e-8 * want);
    const cplx ratio = o.deriv / o.value;
    const double want_ratio = -2.0 * std::tgamma(0.75) / std::tgamma(0.25);
    CHECK(std::abs(ratio - want_ratio) < 1e-8);
}

TEST_CASE("Bessel closed form of f_0 for pure powers") {
    // W = x^m: f_0 = Gamma(nu) (m+2)^{nu - 1/2} / sqrt(pi), nu = 1/(m+2),
    // and f_0' = Gamma(-nu) (m+2)^{-nu - 1/2} / sqrt(pi).
    RayConfig cfg;
    for (int m : {2, 3, 5}) {
        const Potential p =
            Potential::make_real(m, std::vector<double>(m, 0.0));
        const ScaledPair o = canonical_origin(p, cfg);
        const double nu = 1.0 / (m + 2);
        const double want_v =
            std::tgamma(nu) * std::pow(m + 2.0, nu - 0.5) / std::sqrt(kPi);
        const double want_d =
            std::tgamma(-nu) * std::pow(m + 2.0, -nu - 0.5) / std::sqrt(kPi);
        CHECK(std::abs(o.value * std::exp(o.log_scale) - want_v) <
              1e-7 * want_v);
        CHECK(std::abs(o.deriv * std::exp(o.log_scale) - want_d) <
              1e-7 * std::abs(want_d));
    }
}

TEST_CASE("conjugating the coefficients conjugates the origin data") {
    RayConfig cfg;
    const Potential p = Potential::make(
        3, {cplx{0.2, 0.3}, cplx{-0.1, -0.4}, cplx{0.5, 0.1}});
    const Potential pc = Potential::make(
        3, {cplx{0.2, -0.3}, cplx{-0.1, 0.4}, cplx{0.5, -0.1}});
    const ScaledPair a = canonical_origin(p, cfg);
    const ScaledPair b = canonical_origin(pc, cfg);
    const cplx va = a.value * std::exp(a.log_scale);
    const cplx vb = b.value * std::exp(b.log_scale);
    CHECK(std::abs(std::conj(va) - vb) < 1e-8 * std::abs(vb));
}

TEST_CASE("answer is independent of the matching radius") {
    const Potential p = Potential::make_real(3, {0.1, -0.2, 0.5});
    RayConfig c1, c2;
    c1.radius = 10.0;
    c2.radius = 14.0;
    const ScaledPair a = canonical_origin(p, c1);
    const ScaledPair b = canonical_origin(p, c2);
    CHECK(rel_diff(a, b) < 1e-7);
}

TEST_CASE("fixed-step integration converges at fifth order") {
    const Potential p = Potential::make_real(3, {0.0, 0.0, 1.0});
    RayConfig base;
    base.radius = 8.0;
    base.adaptive_radius = false;

    auto run = [&](long n) {
        RayConfig cfg = base;
        cfg.fixed_steps = n;
        return canonical_origin(p, cfg);
    };
    const ScaledPair ref = run(40000);
    const double e1 = rel_diff(run(800), ref);
    const double e2 = rel_diff(run(1600), ref);
    const double order = std::log2(e1 / e2);
    CHECK(order > 4.0);
    CHECK(order < 6.5);
}

TEST_CASE("ray angle outside the sector is rejected") {
    const Potential p = Potential::make_real(3, {0.0, 0.0, 0.0});
    RayConfig cfg;
    cfg.theta = 3.5 * kPi / 5.0;
    CHECK_THROWS_AS(canonical_origin(p, cfg), input_error);
    cfg.theta = 0.0;
    cfg.rel_tol = -1.0;
    CHECK_THROWS_AS(canonical_origin(p, cfg), input_error);
}

TEST_CASE("Green identity residual is small on admissible rays") {
    RayConfig cfg;
    const Potential p = Potential::make_real(3, {0.0, 0.0, 0.7});
    CHECK(green_residual(p, 0.0, cfg) < 1e-6);
    CHECK(green_residual(p, 2.0 * kPi / 5.0, cfg) < 1e-6);
}
