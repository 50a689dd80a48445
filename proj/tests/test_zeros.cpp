#include <doctest.h>

#include <cmath>

#include "sibuya/util.hpp"
#include "sibuya/zeros.hpp"

using namespace sibuya;

TEST_CASE("root refinement utility") {
    auto f = [](double x) { return x * x * x - 2.0; };
    const double r = refine_root(f, 1.0, 2.0, f(1.0), f(2.0), 1e-12);
    CHECK(std::abs(r - std::cbrt(2.0)) < 1e-10);
}

TEST_CASE("harmonic spectrum from the C scan") {
    // m = 2, a = (0): zeros of -iC at lambda = 2n + 1.
    const Potential p = Potential::make_real(2, {0.0, 0.0});
    RayConfig cfg;
    SearchWindow w;
    w.lo = 0.0;
    w.hi = 6.0;
    w.grid = 32;
    auto recs = scan_real_zeros(p, w, cfg);
    classify_zeros(recs, p, cfg, w.tol, true);
    REQUIRE(recs.size() == 3);
    const double want[] = {1.0, 3.0, 5.0};
    for (int i = 0; i < 3; ++i) {
        CHECK(std::abs(recs[i].lambda - want[i]) < 1e-7);
        CHECK(recs[i].winding == 1);
        CHECK(recs[i].is_simple);
        CHECK(recs[i].is_real);
    }
}

TEST_CASE("contour derivative matches finite differences") {
    const Potential p = Potential::make_real(2, {0.0, 0.0});
    RayConfig cfg;
    const cplx lam{0.5, 0.0};
    const cplx dc = derivative_c(p, lam, cfg);
    const double h = 1e-4;
    const cplx fd = (stokes_c(p.with_last(lam + h), cfg).c -
                     stokes_c(p.with_last(lam - h), cfg).c) /
                    (2.0 * h);
    CHECK(std::abs(dc - fd) < 1e-5 * (1.0 + std::abs(fd)));
}

TEST_CASE("argument-principle count over a window box") {
    const Potential p = Potential::make_real(2, {0.0, 0.0});
    RayConfig cfg;
    CHECK(winding_count(p, cplx{0.2, -1.0}, cplx{5.6, 1.0}, cfg) == 3);
    CHECK(winding_count(p, cplx{1.8, -0.5}, cplx{2.4, 0.5}, cfg) == 0);
    CHECK(winding_disc(p, cplx{3.0, 0.0}, 0.6, cfg) == 1);
}

TEST_CASE("search window validation") {
    SearchWindow w;
    w.lo = 1.0;
    w.hi = 0.0;
    CHECK_THROWS_AS(w.validate(), input_error);
    w.hi = 2.0;
    w.grid = 4;
    CHECK_THROWS_AS(w.validate(), input_error);
    w.grid = 32;
    w.tol = 0.0;
    CHECK_THROWS_AS(w.validate(), input_error);
}

TEST_CASE("scan rejects complex head coefficients") {
    const Potential p =
        Potential::make(2, {cplx{0.0, 0.3}, cplx{0.0, 0.0}});
    RayConfig cfg;
    SearchWindow w;
    w.lo = 0.0;
    w.hi = 2.0;
    CHECK_THROWS_AS(scan_real_zeros(p, w, cfg), input_error);
}

TEST_CASE("zeros of f_0 for the pure quadratic sit on the negative axis") {
    SearchWindow w;
    w.lo = -8.0;
    w.hi = -0.5;
    w.grid = 32;
    RayConfig cfg;
    const auto recs = f0_negative_zeros(2, w, cfg, 10.0, 20);
    REQUIRE(recs.size() >= 2);
    for (const auto& r : recs) {
        CHECK(r.lambda.real() < 0.0);
        CHECK(r.is_simple);
    }
    // Dirichlet half-line reduction: zeros at lambda = -(4n+3).
    CHECK(std::abs(recs.back().lambda + 3.0) < 1e-7);
}
