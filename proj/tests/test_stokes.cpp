#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sibuya/stokes.hpp"

using namespace sibuya;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("closed-form Stokes multiplier at a = 0") {
    // -iC(0) = 2 cos(pi/(m+2))
    RayConfig cfg;
    for (int m : {2, 3, 4}) {
        const Potential p =
            Potential::make_real(m, std::vector<double>(m, 0.0));
        const cplx c = stokes_c(p, cfg).c;
        const double want = 2.0 * std::cos(kPi / (m + 2));
        CHECK(std::abs(cplx{0.0, -1.0} * c - want) < 1e-8 * want);
    }
}

TEST_CASE("unit coefficient of Phi_1 in the connection formula") {
    RayConfig cfg;
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> u(-0.6, 0.6);
    for (int rep = 0; rep < 3; ++rep) {
        const Potential p =
            Potential::make_real(3, {u(rng), u(rng), u(rng)});
        CHECK(stokes_c(p, cfg).unit_coeff_residual < 1e-9);
    }
}

TEST_CASE("direct C agrees with the functional-relation route") {
    RayConfig cfg;
    const Potential p = Potential::make_real(3, {0.2, -0.4, 0.9});
    const cplx c1 = stokes_c(p, cfg).c;
    const cplx c2 = stokes_c_from_f0(p, cfg);
    CHECK(std::abs(c1 - c2) < 1e-7 * (1.0 + std::abs(c1)));
}

TEST_CASE("conjugation symmetry of C") {
    RayConfig cfg;
    const Potential p = Potential::make(
        3, {cplx{0.3, 0.2}, cplx{-0.1, 0.5}, cplx{0.4, -0.3}});
    const Potential pc = Potential::make(
        3, {cplx{0.3, -0.2}, cplx{-0.1, -0.5}, cplx{0.4, 0.3}});
    const cplx c1 = stokes_c(p, cfg).c;
    const cplx c2 = stokes_c(pc, cfg).c;
    CHECK(std::abs(std::conj(c1) + c2) < 1e-8 * (1.0 + std::abs(c1)));
}

TEST_CASE("Wronskian of adjacent sector solutions") {
    // Wr(Phi_k, Phi_{k+1}) = 2 (-1)^k omega^{km/2 - r_m(omega_{-k-1}(a))}
    RayConfig cfg;
    const Potential p = Potential::make_real(3, {0.25, -0.15, 0.35});
    for (int k : {-1, 0, 1}) {
        const ScaledComplex wr = wronskian(sector_origin(p, k, cfg),
                                           sector_origin(p, k + 1, cfg));
        const AsymptoticFrame fr = make_frame(p.rotate(-k - 1));
        const cplx want = 2.0 * (k % 2 == 0 ? 1.0 : -1.0) *
                          p.omega_pow(0.5 * k * p.m - fr.r_m);
        CHECK(std::abs(wr.value() - want) < 1e-7 * std::abs(want));
    }
}

TEST_CASE("cyclic multiplier carries the frame normalization") {
    // C_0(a) = omega^{-(m/2 + r_m)} C(a); the prefactor has unit modulus for
    // real coefficients.
    RayConfig cfg;
    const Potential p = Potential::make_real(3, {0.1, 0.2, 0.4});
    const AsymptoticFrame fr = make_frame(p);
    const cplx want =
        p.omega_pow(-(0.5 * p.m + fr.r_m)) * stokes_c(p, cfg).c;
    CHECK(std::abs(stokes_ck(p, 0, cfg) - want) < 1e-8 * (1.0 + std::abs(want)));
}
