#include <doctest.h>

#include <cmath>

#include "cubic_oracle.hpp"
#include "sibuya/zeros.hpp"

using namespace sibuya;

TEST_CASE("diagonalization oracle reproduces the known cubic levels") {
    const auto ev = cubic_eigenvalues_oracle(5);
    REQUIRE(ev.size() == 5);
    // First digits published for p^2 + i x^3 (independent of this code base).
    const double known[] = {1.1562670, 4.1092288, 7.5622739, 11.3144218,
                            15.2915537};
    for (int i = 0; i < 5; ++i)
        CHECK(std::abs(ev[i] - known[i]) < 1e-6 * known[i]);
}

TEST_CASE("cubic C-scan matches the diagonalization oracle") {
    const auto ev = cubic_eigenvalues_oracle(3);
    const Potential p = Potential::make_real(3, {0.0, 0.0, 0.0});
    RayConfig cfg;
    SearchWindow w;
    w.lo = 0.2;
    w.hi = 9.0;
    w.grid = 32;
    const auto recs = scan_real_zeros(p, w, cfg);
    REQUIRE(recs.size() >= 3);
    for (int i = 0; i < 3; ++i)
        CHECK(std::abs(recs[i].lambda.real() - ev[i]) < 1e-6 * ev[i]);
}

TEST_CASE("oracle is stable under basis enlargement") {
    const auto a = cubic_eigenvalues_oracle(3, 170, 3.0);
    const auto b = cubic_eigenvalues_oracle(3, 230, 4.0);
    REQUIRE(a.size() == 3);
    REQUIRE(b.size() == 3);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(a[i] - b[i]) < 1e-7);
}
