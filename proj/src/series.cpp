#include "sibuya/series.hpp"

namespace sibuya::series {

std::vector<cplx> mul(const std::vector<cplx>& x, const std::vector<cplx>& y, int K) {
    std::vector<cplx> r(K + 1, cplx{0.0});
    const int nx = static_cast<int>(x.size());
    const int ny = static_cast<int>(y.size());
    for (int i = 0; i < nx && i <= K; ++i) {
        if (x[i] == cplx{0.0}) continue;
        const int jmax = std::min(ny - 1, K - i);
        for (int j = 0; j <= jmax; ++j) r[i + j] += x[i] * y[j];
    }
    return r;
}

std::vector<cplx> div(const std::vector<cplx>& x, const std::vector<cplx>& y, int K) {
    std::vector<cplx> r(K + 1, cplx{0.0});
    const int nx = static_cast<int>(x.size());
    const int ny = static_cast<int>(y.size());
    for (int n = 0; n <= K; ++n) {
        cplx s = n < nx ? x[n] : cplx{0.0};
        for (int i = 1; i <= n && i < ny; ++i) s -= y[i] * r[n - i];
        r[n] = s / y[0];
    }
    return r;
}

std::vector<cplx> sqrt(const std::vector<cplx>& y, int K) {
    std::vector<cplx> r(K + 1, cplx{0.0});
    r[0] = 1.0;
    const int ny = static_cast<int>(y.size());
    for (int n = 1; n <= K; ++n) {
        cplx s = n < ny ? y[n] : cplx{0.0};
        for (int i = 1; i < n; ++i) s -= r[i] * r[n - i];
        r[n] = 0.5 * s;
    }
    return r;
}

}  // namespace sibuya::series
