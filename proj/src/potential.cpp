#include "sibuya/potential.hpp"

#include <cmath>
#include <numbers>

#include "sibuya/series.hpp"

namespace sibuya {

Potential Potential::make(int m, std::vector<cplx> coeffs) {
    if (m < 1) throw input_error("Potential: degree m must be >= 1");
    if (static_cast<int>(coeffs.size()) != m)
        throw input_error("Potential: expected exactly m coefficients");
    Potential p;
    p.m = m;
    p.coeffs = std::move(coeffs);
    p.real_flag = true;
    for (const cplx& c : p.coeffs)
        if (c.imag() != 0.0) p.real_flag = false;
    return p;
}

Potential Potential::make_real(int m, const std::vector<double>& coeffs) {
    std::vector<cplx> c(coeffs.begin(), coeffs.end());
    return make(m, std::move(c));
}

cplx Potential::eval_w(cplx x) const {
    cplx v{1.0};
    for (const cplx& c : coeffs) v = v * x + c;
    return v;
}

cplx Potential::eval_w_prime(cplx x) const {
    cplx v{0.0};
    for (int j = 0; j < m; ++j) {
        const cplx cj = j == 0 ? cplx{1.0} : coeffs[j - 1];
        v = v * x + static_cast<double>(m - j) * cj;
    }
    return v;
}

cplx Potential::eval_w_second(cplx x) const {
    cplx v{0.0};
    for (int j = 0; j + 1 < m; ++j) {
        const cplx cj = j == 0 ? cplx{1.0} : coeffs[j - 1];
        v = v * x + static_cast<double>((m - j) * (m - j - 1)) * cj;
    }
    return v;
}

cplx Potential::omega() const {
    const double t = 2.0 * std::numbers::pi / (m + 2);
    return {std::cos(t), std::sin(t)};
}

cplx Potential::omega_pow(cplx z) const {
    const cplx i2pi{0.0, 2.0 * std::numbers::pi};
    return std::exp(z * i2pi / static_cast<double>(m + 2));
}

Potential Potential::rotate(int k) const {
    Potential p = *this;
    for (int j = 0; j < m; ++j)
        p.coeffs[j] *= omega_pow(static_cast<double>(k * (j + 1)));
    p.real_flag = true;
    for (const cplx& c : p.coeffs)
        if (c.imag() != 0.0) p.real_flag = false;
    return p;
}

Potential Potential::with_last(cplx lambda) const {
    Potential p = *this;
    p.coeffs[m - 1] = lambda;
    p.real_flag = true;
    for (const cplx& c : p.coeffs)
        if (c.imag() != 0.0) p.real_flag = false;
    return p;
}

double Potential::coeff_scale() const {
    double s = 1.0;
    for (int k = 1; k <= m; ++k)
        s = std::max(s, std::pow(1.0 + std::abs(coeffs[k - 1]), 1.0 / k));
    return s;
}

std::vector<cplx> sqrt_series(const Potential& p, int K) {
    if (K < 1) throw input_error("sqrt_series: K must be >= 1");
    std::vector<cplx> B(K + 1, cplx{0.0});
    B[0] = 1.0;
    for (int k = 1; k <= p.m && k <= K; ++k) B[k] = p.coeffs[k - 1];
    std::vector<cplx> b = series::sqrt(B, K);
    return {b.begin() + 1, b.end()};  // drop b_0 = 1
}

AsymptoticFrame make_frame(const Potential& p, int K) {
    if (K <= 0) K = p.m + 16;
    AsymptoticFrame fr;
    fr.b = sqrt_series(p, K);
    fr.omega = p.omega();
    // Exponent of the k-th integrated term is (m + 2 - 2k)/2; keep the
    // strictly positive ones in S, route the k = m/2 + 1 term (even m) to
    // the log coefficient.
    for (int k = 0; k <= K; ++k) {
        const int half_num = p.m + 2 - 2 * k;
        if (half_num > 0) {
            const cplx bk = k == 0 ? cplx{1.0} : fr.b[k - 1];
            fr.s_terms.push_back({half_num, bk * 2.0 / static_cast<double>(half_num)});
            fr.k_principal = k;
        } else if (half_num == 0) {
            fr.log_coeff = fr.b[k - 1];
        }
    }
    fr.r_m = -0.25 * p.m - fr.log_coeff;
    return fr;
}

cplx principal_action(const Potential&, const AsymptoticFrame& frame, cplx x) {
    if (x == cplx{0.0}) throw input_error("principal_action: x = 0 is degenerate");
    const cplx lx = std::log(x);
    cplx s{0.0};
    for (const STerm& t : frame.s_terms)
        s += t.coeff * std::exp(0.5 * static_cast<double>(t.half_num) * lx);
    return s;
}

cplx exponent_rm(const Potential&, const AsymptoticFrame& frame) { return frame.r_m; }

}  // namespace sibuya
