#ifndef SIBUYA_POTENTIAL_HPP
#define SIBUYA_POTENTIAL_HPP

#include <vector>

#include "sibuya/types.hpp"

namespace sibuya {

// Monic polynomial potential W(X) = X^m + a_1 X^{m-1} + ... + a_m.
// a_m doubles as the spectral parameter lambda.
struct Potential {
    int m = 1;
    std::vector<cplx> coeffs;  // a_1 .. a_m
    bool real_flag = true;

    static Potential make(int m, std::vector<cplx> coeffs);
    static Potential make_real(int m, const std::vector<double>& coeffs);

    cplx eval_w(cplx x) const;
    cplx eval_w_prime(cplx x) const;
    cplx eval_w_second(cplx x) const;

    cplx omega() const;                    // e^{2 pi i/(m+2)}
    cplx omega_pow(cplx z) const;          // omega^z
    Potential rotate(int k) const;         // a -> omega_k(a)
    Potential with_last(cplx lambda) const;
    double coeff_scale() const;            // max_k (1+|a_k|)^{1/k}
};

// One term c * X^{half_num/2} of the principal action.
struct STerm {
    int half_num;  // exponent numerator over denominator 2, strictly positive
    cplx coeff;
};

// Series data of sqrt(W) at infinity and the induced asymptotic exponents.
struct AsymptoticFrame {
    std::vector<cplx> b;         // b_1 .. b_K (b_0 = 1 implicit)
    std::vector<STerm> s_terms;  // principal action, positive powers only
    cplx log_coeff{0.0};         // b_{1+m/2} for even m, 0 for odd m
    cplx r_m{0.0};
    cplx omega{0.0};
    int k_principal = 0;         // largest series index folded into s_terms
};

// First K coefficients b_1..b_K of sqrt(1 + a_1 u + ... + a_m u^m).
std::vector<cplx> sqrt_series(const Potential& p, int K);

AsymptoticFrame make_frame(const Potential& p, int K = 0);  // K = 0 -> m + 16

// S(x, a): principal branch continuous along rays |arg x| < pi.
cplx principal_action(const Potential& p, const AsymptoticFrame& frame, cplx x);

cplx exponent_rm(const Potential& p, const AsymptoticFrame& frame);

}  // namespace sibuya

#endif
