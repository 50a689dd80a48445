#include "sibuya/stokes.hpp"


#include <cmath>
#include <numbers>

namespace sibuya {

namespace {

cplx log_omega_pow(const Potential& p, cplx z) {
    const cplx i2pi{0.0, 2.0 * std::numbers::pi};
    return z * i2pi / static_cast<double>(p.m + 2);
}

}  // namespace

ScaledComplex wronskian(const ScaledPair& u, const ScaledPair& v) {
    return {u.value * v.deriv - u.deriv * v.value, u.log_scale + v.log_scale};
}

ScaledPair companion_origin(const Potential& p, int k, const RayConfig& cfg) {
    if (k != 1 && k != -1) throw input_error("companion_origin: k must be +-1");
    const AsymptoticFrame frame = make_frame(p);
    const cplx exponent = static_cast<double>(-k) * (0.5 * p.m + frame.r_m);
    ScaledPair out = canonical_origin(p.rotate(-k), cfg);
    out.log_scale += log_omega_pow(p, exponent);
    out.deriv *= p.omega_pow(static_cast<double>(-k));
    return out;
}

ScaledPair sector_origin(const Potential& p, int k, const RayConfig& cfg) {
    ScaledPair out = canonical_origin(p.rotate(-k), cfg);
    out.deriv *= p.omega_pow(static_cast<double>(-k));
    return out;
}

ConnectionData stokes_c(const Potential& p, const RayConfig& cfg) {
    const ScaledPair phi0 = canonical_origin(p, cfg);
    const ScaledPair phi1 = companion_origin(p, 1, cfg);
    const ScaledPair phim1 = companion_origin(p, -1, cfg);

    const ScaledComplex w_m11 = wronskian(phim1, phi1);
    const ScaledComplex w_01 = wronskian(phi0, phi1);
    const ScaledComplex w_m10 = wronskian(phim1, phi0);
    const ScaledComplex w_10 = wronskian(phi1, phi0);

    if (w_01.mantissa == cplx{0.0})
        throw numerics_error("stokes_c: Wr(Phi_0, Phi_1) vanished");

    ConnectionData cd;
    cd.c = scaled_ratio(w_m11, w_01);
    cd.wr_01 = w_01.value();
    cd.wr_m11 = w_m11.value();
    cd.wr_m10 = w_m10.value();
    cd.unit_coeff_residual = std::abs(scaled_ratio(w_m10, w_10) - 1.0);
    cd.scale_audit = w_m11.log_scale - w_01.log_scale;
    if (cd.unit_coeff_residual > std::max(1e-4, 1e3 * cfg.rel_tol))
        throw numerics_error("stokes_c: unit-coefficient residual out of tolerance");
    return cd;
}

cplx stokes_c_from_f0(const Potential& p, const RayConfig& cfg) {
    const AsymptoticFrame frame = make_frame(p);
    const cplx exponent = 0.5 * p.m + frame.r_m;

    ScaledComplex plus = f0_scaled(p.rotate(1), cfg);
    plus.log_scale += log_omega_pow(p, exponent);
    ScaledComplex minus = f0_scaled(p.rotate(-1), cfg);
    minus.log_scale += log_omega_pow(p, -exponent);

    const ScaledComplex num = scaled_sub(plus, minus);
    const ScaledComplex den = f0_scaled(p, cfg);
    const double log_ratio = den.log().real() - num.log().real();
    if (log_ratio < std::log(1e-8))
        throw numerics_error("stokes_c_from_f0: f0 near zero; use Wronskian path");
    return scaled_ratio(num, den);
}

cplx stokes_ck(const Potential& p, int k, const RayConfig& cfg) {
    const Potential pr = p.rotate(k);
    const AsymptoticFrame frame = make_frame(pr);
    const ConnectionData cd = stokes_c(pr, cfg);
    return pr.omega_pow(-(0.5 * pr.m + frame.r_m)) * cd.c;
}

cplx c_tilde(const Potential& p, int k) {
    const AsymptoticFrame frame = make_frame(p.rotate(-k));
    return p.omega_pow(-static_cast<double>(p.m) - 2.0 * frame.r_m);
}

}  // namespace sibuya
