#ifndef SIBUYA_STOKES_HPP
#define SIBUYA_STOKES_HPP

#include "sibuya/integrator.hpp"
#include "sibuya/potential.hpp"
#include "sibuya/types.hpp"

namespace sibuya {

// Wr(u, v) = u v' - u' v with combined log scale; both pairs at the origin.
ScaledComplex wronskian(const ScaledPair& u, const ScaledPair& v);

// Renormalized companion solution Phi_{+-1} at the origin (Eq. with the
// omega^{-+(m/2+r_m)} prefactor folded into log_scale; derivative carries the
// chain-rule factor).
ScaledPair companion_origin(const Potential& p, int k, const RayConfig& cfg);

// Unnormalized sector solution Phi_k(0) = Phi_0(0, omega_{-k}(a)) with the
// chain-rule derivative factor omega^{-k}; used for the Wronskian lemma.
ScaledPair sector_origin(const Potential& p, int k, const RayConfig& cfg);

// One connection-formula evaluation Phi_{-1} = C Phi_0 + Phi_1.
struct ConnectionData {
    cplx c{0.0};                     // Stokes multiplier C(a)
    cplx wr_01{0.0};                 // Wr(Phi_0, Phi_1)
    cplx wr_m11{0.0};                // Wr(Phi_-1, Phi_1)
    cplx wr_m10{0.0};                // Wr(Phi_-1, Phi_0)
    double unit_coeff_residual = 0;  // |Wr(Phi_-1,Phi_0)/Wr(Phi_1,Phi_0) - 1|
    cplx scale_audit{0.0};           // net log-scale entering the ratio
};

ConnectionData stokes_c(const Potential& p, const RayConfig& cfg);

// C through the f_0 functional relation; errors out near zeros of f_0.
cplx stokes_c_from_f0(const Potential& p, const RayConfig& cfg);

// Unnormalized cyclic multiplier C_k(a) = C_0(omega_k(a)).
cplx stokes_ck(const Potential& p, int k, const RayConfig& cfg);

// Closed-form companion multiplier, never vanishing.
cplx c_tilde(const Potential& p, int k);

}  // namespace sibuya

#endif
