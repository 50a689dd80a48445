#ifndef SIBUYA_INTEGRATOR_HPP
#define SIBUYA_INTEGRATOR_HPP

#include <vector>

#include "sibuya/potential.hpp"
#include "sibuya/types.hpp"

namespace sibuya {

// Configuration of one inward ray integration.
struct RayConfig {
    double theta = 0.0;       // ray angle, must stay strictly inside Sigma_0
    double radius = 0.0;      // matching radius R; 0 selects the default
    double rel_tol = 1e-9;    // target relative accuracy of the origin data
    double abs_tol = 1e-14;   // absolute floor in the step error norm
    long max_steps = 4000000;
    bool adaptive_radius = true;
    long fixed_steps = 0;     // > 0 disables step control (convergence tests)

    void validate(const Potential& p) const;
};

double default_radius(const Potential& p, const RayConfig& cfg);

// Canonical-normalized WKB data at X = R e^{i theta}: first-order WKB
// amplitude, the exact series tail of the action, and the leading
// correction to the recessive solution. log_scale carries -S(R e^{i theta}).
ScaledPair wkb_seed(const Potential& p, const AsymptoticFrame& frame,
                    const RayConfig& cfg, double radius);

// Adaptive embedded Runge-Kutta integration of (Phi, Phi')' = (Phi', W Phi)
// from t = R to t = 0 along X = t e^{i theta}, renormalizing mantissas into
// range as they grow. Returns Phi(0), Phi'(0) (derivative in X).
ScaledPair integrate_ray(const Potential& p, const ScaledPair& seed,
                         const RayConfig& cfg, double radius);

// wkb_seed + integrate_ray, with the matching radius increased by factors of
// 1.6 until two successive origin outputs agree within rel_tol.
ScaledPair canonical_origin(const Potential& p, const RayConfig& cfg);

// f_0(a) = Phi_0(0, a) as a log-scaled value.
ScaledComplex f0_scaled(const Potential& p, const RayConfig& cfg);

// Green's transform data for the solution recessive along arg z = theta.
// Everything is reported in the rotated frame: the trajectory integrated is
// Phi_0 of rotate(p, -k) along theta_loc = theta - 2 pi k/(m+2), which is
// the sector-k recessive solution of p up to a unimodular prefactor that
// cancels from every quadratic quantity below.
struct GreenData {
    int k_sector = 0;
    double theta_loc = 0.0;
    Potential p_loc;              // rotated coefficients
    ScaledPair origin;            // w(0), w'(0), rotated frame
    double d_integral = 0.0;      // int |dw/dz|^2 dt   (units e^{2 Re s})
    std::vector<double> moments;  // int t^j |w|^2 dt, j = 0..m (same units)
    double residual = 0.0;        // relative Green identity residual
};

GreenData green_ray(const Potential& p, double theta, const RayConfig& cfg);

// Relative residual of the Green's transform identity on the ray.
double green_residual(const Potential& p, double theta, const RayConfig& cfg);

}  // namespace sibuya

#endif
