#ifndef SIBUYA_ZEROS_HPP
#define SIBUYA_ZEROS_HPP

#include <functional>
#include <vector>

#include "sibuya/integrator.hpp"
#include "sibuya/potential.hpp"
#include "sibuya/stokes.hpp"
#include "sibuya/types.hpp"

namespace sibuya {

// One located zero of lambda -> C(a, lambda) (or of f_0).
struct ZeroRecord {
    cplx lambda{0.0};
    cplx c_deriv{0.0};      // d/dlambda at the zero (contour quadrature)
    int winding = 0;        // multiplicity from the argument principle
    bool is_real = false;
    bool is_simple = false;
    double residual = 0.0;  // scale-normalized |C| at the reported zero
    bool tangency = false;  // near-tangency candidate, not a sign change
};

struct SearchWindow {
    double lo = 0.0;
    double hi = 0.0;
    int grid = 64;
    double tol = 1e-9;
    // Optional rectangle for argument-principle counts.
    bool has_box = false;
    cplx box_lo{0.0};
    cplx box_hi{0.0};

    void validate() const;  // lo < hi, grid >= 16, tol > 0
};

// Any complex function evaluated in log-scaled form, e.g. lambda -> C or f_0.
using LogFn = std::function<ScaledComplex(cplx)>;

// lambda -> C(a_1..a_{m-1}, lambda); p supplies the head coefficients, its
// last slot is overwritten per call.
LogFn stokes_fn(const Potential& p, const RayConfig& cfg);

// lambda -> f_0(a_1..a_{m-1}, lambda).
LogFn f0_fn(const Potential& p, const RayConfig& cfg);

// Brackets sign changes of the real function lambda -> -iC on [w.lo, w.hi],
// refines each to w.tol, and flags near-tangencies (deep |.| minima without a
// sign change) as coalescence candidates. Coefficients must be real.
std::vector<ZeroRecord> scan_real_zeros(const Potential& p,
                                        const SearchWindow& w,
                                        const RayConfig& cfg);

// d/dlambda C at lambda via trapezoid Cauchy quadrature on n circle points;
// radius 0 selects 0.05 * (1 + |lambda|).
cplx derivative_c(const Potential& p, cplx lambda, const RayConfig& cfg,
                  double radius = 0.0, int n = 8);

// Same contour derivative for an arbitrary log-scaled function.
cplx contour_derivative(const LogFn& f, cplx center, double radius, int n = 8);

// f'(center)/f(center); stays finite-log even when |f| overflows a double.
cplx contour_log_derivative(const LogFn& f, cplx center, double radius,
                            int n = 8);

// Winding number of f along a positively oriented closed path, param over
// [0, 1). Adaptive subdivision keeps each phase increment below pi/2.
int winding_closed(const LogFn& f, const std::function<cplx(double)>& path,
                   int coarse = 32);

// Winding of C over the rectangle [lo, hi] (opposite corners) or a disc.
int winding_count(const Potential& p, cplx box_lo, cplx box_hi,
                  const RayConfig& cfg);
int winding_disc(const Potential& p, cplx center, double radius,
                 const RayConfig& cfg);

// Fills c_deriv / winding / is_real / is_simple on scan output. When
// enforce_positive_simple is set (hypothesis (H)+(s) holds) a non-real,
// non-positive, or non-simple zero raises verification_error.
void classify_zeros(std::vector<ZeroRecord>& records, const Potential& p,
                    const RayConfig& cfg, double tol = 1e-9,
                    bool enforce_positive_simple = false);

// Coefficient family alpha -> (a_1 .. a_{m-1}), real.
using CoefficientFamily = std::function<std::vector<double>(double)>;

struct CoalescenceEvent {
    double alpha = 0.0;
    double lambda = 0.0;
    double c_abs = 0.0;   // |C| at the event
    double dc_abs = 0.0;  // |dC/dlambda| at the event
    int winding = 0;      // disc count around the merged pair
};

struct SweepResult {
    std::vector<double> alphas;                  // descending grid
    std::vector<std::vector<ZeroRecord>> slices; // zeros per alpha
    std::vector<std::vector<int>> track_ids;     // continuation labels
    std::vector<CoalescenceEvent> events;
};

// Tracks real zeros of -iC across a descending alpha grid by nearest-neighbor
// continuation; a real count drop by 2 with a stable box winding triggers an
// alpha bisection for the double-zero location.
SweepResult sweep_family(int m, const CoefficientFamily& family,
                         double alpha_hi, double alpha_lo, int steps,
                         const SearchWindow& w, const RayConfig& cfg);

// Zeros of f_0 (a = 0) on a negative-axis window; also verifies f_0 > 0 on
// [0, pos_limit] samples and that a complex box count matches the real count.
std::vector<ZeroRecord> f0_negative_zeros(int m, const SearchWindow& w,
                                          const RayConfig& cfg,
                                          double pos_limit = 20.0,
                                          int pos_samples = 50);

}  // namespace sibuya

#endif
