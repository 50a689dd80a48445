#ifndef SIBUYA_TYPES_HPP
#define SIBUYA_TYPES_HPP

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace sibuya {

using cplx = std::complex<double>;

// Bad user input (wrong arity, malformed values). CLI maps this to exit 2.
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerical non-convergence (step exhaustion, radius loop failure, pinched
// contour). CLI maps this to exit 3.
struct numerics_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A certified property failed (e.g. a zero claimed simple has winding != 1).
struct verification_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Mantissa window for log-rescaled quantities: 2^-40 .. 2^40.
inline constexpr double kMantissaLo = 9.094947017729282e-13;
inline constexpr double kMantissaHi = 1.099511627776e12;

// A solution value/derivative pair with a complex logarithmic scale factor.
// The represented pair is (value, deriv) * exp(log_scale).
struct ScaledPair {
    cplx value{0.0};
    cplx deriv{0.0};
    cplx log_scale{0.0};

    // Shifts the scale so that max(|value|, |deriv|) lands near 1.
    void renormalize() {
        const double mag = std::max(std::abs(value), std::abs(deriv));
        if (mag >= kMantissaLo && mag <= kMantissaHi) return;
        if (mag == 0.0 || !std::isfinite(mag))
            throw numerics_error("ScaledPair: degenerate mantissa magnitude");
        const double shift = std::log(mag);
        const double f = 1.0 / mag;
        value *= f;
        deriv *= f;
        log_scale += shift;
    }

    cplx true_value() const { return value * std::exp(log_scale); }
    cplx true_deriv() const { return deriv * std::exp(log_scale); }
    cplx log_value() const { return std::log(value) + log_scale; }
    double log_abs_value() const { return std::log(std::abs(value)) + log_scale.real(); }
};

// A single complex number carried with a logarithmic scale.
struct ScaledComplex {
    cplx mantissa{0.0};
    cplx log_scale{0.0};

    cplx value() const { return mantissa * std::exp(log_scale); }
    cplx log() const { return std::log(mantissa) + log_scale; }
};

// u / v with scales subtracted; safe even when both carry huge exponents.
inline cplx scaled_ratio(const ScaledComplex& u, const ScaledComplex& v) {
    return u.mantissa / v.mantissa * std::exp(u.log_scale - v.log_scale);
}

// u - v, aligning scales to the larger one.
inline ScaledComplex scaled_sub(const ScaledComplex& u, const ScaledComplex& v) {
    const ScaledComplex* big = &u;
    const ScaledComplex* small = &v;
    double sign = 1.0;
    if (v.log_scale.real() + std::log(std::abs(v.mantissa) + 1e-300) >
        u.log_scale.real() + std::log(std::abs(u.mantissa) + 1e-300)) {
        big = &v;
        small = &u;
        sign = -1.0;
    }
    ScaledComplex r;
    r.log_scale = big->log_scale;
    r.mantissa = sign * (big->mantissa -
                         small->mantissa * std::exp(small->log_scale - big->log_scale));
    return r;
}

}  // namespace sibuya

#endif
