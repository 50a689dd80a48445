#include "sibuya/integrator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <cstdio>
#include <cstdlib>

#include "sibuya/series.hpp"

namespace sibuya {

namespace {

constexpr double kPi = std::numbers::pi;

// log X on the ray t e^{i theta}; keeps half-integer powers on one branch.
inline cplx ray_log(double t, double theta) { return {std::log(t), theta}; }

// sqrt(W) continuous along the ray, anchored to the X^{m/2} asymptote.
cplx sqrt_w_ray(const Potential& p, double t, double theta) {
    const cplx lx = ray_log(t, theta);
    const cplx x = std::exp(lx);
    cplx bracket{1.0};
    cplx xu{1.0};
    for (int k = 0; k < p.m; ++k) {
        xu /= x;
        bracket += p.coeffs[k] * xu;
    }
    if (std::abs(bracket) < 0.09)
        throw numerics_error("sqrt_w_ray: turning point too close to the ray");
    return std::exp(0.5 * p.m * lx) * std::sqrt(bracket);
}

// Riccati correction data for the recessive solution: with phi'/phi =
// -sqrt(W) + v1 + v2 + v3, v1 = -W'/(4W), the next two orders are
// v2 = u^{2+m/2} c(u) and v3 = u^{3+m} g(u) in u = 1/X.
struct RiccatiSeries {
    std::vector<cplx> c;  // v2 coefficients
    std::vector<cplx> g;  // v3 coefficients
};

RiccatiSeries riccati_series(const Potential& p, int K) {
    std::vector<cplx> B(K + 1, cplx{0.0});
    B[0] = 1.0;
    for (int k = 1; k <= p.m && k <= K; ++k) B[k] = p.coeffs[k - 1];
    std::vector<cplx> Bp(K + 1, cplx{0.0}), Bpp(K + 1, cplx{0.0});
    for (int j = 0; j + 1 <= p.m && j <= K; ++j) Bp[j] = (j + 1.0) * B[j + 1];
    for (int j = 0; j + 2 <= p.m && j <= K; ++j) Bpp[j] = (j + 2.0) * (j + 1.0) * B[j + 2];
    const std::vector<cplx> BpB = series::div(Bp, B, K);
    const std::vector<cplx> BppB = series::div(Bpp, B, K);
    const double m = p.m;
    // (W'/W)/u = m - u B'/B
    std::vector<cplx> qu(K + 1, cplx{0.0});
    qu[0] = m;
    for (int j = 1; j <= K; ++j) qu[j] = -BpB[j - 1];
    // (W''/W)/u^2 = m(m-1) - (2m-2) u B'/B + u^2 B''/B
    std::vector<cplx> wppw(K + 1, cplx{0.0});
    wppw[0] = m * (m - 1.0);
    for (int j = 1; j <= K; ++j) wppw[j] = -(2.0 * m - 2.0) * BpB[j - 1];
    for (int j = 2; j <= K; ++j) wppw[j] += BppB[j - 2];
    // eta / u^2 = (5/16)(q/u)^2 - (1/4)(W''/W)/u^2
    std::vector<cplx> pser = series::mul(qu, qu, K);
    for (int j = 0; j <= K; ++j) pser[j] = (5.0 / 16.0) * pser[j] - 0.25 * wppw[j];
    // divide by 2 sqrt(B)
    std::vector<cplx> sq = series::sqrt(B, K);
    for (cplx& c : sq) c *= 2.0;
    RiccatiSeries out;
    out.c = series::div(pser, sq, K);
    // v3 = (v2' + 2 v1 v2)/(2 sqrt(W)) with v2' in X; in u-series form
    // g = -[(2+m/2) c + u c' + qu c / 2] / (2 sqrt(B)).
    const std::vector<cplx> quc = series::mul(qu, out.c, K);
    std::vector<cplx> pre(K + 1, cplx{0.0});
    for (int j = 0; j <= K; ++j)
        pre[j] = (2.0 + 0.5 * m + j) * out.c[j] + 0.5 * quc[j];
    out.g = series::div(pre, sq, K);
    for (cplx& v : out.g) v = -v;
    return out;
}

struct Quadrature {
    double d_integral = 0.0;
    std::vector<double> moments;  // j = 0..m
};

// Dormand-Prince 5(4) pair.
struct Dopri5 {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                            a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600,
                            e3 = 500.0 / 1113 - 7571.0 / 16695,
                            e4 = 125.0 / 192 - 393.0 / 640,
                            e5 = -2187.0 / 6784 + 92097.0 / 339200,
                            e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;
};

struct RayIntegrator {
    const Potential& p;
    double theta;
    cplx phase2;  // e^{2 i theta}
    Quadrature* quad = nullptr;

    explicit RayIntegrator(const Potential& pot, double th) : p(pot), theta(th) {
        phase2 = std::exp(cplx{0.0, 2.0 * th});
    }

    void rhs(double t, const cplx& y1, const cplx& y2, cplx& f1, cplx& f2) const {
        const cplx x = t * std::exp(cplx{0.0, theta});
        f1 = y2;
        f2 = phase2 * p.eval_w(x) * y1;
    }

    struct Stage {
        double t;
        cplx y1, y2;
    };

    // One RK step from t with size h (h < 0 inward). Returns the error
    // estimate and writes the 5th-order result. When `stages` is non-null the
    // six stage states are recorded for quadrature.
    double step(double t, double h, const cplx& y1, const cplx& y2, cplx& o1,
                cplx& o2, double abs_tol, double rel_tol,
                std::array<Stage, 6>* stages = nullptr) const {
        using D = Dopri5;
        cplx k1a, k1b, k2a, k2b, k3a, k3b, k4a, k4b, k5a, k5b, k6a, k6b, k7a, k7b;
        rhs(t, y1, y2, k1a, k1b);
        cplx u1 = y1 + h * D::a21 * k1a, u2 = y2 + h * D::a21 * k1b;
        rhs(t + D::c2 * h, u1, u2, k2a, k2b);
        u1 = y1 + h * (D::a31 * k1a + D::a32 * k2a);
        u2 = y2 + h * (D::a31 * k1b + D::a32 * k2b);
        rhs(t + D::c3 * h, u1, u2, k3a, k3b);
        if (stages) (*stages)[1] = {t + D::c3 * h, u1, u2};
        u1 = y1 + h * (D::a41 * k1a + D::a42 * k2a + D::a43 * k3a);
        u2 = y2 + h * (D::a41 * k1b + D::a42 * k2b + D::a43 * k3b);
        rhs(t + D::c4 * h, u1, u2, k4a, k4b);
        if (stages) (*stages)[2] = {t + D::c4 * h, u1, u2};
        u1 = y1 + h * (D::a51 * k1a + D::a52 * k2a + D::a53 * k3a + D::a54 * k4a);
        u2 = y2 + h * (D::a51 * k1b + D::a52 * k2b + D::a53 * k3b + D::a54 * k4b);
        rhs(t + D::c5 * h, u1, u2, k5a, k5b);
        if (stages) (*stages)[3] = {t + D::c5 * h, u1, u2};
        u1 = y1 + h * (D::a61 * k1a + D::a62 * k2a + D::a63 * k3a + D::a64 * k4a +
                       D::a65 * k5a);
        u2 = y2 + h * (D::a61 * k1b + D::a62 * k2b + D::a63 * k3b + D::a64 * k4b +
                       D::a65 * k5b);
        rhs(t + h, u1, u2, k6a, k6b);
        if (stages) {
            (*stages)[0] = {t, y1, y2};
            (*stages)[4] = {t + h, u1, u2};
        }
        o1 = y1 + h * (D::b1 * k1a + D::b3 * k3a + D::b4 * k4a + D::b5 * k5a +
                       D::b6 * k6a);
        o2 = y2 + h * (D::b1 * k1b + D::b3 * k3b + D::b4 * k4b + D::b5 * k5b +
                       D::b6 * k6b);
        rhs(t + h, o1, o2, k7a, k7b);
        if (stages) (*stages)[5] = {t + h, o1, o2};
        const cplx err1 = h * (D::e1 * k1a + D::e3 * k3a + D::e4 * k4a +
                               D::e5 * k5a + D::e6 * k6a + D::e7 * k7a);
        const cplx err2 = h * (D::e1 * k1b + D::e3 * k3b + D::e4 * k4b +
                               D::e5 * k5b + D::e6 * k6b + D::e7 * k7b);
        const double sc1 = abs_tol + rel_tol * std::max(std::abs(y1), std::abs(o1));
        const double sc2 = abs_tol + rel_tol * std::max(std::abs(y2), std::abs(o2));
        const double r1 = std::abs(err1) / sc1;
        const double r2 = std::abs(err2) / sc2;
        return std::sqrt(0.5 * (r1 * r1 + r2 * r2));
    }

    // Quadrature increment over an accepted step: the slaved integrands are
    // advanced with the same tableau, i.e. the b-weighted stage values, which
    // keeps fifth order for the augmented system.
    void accumulate(double h, const std::array<Stage, 6>& st) const {
        if (!quad) return;
        using D = Dopri5;
        // stage order in `st`: c1=0, c3, c4, c5, c6=1 (stage values), and the
        // 5th-order endpoint used for the FSAL slot. Stage 2 (c2) has weight 0.
        static constexpr std::array<double, 6> w = {D::b1, D::b3, D::b4,
                                                    D::b5, D::b6, 0.0};
        double dD = 0.0;
        const std::size_t nm = quad->moments.size();
        std::array<double, 16> dM{};
        for (int i = 0; i < 6; ++i) {
            if (w[i] == 0.0) continue;
            const double av1 = std::norm(st[i].y1);
            const double av2 = std::norm(st[i].y2);
            dD += w[i] * av2;
            double tp = 1.0;
            for (std::size_t j = 0; j < nm; ++j) {
                dM[j] += w[i] * tp * av1;
                tp *= st[i].t;
            }
        }
        quad->d_integral += h * dD;
        for (std::size_t j = 0; j < nm; ++j) quad->moments[j] += h * dM[j];
    }
};

ScaledPair run_ray(const Potential& p, const ScaledPair& seed, const RayConfig& cfg,
                   double radius, Quadrature* quad) {
    RayIntegrator integ(p, cfg.theta);
    integ.quad = quad;

    cplx y1 = seed.value;
    // state carries dPhi/dt = e^{i theta} * dPhi/dX
    const cplx phase = std::exp(cplx{0.0, cfg.theta});
    cplx y2 = phase * seed.deriv;
    cplx log_scale = seed.log_scale;

    const double rk_rel = std::clamp(cfg.rel_tol * 1e-3, 1e-13, 1e-8);
    double t = radius;
    double h;
    if (cfg.fixed_steps > 0) {
        h = -radius / static_cast<double>(cfg.fixed_steps);
    } else {
        h = -0.5 / (1.0 + std::abs(sqrt_w_ray(p, radius, cfg.theta)));
    }

    long steps = 0;
    while (t > 0.0) {
        if (++steps > cfg.max_steps) {
            if (std::getenv("SIBUYA_DEBUG"))
                std::fprintf(stderr, "exhaust t=%.17g h=%.3g |y1|=%.3g |y2|=%.3g\n",
                             t, h, std::abs(y1), std::abs(y2));
            throw numerics_error("integrate_ray: step budget exhausted");
        }
        if (t + h < 0.0) h = -t;
        cplx o1, o2;
        std::array<RayIntegrator::Stage, 6> stages;
        const double err = integ.step(t, h, y1, y2, o1, o2, cfg.abs_tol, rk_rel,
                                      quad ? &stages : nullptr);
        const bool accept = cfg.fixed_steps > 0 || err <= 1.0;
        if (steps > cfg.max_steps - 5 && std::getenv("SIBUYA_DEBUG"))
            std::fprintf(stderr, "  step t=%.17g h=%.3g err=%.6g acc=%d\n", t, h, err, (int)accept);
        if (accept) {
            integ.accumulate(h, stages);
            t += h;
            y1 = o1;
            y2 = o2;
            if (!std::isfinite(y1.real()) || !std::isfinite(y2.real()) ||
                !std::isfinite(y1.imag()) || !std::isfinite(y2.imag()))
                throw numerics_error("integrate_ray: non-finite state (bad radius?)");
            const double mag = std::max(std::abs(y1), std::abs(y2));
            if (mag < kMantissaLo || mag > kMantissaHi) {
                const double shift = std::log(mag);
                const double f = 1.0 / mag;
                y1 *= f;
                y2 *= f;
                log_scale += shift;
                if (quad) {
                    const double qf = f * f;
                    quad->d_integral *= qf;
                    for (double& mjv : quad->moments) mjv *= qf;
                }
            }
        }
        if (cfg.fixed_steps == 0) {
            const double fac =
                std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0);
            h *= fac;
            if (-h > t && t > 0.0) h = -t;
        }
    }

    ScaledPair out;
    out.value = y1;
    out.deriv = y2 / phase;  // back to d/dX
    out.log_scale = log_scale;
    out.renormalize();
    return out;
}

double origin_mismatch(const ScaledPair& a, const ScaledPair& b) {
    const cplx ds = std::exp(a.log_scale - b.log_scale);
    const double dv = std::abs(a.value * ds - b.value);
    const double dd = std::abs(a.deriv * ds - b.deriv);
    const double denom = std::abs(b.value) + std::abs(b.deriv) + 1e-280;
    return (dv + dd) / denom;
}

ScaledPair origin_with_quad(const Potential& p, const RayConfig& cfg, Quadrature* quad) {
    cfg.validate(p);
    const AsymptoticFrame frame = make_frame(p);
    double radius = cfg.radius > 0.0 ? cfg.radius : default_radius(p, cfg);

    auto run = [&](double R, Quadrature* q) {
        if (q) {
            q->d_integral = 0.0;
            q->moments.assign(p.m + 1, 0.0);
        }
        const ScaledPair seed = wkb_seed(p, frame, cfg, R);
        ScaledPair out = run_ray(p, seed, cfg, R, q);
        if (q) {
            // integration ran from R down to 0; flip to int_0^R
            q->d_integral = -q->d_integral;
            for (double& mv : q->moments) mv = -mv;
        }
        return out;
    };

    if (!cfg.adaptive_radius) return run(radius, quad);

    // Escalate the matching radius until two successive answers agree; near
    // the integration noise floor the mismatch stops improving, so accept on
    // stagnation, and if a larger radius exhausts the step budget fall back to
    // the best agreeing pair seen so far.
    const double loose = 50.0 * cfg.rel_tol;
    ScaledPair prev = run(radius, quad);
    ScaledPair best;
    Quadrature best_quad;
    double best_err = std::numeric_limits<double>::infinity();
    double prev_err = std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < 8; ++iter) {
        radius *= 1.6;
        ScaledPair cur;
        try {
            cur = run(radius, quad);
        } catch (const numerics_error&) {
            if (best_err <= loose) {
                if (quad) *quad = best_quad;
                return best;
            }
            if (iter == 0) {
                // Larger radius already over budget; cross-check the base
                // answer against a cheaper smaller radius instead.
                radius /= 1.6 * 1.6;
                cur = run(radius, quad);
                const double err = origin_mismatch(cur, prev);
                if (std::getenv("SIBUYA_DEBUG"))
                    std::fprintf(stderr, "radius down %.4g err=%.3g\n", radius,
                                 err);
                if (err <= loose) {
                    ScaledPair keep = prev;
                    if (quad) run(radius * 1.6 * 1.6, quad);
                    return keep;
                }
            }
            throw;
        }
        const double err = origin_mismatch(prev, cur);
        if (std::getenv("SIBUYA_DEBUG"))
            std::fprintf(stderr, "radius %.4g->%.4g err=%.3g\n",
                         radius / 1.6, radius, err);
        if (err <= 2.0 * cfg.rel_tol) return cur;
        if (err <= 10.0 * cfg.rel_tol && err > 0.25 * prev_err) return cur;
        if (err < best_err) {
            best_err = err;
            best = cur;
            if (quad) best_quad = *quad;
        }
        prev_err = err;
        prev = cur;
    }
    if (best_err <= loose) {
        if (quad) *quad = best_quad;
        return best;
    }
    throw numerics_error("canonical_origin: radius loop did not converge");
}

}  // namespace

void RayConfig::validate(const Potential& p) const {
    if (std::abs(theta) >= 3.0 * kPi / (p.m + 2))
        throw input_error("RayConfig: theta outside Sigma_0");
    if (rel_tol <= 0.0 || abs_tol <= 0.0)
        throw input_error("RayConfig: tolerances must be positive");
}

double default_radius(const Potential& p, const RayConfig& cfg) {
    const double tol = std::clamp(cfg.rel_tol, 1e-14, 1e-2);
    const double dyn =
        std::pow(2.0 * (p.m + 2) * std::log(1.0 / tol), 2.0 / (p.m + 2));
    // The asymptotic seed converges faster in 1/R for larger m, while the
    // integration cost grows like R^{(m+2)/2}; shrink the floor accordingly.
    const double floor_m = std::max(4.0, 8.0 - 1.5 * std::max(0, p.m - 4));
    // Stay well outside the turning points (radius ~ coeff_scale) without
    // scaling the whole matching radius by the coefficient size.
    return std::max(1.9 * std::max(floor_m, dyn), 3.5 * p.coeff_scale());
}

ScaledPair wkb_seed(const Potential& p, const AsymptoticFrame& frame,
                    const RayConfig& cfg, double radius) {
    if (radius <= 1.0 + (p.coeff_scale() - 1.0) * 2.0 || radius <= 2.0)
        throw numerics_error("wkb_seed: matching radius below turning-point bound");
    const int K = static_cast<int>(frame.b.size());
    const double m = p.m;
    const cplx lx = ray_log(radius, cfg.theta);
    const cplx x = std::exp(lx);

    const cplx W = p.eval_w(x);
    const cplx Wp = p.eval_w_prime(x);
    const cplx sqW = sqrt_w_ray(p, radius, cfg.theta);
    const cplx bracket = W * std::exp(-m * lx);
    const cplx amp_w = std::exp(-0.25 * m * lx) * std::pow(bracket, -0.25);

    // exact tail of the action beyond the principal part and log term
    cplx tail{0.0};
    for (int k = frame.k_principal + 1; k <= K; ++k) {
        const int hn = p.m - 2 * k + 2;  // 2*(exponent of the integrated term)
        if (hn == 0) continue;           // log term, not part of the tail
        const double e1 = 0.5 * hn;
        tail += -frame.b[k - 1] * std::exp(e1 * lx) / e1;
    }

    // second- and third-order Riccati corrections, integrated from infinity
    const RiccatiSeries rs = riccati_series(p, K);
    cplx i2{0.0}, v2{0.0}, i3{0.0}, v3{0.0};
    for (int k = 0; k <= K; ++k) {
        const double p2 = 1.0 + 0.5 * m + k;
        i2 += -rs.c[k] * std::exp(-p2 * lx) / p2;
        v2 += rs.c[k] * std::exp(-(p2 + 1.0) * lx);
        const double p3 = 2.0 + m + k;
        i3 += -rs.g[k] * std::exp(-p3 * lx) / p3;
        v3 += rs.g[k] * std::exp(-(p3 + 1.0) * lx);
    }

    const cplx amp = amp_w * std::exp(-frame.log_coeff * lx) * std::exp(tail);
    ScaledPair seed;
    seed.value = amp * std::exp(i2 + i3);
    seed.deriv = (-sqW - Wp / (4.0 * W) + v2 + v3) * seed.value;
    seed.log_scale = -principal_action(p, frame, x);
    seed.renormalize();
    return seed;
}

ScaledPair integrate_ray(const Potential& p, const ScaledPair& seed,
                         const RayConfig& cfg, double radius) {
    return run_ray(p, seed, cfg, radius, nullptr);
}

ScaledPair canonical_origin(const Potential& p, const RayConfig& cfg) {
    return origin_with_quad(p, cfg, nullptr);
}

ScaledComplex f0_scaled(const Potential& p, const RayConfig& cfg) {
    const ScaledPair o = canonical_origin(p, cfg);
    return {o.value, o.log_scale};
}

GreenData green_ray(const Potential& p, double theta, const RayConfig& cfg) {
    if (p.m + 1 > 16)
        throw input_error("green_ray: moment quadrature supports m <= 15");
    const double sector = 2.0 * kPi / (p.m + 2);
    const int k = static_cast<int>(std::lround(theta / sector));
    const double theta_loc = theta - k * sector;
    if (std::abs(theta_loc) >= 0.5 * sector - 1e-9)
        throw numerics_error("green_ray: theta is not a recessive direction");

    GreenData g;
    g.k_sector = k;
    g.theta_loc = theta_loc;
    g.p_loc = p.rotate(-k);

    RayConfig local = cfg;
    local.theta = theta_loc;
    Quadrature quad;
    g.origin = origin_with_quad(g.p_loc, local, &quad);
    g.d_integral = quad.d_integral;
    g.moments = quad.moments;

    // Green identity in the rotated frame; the overall e^{2 Re s} cancels.
    const cplx lhs = -std::conj(g.origin.value) * g.origin.deriv;
    const cplx eio = std::exp(cplx{0.0, theta_loc});
    cplx rhs = g.d_integral / eio;
    cplx phase{1.0};
    cplx sum{0.0};
    for (int j = 0; j <= p.m; ++j) {
        const cplx wj = j == p.m ? cplx{1.0} : g.p_loc.coeffs[p.m - 1 - j];
        sum += wj * phase * g.moments[j];
        phase *= eio;
    }
    rhs += eio * sum;
    g.residual = std::abs(lhs - rhs) /
                 (std::max(std::abs(lhs), std::abs(rhs)) + 1e-280);
    return g;
}

double green_residual(const Potential& p, double theta, const RayConfig& cfg) {
    return green_ray(p, theta, cfg).residual;
}

}  // namespace sibuya
