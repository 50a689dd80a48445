#include "sibuya/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sibuya/util.hpp"

namespace sibuya {

namespace {

constexpr double kPi = std::numbers::pi;

// Cheap settings for surveying (grid scans, winding contours): looser step
// control, single matching radius. Roots found this way are re-polished and
// certified at full precision.
RayConfig survey_cfg(const RayConfig& cfg) {
    RayConfig c = cfg;
    c.rel_tol = std::max(cfg.rel_tol, 1e-5);
    c.adaptive_radius = false;
    return c;
}

double wrap_pi(double x) {
    x = std::fmod(x + kPi, 2.0 * kPi);
    if (x <= 0.0) x += 2.0 * kPi;
    return x - kPi;
}

double phase_of(const ScaledComplex& v) {
    if (v.mantissa == cplx{0.0})
        throw numerics_error("winding: exact zero on the contour");
    return std::arg(v.mantissa) + v.log_scale.imag();
}

// Real samples of a scalar function on [lo, hi], shared by C and f_0 scans.
struct RealGrid {
    std::vector<double> x;
    std::vector<double> f;
};

RealGrid sample_grid(const std::function<double(double)>& f, double lo,
                     double hi, int n) {
    RealGrid g;
    g.x.resize(n + 1);
    g.f.resize(n + 1);
    for (int i = 0; i <= n; ++i) g.x[i] = lo + (hi - lo) * i / n;
    parallel_for(n + 1, [&](std::size_t i) { g.f[i] = f(g.x[i]); });
    return g;
}

// Doubles the sample density in place (midpoint insertion).
void refine_grid(const std::function<double(double)>& f, RealGrid& g) {
    const std::size_t n = g.x.size() - 1;
    std::vector<double> xm(n), fm(n);
    for (std::size_t i = 0; i < n; ++i) xm[i] = 0.5 * (g.x[i] + g.x[i + 1]);
    parallel_for(n, [&](std::size_t i) { fm[i] = f(xm[i]); });
    RealGrid out;
    out.x.reserve(2 * n + 1);
    out.f.reserve(2 * n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        out.x.push_back(g.x[i]);
        out.f.push_back(g.f[i]);
        out.x.push_back(xm[i]);
        out.f.push_back(fm[i]);
    }
    out.x.push_back(g.x[n]);
    out.f.push_back(g.f[n]);
    g = std::move(out);
}

int sign_changes(const RealGrid& g) {
    int count = 0;
    for (std::size_t i = 0; i + 1 < g.x.size(); ++i)
        if (g.f[i] != 0.0 && g.f[i + 1] != 0.0 &&
            (g.f[i] > 0) != (g.f[i + 1] > 0))
            ++count;
    return count;
}

double secant_polish(const std::function<double(double)>& f, double a,
                     double b, double fa, double fb, double f_stop) {
    // The target f_stop can sit below the evaluation noise floor; bail out
    // once |f| stops improving instead of burning the full budget there.
    double best_f = std::abs(fb);
    double best_x = b;
    int stall = 0;
    for (int it = 0; it < 25; ++it) {
        if (std::abs(fb) <= f_stop) return b;
        const double d = fb - fa;
        if (d == 0.0) break;
        const double x = b - fb * (b - a) / d;
        if (!std::isfinite(x)) break;
        a = b;
        fa = fb;
        b = x;
        fb = f(x);
        if (!std::isfinite(fb)) break;
        if (std::abs(fb) < best_f) {
            best_f = std::abs(fb);
            best_x = b;
            stall = 0;
        } else if (++stall >= 2) {
            break;
        }
        if (std::abs(b - a) < 1e-15 * (1.0 + std::abs(b))) break;
    }
    return best_f < std::abs(fb) ? best_x : b;
}

// Golden-section minimum of f on [a, b] to x-tolerance tol.
double golden_min(const std::function<double(double)>& f, double a, double b,
                  double tol) {
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

// Generic real-axis scan: sign-change bracketing on the cheap sampler f,
// root refinement and residuals on the accurate f_fine, tangency flags.
std::vector<ZeroRecord> scan_real_generic(const std::function<double(double)>& f,
                                          const std::function<double(double)>& f_fine,
                                          const SearchWindow& w) {
    RealGrid g = sample_grid(f, w.lo, w.hi, w.grid);
    int count = sign_changes(g);
    for (int pass = 0; pass < 3; ++pass) {
        refine_grid(f, g);
        const int next = sign_changes(g);
        if (next == count) break;
        count = next;
    }

    double scale_ref = 0.0;
    for (double v : g.f) scale_ref = std::max(scale_ref, std::abs(v));
    if (scale_ref == 0.0) scale_ref = 1.0;

    std::vector<ZeroRecord> out;
    for (std::size_t i = 0; i + 1 < g.x.size(); ++i) {
        if (g.f[i] == 0.0 || g.f[i + 1] == 0.0 ||
            (g.f[i] > 0) == (g.f[i + 1] > 0))
            continue;
        // Narrow the bracket on the cheap sampler first; its values stay
        // sign-reliable until the bracket is a small fraction of a cell.
        double xa = g.x[i], xb = g.x[i + 1];
        double fxa = g.f[i], fxb = g.f[i + 1];
        for (int k = 0; k < 7; ++k) {
            const double xm = 0.5 * (xa + xb);
            const double fm = f(xm);
            if (fm == 0.0 || std::abs(xb - xa) <= w.tol) break;
            if ((fm > 0) == (fxa > 0)) {
                xa = xm;
                fxa = fm;
            } else {
                xb = xm;
                fxb = fm;
            }
        }
        double root = refine_root(f_fine, xa, xb, fxa, fxb, w.tol);
        const double h = std::max(w.tol, 1e-12 * (1.0 + std::abs(root)));
        root = secant_polish(f_fine, root - h, root, f_fine(root - h),
                             f_fine(root), 0.1 * w.tol * scale_ref);
        ZeroRecord rec;
        rec.lambda = root;
        rec.is_real = true;
        rec.residual = std::abs(f_fine(root)) / scale_ref;
        out.push_back(rec);
    }

    // Near-tangency candidates: deep local |f| minima without a sign change.
    std::vector<double> peaks;
    for (std::size_t i = 1; i + 1 < g.x.size(); ++i)
        if (std::abs(g.f[i]) >= std::abs(g.f[i - 1]) &&
            std::abs(g.f[i]) >= std::abs(g.f[i + 1]))
            peaks.push_back(std::abs(g.f[i]));
    double median_peak = scale_ref;
    if (!peaks.empty()) {
        std::nth_element(peaks.begin(), peaks.begin() + peaks.size() / 2,
                         peaks.end());
        median_peak = peaks[peaks.size() / 2];
    }
    const double tangency_cut = 1e-3 * median_peak;
    for (std::size_t i = 1; i + 1 < g.x.size(); ++i) {
        const bool dip = std::abs(g.f[i]) < std::abs(g.f[i - 1]) &&
                         std::abs(g.f[i]) <= std::abs(g.f[i + 1]);
        const bool same_sign = (g.f[i - 1] > 0) == (g.f[i] > 0) &&
                               (g.f[i] > 0) == (g.f[i + 1] > 0);
        if (!dip || !same_sign || std::abs(g.f[i]) >= tangency_cut) continue;
        const double xm = golden_min(
            [&](double x) { return std::abs(f(x)); }, g.x[i - 1], g.x[i + 1],
            w.tol);
        ZeroRecord rec;
        rec.lambda = xm;
        rec.is_real = true;
        rec.tangency = true;
        rec.residual = std::abs(f_fine(xm)) / scale_ref;
        out.push_back(rec);
    }

    std::sort(out.begin(), out.end(), [](const ZeroRecord& a,
                                         const ZeroRecord& b) {
        return a.lambda.real() < b.lambda.real();
    });
    return out;
}

// Real part of -iC with a symmetry audit on the imaginary residue.
std::function<double(double)> neg_ic_real(const Potential& p,
                                          const RayConfig& cfg) {
    return [p, cfg](double lam) {
        const cplx c = stokes_c(p.with_last(lam), cfg).c;
        const cplx v = cplx{0.0, -1.0} * c;
        const double tol = std::max(1e-6, 1e4 * cfg.rel_tol) *
                           (1.0 + std::abs(v));
        if (std::abs(v.imag()) > tol)
            throw numerics_error(
                "-iC is not real on the real axis: non-real coefficients or "
                "broken conjugation symmetry");
        return v.real();
    };
}

// Signed softened magnitude of a real-valued log-scaled function: equals the
// function near its zeros, stays bounded-log elsewhere. Monotone transform,
// so brackets and roots are preserved.
std::function<double(double)> signed_soft(const LogFn& f) {
    return [f](double lam) {
        const ScaledComplex v = f(cplx{lam, 0.0});
        const double mag = std::abs(v.mantissa);
        if (mag == 0.0) return 0.0;
        if (std::abs(v.mantissa.imag()) > 1e-6 * mag)
            throw numerics_error("expected a real value on the real axis");
        const double L = std::log(mag) + v.log_scale.real();
        const double soft = L > 40.0 ? L : std::log1p(std::exp(L));
        return v.mantissa.real() > 0 ? soft : -soft;
    };
}

std::function<cplx(double)> rect_path(cplx lo, cplx hi) {
    if (!(lo.real() < hi.real() && lo.imag() < hi.imag()))
        throw input_error("winding box: need lo strictly below-left of hi");
    const cplx c0 = lo;
    const cplx c1{hi.real(), lo.imag()};
    const cplx c2 = hi;
    const cplx c3{lo.real(), hi.imag()};
    return [c0, c1, c2, c3](double t) {
        t = t - std::floor(t);
        const double u = 4.0 * t;
        if (u < 1.0) return c0 + (c1 - c0) * u;
        if (u < 2.0) return c1 + (c2 - c1) * (u - 1.0);
        if (u < 3.0) return c2 + (c3 - c2) * (u - 2.0);
        return c3 + (c0 - c3) * (u - 3.0);
    };
}

double phase_delta(const LogFn& f, const std::function<cplx(double)>& path,
                   double t0, double p0, double t1, double p1, int depth) {
    const double d = wrap_pi(p1 - p0);
    if (std::abs(d) < 0.45 * kPi) return d;
    if (depth >= 42)
        throw numerics_error("winding: contour pinched near a zero");
    const double tm = 0.5 * (t0 + t1);
    const double pm = phase_of(f(path(tm)));
    return phase_delta(f, path, t0, p0, tm, pm, depth + 1) +
           phase_delta(f, path, tm, pm, t1, p1, depth + 1);
}

}  // namespace

void SearchWindow::validate() const {
    if (!(lo < hi)) throw input_error("SearchWindow: need lo < hi");
    if (grid < 16) throw input_error("SearchWindow: grid must be >= 16");
    if (!(tol > 0.0)) throw input_error("SearchWindow: tol must be positive");
    if (has_box && !(box_lo.real() < box_hi.real() &&
                     box_lo.imag() < box_hi.imag()))
        throw input_error("SearchWindow: degenerate box");
}

LogFn stokes_fn(const Potential& p, const RayConfig& cfg) {
    return [p, cfg](cplx lam) {
        return ScaledComplex{stokes_c(p.with_last(lam), cfg).c, cplx{0.0}};
    };
}

LogFn f0_fn(const Potential& p, const RayConfig& cfg) {
    return [p, cfg](cplx lam) { return f0_scaled(p.with_last(lam), cfg); };
}

std::vector<ZeroRecord> scan_real_zeros(const Potential& p,
                                        const SearchWindow& w,
                                        const RayConfig& cfg) {
    w.validate();
    for (std::size_t k = 0; k + 1 < p.coeffs.size(); ++k)
        if (p.coeffs[k].imag() != 0.0)
            throw input_error("scan_real_zeros: coefficients must be real");
    return scan_real_generic(neg_ic_real(p, survey_cfg(cfg)),
                             neg_ic_real(p, cfg), w);
}

cplx contour_derivative(const LogFn& f, cplx center, double radius, int n) {
    if (n < 4) throw input_error("contour_derivative: need n >= 4");
    std::vector<ScaledComplex> vals(n);
    parallel_for(n, [&](std::size_t j) {
        const double th = 2.0 * kPi * j / n;
        vals[j] = f(center + radius * std::exp(cplx{0.0, th}));
    });
    double l_max = -1e300;
    for (const auto& v : vals)
        l_max = std::max(l_max, std::log(std::abs(v.mantissa) + 1e-300) +
                                    v.log_scale.real());
    cplx sum{0.0};
    for (int j = 0; j < n; ++j) {
        const double th = 2.0 * kPi * j / n;
        sum += vals[j].mantissa * std::exp(vals[j].log_scale - l_max) *
               std::exp(cplx{0.0, -th});
    }
    return sum / (static_cast<double>(n) * radius) * std::exp(l_max);
}

cplx contour_log_derivative(const LogFn& f, cplx center, double radius,
                            int n) {
    if (n < 4) throw input_error("contour_log_derivative: need n >= 4");
    std::vector<ScaledComplex> vals(n);
    parallel_for(n, [&](std::size_t j) {
        const double th = 2.0 * kPi * j / n;
        vals[j] = f(center + radius * std::exp(cplx{0.0, th}));
    });
    const ScaledComplex fc = f(center);
    if (fc.mantissa == cplx{0.0})
        throw numerics_error("contour_log_derivative: f vanishes at center");
    const cplx lc = fc.log();
    cplx sum{0.0};
    for (int j = 0; j < n; ++j) {
        const double th = 2.0 * kPi * j / n;
        sum += vals[j].mantissa * std::exp(vals[j].log_scale - lc) *
               std::exp(cplx{0.0, -th});
    }
    return sum / (static_cast<double>(n) * radius);
}

cplx derivative_c(const Potential& p, cplx lambda, const RayConfig& cfg,
                  double radius, int n) {
    if (radius <= 0.0) radius = 0.05 * (1.0 + std::abs(lambda));
    return contour_derivative(stokes_fn(p, cfg), lambda, radius, n);
}

int winding_closed(const LogFn& f, const std::function<cplx(double)>& path,
                   int coarse) {
    if (coarse < 8) coarse = 8;
    std::vector<double> t(coarse), ph(coarse);
    for (int i = 0; i < coarse; ++i) t[i] = static_cast<double>(i) / coarse;
    std::vector<ScaledComplex> vals(coarse);
    parallel_for(coarse, [&](std::size_t i) { vals[i] = f(path(t[i])); });
    for (int i = 0; i < coarse; ++i) ph[i] = phase_of(vals[i]);

    double total = 0.0;
    for (int i = 0; i < coarse; ++i) {
        const int j = (i + 1) % coarse;
        const double t1 = (j == 0) ? 1.0 : t[j];
        total += phase_delta(f, path, t[i], ph[i], t1, ph[j], 0);
    }
    const double w = total / (2.0 * kPi);
    const long rounded = std::lround(w);
    if (std::abs(w - static_cast<double>(rounded)) > 0.05)
        throw numerics_error("winding: accumulated phase is not an integer "
                             "multiple of 2 pi");
    return static_cast<int>(rounded);
}

int winding_count(const Potential& p, cplx box_lo, cplx box_hi,
                  const RayConfig& cfg) {
    const LogFn f = stokes_fn(p, survey_cfg(cfg));
    const double diag = std::abs(box_hi - box_lo);
    for (int attempt = 0;; ++attempt) {
        try {
            return winding_closed(f, rect_path(box_lo, box_hi));
        } catch (const numerics_error&) {
            if (attempt >= 3) throw;
            // Nudge the sides outward: a contour sample sat on a zero.
            const double d = std::max(1e-6, 0.013 * diag) * (attempt + 1);
            box_lo -= cplx{d, d};
            box_hi += cplx{d, d};
        }
    }
}

int winding_disc(const Potential& p, cplx center, double radius,
                 const RayConfig& cfg) {
    const LogFn f = stokes_fn(p, survey_cfg(cfg));
    for (int attempt = 0;; ++attempt) {
        try {
            return winding_closed(f, [center, radius](double t) {
                return center + radius * std::exp(cplx{0.0, 2.0 * kPi * t});
            });
        } catch (const numerics_error&) {
            if (attempt >= 3) throw;
            radius *= 1.17;
        }
    }
}

void classify_zeros(std::vector<ZeroRecord>& records, const Potential& p,
                    const RayConfig& cfg, double tol,
                    bool enforce_positive_simple) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < records.size(); ++i)
        if (!records[i].tangency) idx.push_back(i);
    if (idx.empty()) return;

    auto gap_to_neighbors = [&](std::size_t pos) {
        double gap = 1e300;
        if (pos > 0)
            gap = std::min(gap, std::abs(records[idx[pos]].lambda -
                                         records[idx[pos - 1]].lambda));
        if (pos + 1 < idx.size())
            gap = std::min(gap, std::abs(records[idx[pos + 1]].lambda -
                                         records[idx[pos]].lambda));
        if (gap > 1e299) gap = 1.0 + std::abs(records[idx[pos]].lambda);
        return gap;
    };

    for (std::size_t pos = 0; pos < idx.size(); ++pos) {
        ZeroRecord& rec = records[idx[pos]];
        const double gap = gap_to_neighbors(pos);
        const double scale = 1.0 + std::abs(rec.lambda);
        const double r_c = std::min(0.05 * scale, 0.4 * gap);
        rec.c_deriv = derivative_c(p, rec.lambda, cfg, r_c);
        const double hw = std::max(50.0 * tol, std::min(0.35 * gap, 0.05 * scale));
        rec.winding = winding_count(p, rec.lambda - cplx{hw, hw},
                                    rec.lambda + cplx{hw, hw}, cfg);
        rec.is_real = std::abs(rec.lambda.imag()) <=
                      std::max(10.0 * tol, 1e-7 * scale);
    }

    for (std::size_t pos = 0; pos < idx.size(); ++pos) {
        ZeroRecord& rec = records[idx[pos]];
        double neighbor_scale = std::abs(rec.c_deriv);
        if (pos > 0)
            neighbor_scale = std::max(neighbor_scale,
                                      std::abs(records[idx[pos - 1]].c_deriv));
        if (pos + 1 < idx.size())
            neighbor_scale = std::max(neighbor_scale,
                                      std::abs(records[idx[pos + 1]].c_deriv));
        rec.is_simple = rec.winding == 1 &&
                        std::abs(rec.c_deriv) > 1e-6 * neighbor_scale;
        if (enforce_positive_simple) {
            if (!rec.is_real)
                throw verification_error("classify_zeros: non-real zero under "
                                         "(H)+(s)");
            if (rec.lambda.real() <= 0.0)
                throw verification_error("classify_zeros: non-positive zero "
                                         "under (H)+(s)");
            if (!rec.is_simple)
                throw verification_error("classify_zeros: non-simple zero "
                                         "under (H)+(s)");
        }
    }
}

SweepResult sweep_family(int m, const CoefficientFamily& family,
                         double alpha_hi, double alpha_lo, int steps,
                         const SearchWindow& w, const RayConfig& cfg) {
    if (steps < 2) throw input_error("sweep_family: need steps >= 2");
    if (!(alpha_hi > alpha_lo))
        throw input_error("sweep_family: need alpha_hi > alpha_lo");
    w.validate();

    auto base_at = [&](double alpha) {
        std::vector<double> head = family(alpha);
        if (static_cast<int>(head.size()) != m - 1)
            throw input_error("sweep_family: family must produce m-1 "
                              "coefficients");
        head.push_back(0.0);
        return Potential::make_real(m, head);
    };

    SweepResult res;
    res.alphas.resize(steps);
    for (int i = 0; i < steps; ++i)
        res.alphas[i] = alpha_hi + (alpha_lo - alpha_hi) * i / (steps - 1);
    res.slices.resize(steps);
    res.track_ids.resize(steps);
    for (int i = 0; i < steps; ++i)
        res.slices[i] = scan_real_zeros(base_at(res.alphas[i]), w, cfg);

    int next_track = 0;
    for (int i = 0; i < steps; ++i) {
        std::vector<ZeroRecord> real_prev, real_cur;
        std::vector<int> prev_ids;
        if (i > 0) {
            for (std::size_t j = 0; j < res.slices[i - 1].size(); ++j)
                if (!res.slices[i - 1][j].tangency) {
                    real_prev.push_back(res.slices[i - 1][j]);
                    prev_ids.push_back(res.track_ids[i - 1][j]);
                }
        }
        res.track_ids[i].assign(res.slices[i].size(), -1);

        double min_gap_prev = w.hi - w.lo;
        for (std::size_t j = 0; j + 1 < real_prev.size(); ++j)
            min_gap_prev = std::min(min_gap_prev,
                                    real_prev[j + 1].lambda.real() -
                                        real_prev[j].lambda.real());
        const double match_radius =
            std::max(10.0 * w.tol, 0.45 * min_gap_prev);

        std::vector<bool> prev_used(real_prev.size(), false);
        for (std::size_t j = 0; j < res.slices[i].size(); ++j) {
            if (res.slices[i][j].tangency) continue;
            const double lam = res.slices[i][j].lambda.real();
            int best = -1;
            double best_d = match_radius;
            for (std::size_t q = 0; q < real_prev.size(); ++q) {
                if (prev_used[q]) continue;
                const double d = std::abs(lam - real_prev[q].lambda.real());
                if (d < best_d) {
                    best_d = d;
                    best = static_cast<int>(q);
                }
            }
            if (best >= 0) {
                prev_used[best] = true;
                res.track_ids[i][j] = prev_ids[best];
            } else {
                res.track_ids[i][j] = next_track++;
            }
        }
        if (i == 0) continue;

        // Coalescence trigger: an adjacent pair of previous-slice zeros both
        // lost while the complex count nearby stays 2.
        for (std::size_t q = 0; q + 1 < real_prev.size(); ++q) {
            if (prev_used[q] || prev_used[q + 1]) continue;
            const double la = real_prev[q].lambda.real();
            const double lb = real_prev[q + 1].lambda.real();
            const double pad = 0.5 * (lb - la) + 0.05 * (1.0 + std::abs(lb));
            if (la - pad <= w.lo || lb + pad >= w.hi) continue;

            const double alpha_prev = res.alphas[i - 1];
            const double alpha_cur = res.alphas[i];
            const double box_h = (lb - la) + 0.1 * (1.0 + std::abs(lb));
            const int box_w = winding_count(
                base_at(alpha_cur), cplx{la - pad, -box_h},
                cplx{lb + pad, box_h}, cfg);
            if (box_w < 2) continue;

            const double ia = la - pad, ib = lb + pad;
            const double s_out =
                neg_ic_real(base_at(alpha_prev), cfg)(ia) > 0 ? 1.0 : -1.0;
            // Dip value of -iC between the pair: negative (times s_out) while
            // the pair is real, positive once it has turned complex.
            auto dip = [&](double alpha, double* where, const RayConfig& rc) {
                auto f = neg_ic_real(base_at(alpha), rc);
                const double xm = golden_min(
                    [&](double x) { return s_out * f(x); }, ia, ib,
                    1e-8 * (ib - ia));
                if (where) *where = xm;
                return s_out * f(xm);
            };

            const RayConfig cheap = survey_cfg(cfg);
            double a_real = alpha_prev, a_cplx = alpha_cur;
            if (!(dip(a_real, nullptr, cfg) < 0.0 &&
                  dip(a_cplx, nullptr, cfg) > 0.0))
                continue;
            while (std::abs(a_real - a_cplx) >
                   1e-9 * (1.0 + std::abs(a_real))) {
                const double width = std::abs(a_real - a_cplx);
                // Survey precision while the bracket is wide; full precision
                // once the dip value nears the survey noise floor.
                const RayConfig& rc =
                    width > 1e-3 * (1.0 + std::abs(a_real)) ? cheap : cfg;
                const double mid = 0.5 * (a_real + a_cplx);
                if (dip(mid, nullptr, rc) < 0.0)
                    a_real = mid;
                else
                    a_cplx = mid;
            }
            const double alpha_hat = 0.5 * (a_real + a_cplx);
            double lambda_hat = 0.0;
            const double dip_val = dip(alpha_hat, &lambda_hat, cfg);

            CoalescenceEvent ev;
            ev.alpha = alpha_hat;
            ev.lambda = lambda_hat;
            ev.c_abs = std::abs(dip_val);
            const Potential pc = base_at(alpha_hat);
            // Keep the contour tight: wide circles alias higher Taylor
            // coefficients into the 8-point derivative.
            const double r_dc = std::min(0.25 * (ib - ia),
                                         0.05 * (1.0 + std::abs(lambda_hat)));
            ev.dc_abs = std::abs(derivative_c(pc, lambda_hat, cfg, r_dc));
            double disc_r = pad + (lb - la);
            double clear = 1e300;
            for (std::size_t r = 0; r < real_prev.size(); ++r) {
                if (r == q || r == q + 1) continue;
                clear = std::min(clear, std::abs(real_prev[r].lambda.real() -
                                                 lambda_hat));
            }
            if (clear < 1e299) disc_r = std::min(disc_r, 0.8 * clear);
            ev.winding = winding_disc(pc, lambda_hat, disc_r, cfg);
            res.events.push_back(ev);
        }
    }
    return res;
}

std::vector<ZeroRecord> f0_negative_zeros(int m, const SearchWindow& w,
                                          const RayConfig& cfg,
                                          double pos_limit, int pos_samples) {
    w.validate();
    const Potential base =
        Potential::make_real(m, std::vector<double>(m, 0.0));
    const LogFn f0 = f0_fn(base, cfg);
    const LogFn f0_survey = f0_fn(base, survey_cfg(cfg));
    const auto soft = signed_soft(f0_survey);
    const auto soft_fine = signed_soft(f0);

    // Positivity on [0, pos_limit]: no zeros may hide on the positive axis.
    if (pos_samples > 0) {
        std::vector<double> vals(pos_samples);
        parallel_for(pos_samples, [&](std::size_t i) {
            const double lam = pos_limit * i / std::max(1, pos_samples - 1);
            vals[i] = soft(lam);
        });
        for (int i = 0; i < pos_samples; ++i)
            if (!(vals[i] > 0.0))
                throw verification_error(
                    "f0_negative_zeros: f0 <= 0 on the positive axis");
    }

    std::vector<ZeroRecord> out = scan_real_generic(soft, soft_fine, w);

    int real_count = 0;
    for (const auto& rec : out) {
        if (rec.tangency) continue;
        ++real_count;
        if (rec.lambda.real() >= 0.0)
            throw verification_error("f0_negative_zeros: zero on the "
                                     "non-negative axis");
    }

    // Argument-principle cross-check on a rectangle straddling the window.
    const double margin = 0.05 * (w.hi - w.lo) + 10.0 * w.tol;
    const double h = std::max(0.5, 20.0 * w.tol);
    const int box = winding_closed(
        f0_survey, rect_path(cplx{w.lo - margin, -h}, cplx{w.hi + margin, h}));
    if (box != real_count)
        throw verification_error("f0_negative_zeros: complex box count "
                                 "disagrees with the real-axis count");

    // Fill certification data per zero.
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < out.size(); ++i)
        if (!out[i].tangency) idx.push_back(i);
    for (std::size_t pos = 0; pos < idx.size(); ++pos) {
        ZeroRecord& rec = out[idx[pos]];
        double gap = 1.0 + std::abs(rec.lambda);
        if (pos > 0)
            gap = std::min(gap, std::abs(rec.lambda - out[idx[pos - 1]].lambda));
        if (pos + 1 < idx.size())
            gap = std::min(gap, std::abs(out[idx[pos + 1]].lambda - rec.lambda));
        const double r_c = std::min(0.2, 0.35 * gap);
        rec.c_deriv = contour_derivative(f0, rec.lambda, r_c);
        const double hw = std::max(50.0 * w.tol, std::min(0.35 * gap, 0.2));
        rec.winding = winding_closed(
            f0_survey,
            rect_path(rec.lambda - cplx{hw, hw}, rec.lambda + cplx{hw, hw}));
        rec.is_real = true;
        rec.is_simple = rec.winding == 1 && std::abs(rec.c_deriv) > 0.0;
    }
    return out;
}

}  // namespace sibuya
