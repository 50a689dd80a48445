// End-to-end acceptance runner: prints one pass/fail line per criterion and
// exits nonzero if any of them fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cubic_oracle.hpp"
#include "sibuya/stokes.hpp"
#include "sibuya/verify.hpp"
#include "sibuya/zeros.hpp"

using namespace sibuya;

namespace {

constexpr double kPi = std::numbers::pi;

int g_failures = 0;

void report(int id, const std::string& label, bool pass,
            const std::string& detail, double secs) {
    std::printf("criterion %d [%s]: %s (%s, %.1fs)\n", id, label.c_str(),
                pass ? "PASS" : "FAIL", detail.c_str(), secs);
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

template <typename Fn>
void criterion(int id, const std::string& label, Fn&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    bool pass = false;
    std::string detail;
    try {
        detail = fn(pass);
    } catch (const std::exception& e) {
        pass = false;
        detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    report(id, label, pass, detail, secs);
}

// Random real coefficient set satisfying the sign conditions (H) and (s).
std::vector<double> random_admissible(int m, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> mag(0.05, 0.6);
    std::uniform_int_distribution<int> jd(1, m / 2);
    const int j = jd(rng);
    std::vector<double> a(m - 1);
    for (int k = 1; k <= m - 1; ++k) {
        if (k < j)
            a[k - 1] = mag(rng);
        else if (k > j)
            a[k - 1] = -mag(rng);
        else if (m == 4 && j == 2)
            a[k - 1] = -mag(rng);
        else
            a[k - 1] = (rng() & 1u) ? mag(rng) : -mag(rng);
    }
    return a;
}

}  // namespace

int main() {
    RayConfig cfg;

    criterion(1, "harmonic spectrum", [&](bool& pass) {
        const Potential p = Potential::make_real(2, {0.0, 0.0});
        SearchWindow w;
        w.lo = 0.0;
        w.hi = 10.0;
        w.grid = 32;
        // The default matching radius is very conservative for m = 2; a
        // fixed radius beyond the turning point is ~20x faster and agrees to
        // well below the 1e-6 target (the closed-form check below is the
        // certificate).
        RayConfig fast = cfg;
        fast.radius = 9.0;
        fast.adaptive_radius = false;
        const auto recs = scan_real_zeros(p, w, fast);
        double worst = 1e300;
        pass = recs.size() == 5;
        if (pass) {
            worst = 0.0;
            for (int i = 0; i < 5; ++i)
                worst = std::max(worst,
                                 std::abs(recs[i].lambda - (2.0 * i + 1.0)));
            pass = pass && worst < 1e-6;
        }
        std::ostringstream os;
        os << recs.size() << " zeros, max |lambda - (2n+1)| = " << worst;
        return os.str();
    });

    criterion(2, "closed-form C at lambda=0", [&](bool& pass) {
        const cplx c3 =
            stokes_c(Potential::make_real(3, {0.0, 0.0, 0.0}), cfg).c;
        const cplx c4 =
            stokes_c(Potential::make_real(4, {0.0, 0.0, 0.0, 0.0}), cfg).c;
        const double want3 = 2.0 * std::sin(0.3 * kPi);
        const double want4 = std::sqrt(3.0);
        const double r3 =
            std::abs(cplx{0.0, -1.0} * c3 - want3) / want3;
        const double r4 =
            std::abs(cplx{0.0, -1.0} * c4 - want4) / want4;
        pass = r3 < 1e-6 && r4 < 1e-6;
        std::ostringstream os;
        os << "m=3 rel err " << r3 << ", m=4 rel err " << r4;
        return os.str();
    });

    criterion(3, "cubic spectrum vs diagonalization oracle", [&](bool& pass) {
        const auto oracle = cubic_eigenvalues_oracle(4);
        const Potential p = Potential::make_real(3, {0.0, 0.0, 0.0});
        SearchWindow w;
        w.lo = 0.2;
        w.hi = 12.5;
        w.grid = 48;
        const auto recs = scan_real_zeros(p, w, cfg);
        pass = oracle.size() >= 4 && recs.size() >= 4;
        double worst = 1e300;
        if (pass) {
            worst = 0.0;
            for (int i = 0; i < 4; ++i)
                worst = std::max(
                    worst, std::abs(recs[i].lambda.real() - oracle[i]) /
                               oracle[i]);
            pass = worst < 1e-5;
        }
        std::ostringstream os;
        os << "max rel diff over first 4 zeros = " << worst;
        return os.str();
    });

    criterion(4, "identity suite", [&](bool& pass) {
        std::mt19937_64 rng(2024);
        VerificationReport rep;
        Thresholds th;
        th.symmetry = 1e-8;
        th.functional = 1e-6;
        th.wronskian = 1e-6;

        check_symmetry(rep, 3, 16, rng, cfg, th);
        check_symmetry(rep, 4, 6, rng, cfg, th);
        check_symmetry(rep, 5, 3, rng, cfg, th);

        std::uniform_real_distribution<double> u(-0.6, 0.6);
        auto lam = [&] { return cplx{u(rng) + 0.8, u(rng)}; };
        for (int m : {3, 4, 5}) {
            const int n = m == 3 ? 14 : (m == 4 ? 5 : 2);
            std::vector<double> head(m, 0.0);
            for (auto& x : head) x = u(rng);
            const Potential p = Potential::make_real(m, head);
            std::vector<cplx> ls;
            for (int i = 0; i < n; ++i) ls.push_back(lam());
            check_functional_relation(rep, p, ls, cfg, th);
        }

        check_wronskian_lemma(rep, 3, {-1, 0, 1}, 3, rng, cfg, th);
        check_wronskian_lemma(rep, 4, {-1, 0}, 2, rng, cfg, th);
        check_wronskian_lemma(rep, 5, {0}, 1, rng, cfg, th);

        // Unit coefficient of Phi_1 in Phi_{-1} = C Phi_0 + Phi_1.
        for (int i = 0; i < 16; ++i) {
            const Potential p =
                Potential::make_real(3, {u(rng), u(rng), u(rng)});
            rep.add("unit_coefficient", "m=3",
                    stokes_c(p, cfg).unit_coeff_residual, 1e-8);
        }

        // C through the Wronskian ratio vs through the functional relation.
        for (int m : {3, 4}) {
            const int n = m == 3 ? 10 : 4;
            for (int i = 0; i < n; ++i) {
                std::vector<double> head(m, 0.0);
                for (auto& x : head) x = u(rng);
                head.back() += 0.9;  // stay away from zeros of f0
                const Potential p = Potential::make_real(m, head);
                const cplx c1 = stokes_c(p, cfg).c;
                const cplx c2 = stokes_c_from_f0(p, cfg);
                rep.add("dual_path", "m=" + std::to_string(m),
                        std::abs(c1 - c2) / (1.0 + std::abs(c1)), 1e-6);
            }
        }

        // Insensitivity to the matching radius.
        for (int m : {3, 4}) {
            const int n = m == 3 ? 7 : 3;
            const double r1 = m == 3 ? 10.0 : 13.0;
            const double r2 = m == 3 ? 14.0 : 18.0;
            for (int i = 0; i < n; ++i) {
                std::vector<double> head(m, 0.0);
                for (auto& x : head) x = u(rng);
                const Potential p = Potential::make_real(m, head);
                RayConfig ca = cfg, cb = cfg;
                ca.radius = r1;
                cb.radius = r2;
                const cplx c1 = stokes_c(p, ca).c;
                const cplx c2 = stokes_c(p, cb).c;
                rep.add("radius_robustness", "m=" + std::to_string(m),
                        std::abs(c1 - c2) / (1.0 + std::abs(c1)), 1e-7);
            }
        }

        int fails = 0;
        for (const auto& e : rep.entries)
            if (!e.pass) ++fails;
        pass = fails == 0 && rep.entries.size() >= 100;
        std::ostringstream os;
        os << rep.entries.size() << " cases, " << fails << " failures";
        return os.str();
    });

    criterion(5, "reality and simpleness under the sign conditions",
              [&](bool& pass) {
        std::mt19937_64 rng(77);
        int cases = 0, zeros_total = 0;
        for (int m : {3, 4, 5}) {
            const int n = m == 3 ? 32 : (m == 4 ? 14 : 4);
            const double hi = m == 5 ? 3.5 : 6.0;
            for (int i = 0; i < n; ++i) {
                const auto head = random_admissible(m, rng);
                if (!check_hypothesis(head, m).accepted)
                    throw verification_error(
                        "sampler produced an inadmissible set");
                auto full = head;
                full.push_back(0.0);
                const Potential p = Potential::make_real(m, full);
                SearchWindow w;
                w.lo = -1.0;
                w.hi = hi;
                w.grid = 32;
                auto recs = scan_real_zeros(p, w, cfg);
                // throws if any zero is non-real, non-positive or non-simple
                classify_zeros(recs, p, cfg, w.tol, true);
                int n_real = 0;
                for (const auto& r : recs)
                    if (!r.tangency) ++n_real;
                if (n_real < 1)
                    throw verification_error("window contains no zero");
                const int boxed = winding_count(p, cplx{w.lo, -1.0},
                                                cplx{w.hi, 1.0}, cfg);
                if (boxed != n_real)
                    throw verification_error(
                        "complex count disagrees with the real scan");
                ++cases;
                zeros_total += n_real;
            }
        }
        pass = cases == 50;
        std::ostringstream os;
        os << cases << " coefficient sets, " << zeros_total
           << " zeros certified";
        return os.str();
    });

    criterion(6, "zeros of f0 on the negative axis", [&](bool& pass) {
        SearchWindow w;
        w.lo = -15.0;
        w.hi = -0.5;
        w.grid = 32;
        // throws unless f0 > 0 on [0, 20] and counts match
        const auto recs = f0_negative_zeros(3, w, cfg, 20.0, 50);
        int n = 0;
        bool neg = true;
        for (const auto& r : recs)
            if (!r.tangency) {
                ++n;
                neg = neg && r.lambda.real() < 0.0;
            }
        pass = n >= 2 && neg;
        std::ostringstream os;
        os << n << " zeros, all negative: " << (neg ? "yes" : "no");
        return os.str();
    });

    criterion(7, "order of growth of f0", [&](bool& pass) {
        VerificationReport rep;
        Thresholds th;
        const std::vector<double> radii{4.0, 6.0, 9.0, 13.5, 20.0};
        const double s3 = check_order_growth(rep, 3, radii, cfg, th);
        const double s4 = check_order_growth(rep, 4, radii, cfg, th);
        pass = rep.all_pass();
        std::ostringstream os;
        os << "slopes " << s3 << " (want 5/6), " << s4 << " (want 3/4)";
        return os.str();
    });

    criterion(8, "coalescence of a zero pair", [&](bool& pass) {
        CoefficientFamily family = [](double alpha) {
            return std::vector<double>{0.0, -alpha};
        };
        SearchWindow w;
        w.lo = -1.0;
        w.hi = 10.0;
        w.grid = 48;
        const SweepResult res = sweep_family(3, family, 2.0, -3.0, 6, w, cfg);

        bool event_ok = false;
        double alpha_hat = 0.0;
        for (const auto& ev : res.events)
            if (ev.alpha < 0.0 && ev.c_abs <= 1e-4 && ev.dc_abs <= 1e-4 &&
                ev.winding == 2) {
                event_ok = true;
                alpha_hat = ev.alpha;
            }

        // alpha >= 0 slices: no events there, and every zero is certifiably
        // simple.
        bool simple_ok = true;
        for (const auto& ev : res.events) simple_ok &= ev.alpha < 0.0;
        for (double alpha : {2.0, 0.0}) {
            const Potential p = Potential::make_real(3, {0.0, -alpha, 0.0});
            auto recs = scan_real_zeros(p, w, cfg);
            classify_zeros(recs, p, cfg, w.tol, true);
            for (const auto& r : recs)
                if (!r.tangency) simple_ok &= r.is_simple;
        }
        pass = event_ok && simple_ok;
        std::ostringstream os;
        os << res.events.size() << " event(s), alpha_hat = " << alpha_hat
           << ", alpha >= 0 all simple: " << (simple_ok ? "yes" : "no");
        return os.str();
    });

    criterion(9, "sign of the rotated log-derivative", [&](bool& pass) {
        VerificationReport rep;
        Thresholds th;
        std::vector<double> ls3, ls4;
        for (int i = 0; i < 20; ++i) ls3.push_back(0.5 * i);
        for (int i = 0; i < 20; ++i) ls4.push_back(0.45 * i);
        check_logderiv_sign(
            rep, Potential::make_real(3, {0.0, 0.0, 0.0}), ls3, cfg, th);
        check_logderiv_sign(
            rep, Potential::make_real(4, {1.0, -0.5, -2.0, 0.0}), ls4, cfg,
            th);
        pass = rep.all_pass();
        double worst = -1e300;
        for (const auto& e : rep.entries) worst = std::max(worst, e.value);
        std::ostringstream os;
        os << rep.entries.size() << " samples, max Im(g'/g) = " << worst;
        return os.str();
    });

    if (g_failures)
        std::printf("%d criterion(s) failed\n", g_failures);
    else
        std::printf("all criteria passed\n");
    return g_failures == 0 ? 0 : 1;
}
