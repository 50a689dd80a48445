#include "sibuya/util.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>

namespace sibuya {

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const int workers = std::min<std::size_t>(worker_count(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

double refine_root(const std::function<double(double)>& f, double a, double b,
                   double fa, double fb, double tol) {
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    // Illinois-damped false position: halving the retained endpoint's value
    // keeps both endpoints moving, so the bracket itself shrinks
    // superlinearly (plain regula falsi leaves one endpoint stale).
    int side = 0;
    for (int it = 0; it < 200 && std::abs(b - a) > tol; ++it) {
        double x = (std::abs(fb - fa) > 0.0)
                       ? (a * fb - b * fa) / (fb - fa)
                       : 0.5 * (a + b);
        const double lo = std::min(a, b), hi = std::max(a, b);
        const double margin = std::min(0.01 * (hi - lo), 0.25 * tol);
        if (!(x > lo + margin && x < hi - margin)) x = 0.5 * (a + b);
        const double fx = f(x);
        if (fx == 0.0) return x;
        if ((fx > 0) == (fa > 0)) {
            a = x;
            fa = fx;
            if (side == -1) fb *= 0.5;
            side = -1;
        } else {
            b = x;
            fb = fx;
            if (side == 1) fa *= 0.5;
            side = 1;
        }
    }
    return 0.5 * (a + b);
}

}  // namespace sibuya
