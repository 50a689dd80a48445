#ifndef SIBUYA_UTIL_HPP
#define SIBUYA_UTIL_HPP

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace sibuya {

inline int worker_count() {
    if (const char* env = std::getenv("SIBUYA_WORKERS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

// Runs fn(i) for i in [0, n); results must be written to pre-sized storage
// inside fn. Exceptions are rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

// Safeguarded bisection/secant hybrid for a real root bracketed by [a, b].
double refine_root(const std::function<double(double)>& f, double a, double b,
                   double fa, double fb, double tol);

}  // namespace sibuya

#endif
