#ifndef SIBUYA_SERIES_HPP
#define SIBUYA_SERIES_HPP

#include <vector>

#include "sibuya/types.hpp"

namespace sibuya::series {

// Truncated power series helpers, coefficient index = power of u.
// All results are truncated at the shorter of the requested order and K.

std::vector<cplx> mul(const std::vector<cplx>& x, const std::vector<cplx>& y, int K);

// x / y with y[0] != 0.
std::vector<cplx> div(const std::vector<cplx>& x, const std::vector<cplx>& y, int K);

// sqrt(y) with y[0] = 1.
std::vector<cplx> sqrt(const std::vector<cplx>& y, int K);

}  // namespace sibuya::series

#endif
