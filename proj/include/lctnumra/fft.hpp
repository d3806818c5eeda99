#pragma once

#include <vector>

#include "lctnumra/canonical.hpp"

namespace lctnumra {

// Unnormalized DFT: X[k] = sum_j x[j] exp(sign * 2 pi i j k / n), sign = -1 or +1.
std::vector<cplx> dft(const std::vector<cplx>& x, int sign);

bool is_power_of_two(std::size_t n);

}  // namespace lctnumra
