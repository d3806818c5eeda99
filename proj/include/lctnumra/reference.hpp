#pragma once

#include <vector>

#include "lctnumra/io.hpp"
#include "lctnumra/sampling.hpp"

namespace lctnumra {

// Reference time-domain wavelets for N = 2 and the non-unimodular matrix (0,1,2,-1).
std::vector<SampledSignal> reference_wavelets_n2(const Grid& grid);

// Reference piecewise-chirp Haar wavelet for N = 1, m = (2,1,1,1).
SampledSignal reference_chirped_haar(const Grid& grid);

CanonicalMatrix discrepancy_matrix();  // (0,1,2,-1)
Grid reference_grid();                 // [-4, 4), step 1/1024

// Gram of the chirped phi-translates (lambda in Omega within [-2, 2]) together
// with the reference psi_1..psi_3, computed in permissive mode. Pure record: no
// pass/fail is attached to the reference formulas.
Json discrepancy_report(const Grid& grid = reference_grid());

// Distance between the reference chirped Haar wavelet and the library's one.
Json chirped_haar_report(const Grid& grid = reference_grid());

}  // namespace lctnumra
