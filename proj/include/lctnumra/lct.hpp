#pragma once

#include <vector>

#include "lctnumra/canonical.hpp"
#include "lctnumra/sampling.hpp"

namespace lctnumra {

// Samples of the transform on a uniform omega grid (Grid reused, t -> omega).
struct LctSpectrum {
    Grid omega;
    std::vector<cplx> values;
};

// Omega grid produced by lct_fast for a time grid with n points and step h:
// spacing 2 pi |b| / (n h), points (m - n/2) * spacing for m = 0..n-1.
Grid fast_omega_grid(const Grid& t, const CanonicalMatrix& m);
// Time grid reachable by ilct_fast from a fast-layout omega grid.
Grid fast_time_grid(const Grid& omega, const CanonicalMatrix& m, double t_min);

// O(n_t * n_omega) quadrature of the forward transform.
LctSpectrum lct_direct(const SampledSignal& f, const CanonicalMatrix& m, const Grid& omega);
// Chirp, DFT, chirp. Requires a power-of-two sample count.
LctSpectrum lct_fast(const SampledSignal& f, const CanonicalMatrix& m);

// Quadrature of the inverse with the conjugate kernel onto an arbitrary grid.
SampledSignal ilct(const LctSpectrum& F, const CanonicalMatrix& m, const Grid& t);
// Fast inverse; t must have the spectrum's count and step 2 pi |b| / (n d_omega).
SampledSignal ilct_fast(const LctSpectrum& F, const CanonicalMatrix& m, const Grid& t);

cplx spectrum_inner_product(const LctSpectrum& F, const LctSpectrum& G);

// |<L f, L g> - <f, g>| with the fast transform.
double parseval_residual(const SampledSignal& f, const SampledSignal& g, const CanonicalMatrix& m);

double relative_l2(const std::vector<cplx>& x, const std::vector<cplx>& ref);

}  // namespace lctnumra
