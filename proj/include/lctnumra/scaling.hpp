#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lctnumra/canonical.hpp"
#include "lctnumra/filters.hpp"
#include "lctnumra/sampling.hpp"

namespace lctnumra {

constexpr std::size_t kDefaultFilterSamples = 4096;
constexpr int kDefaultDepth = 20;
constexpr double kDefaultTailTol = 1e-8;
constexpr int kDefaultAliases = 32;

// Raised when a truncated infinite product has not settled.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double deviation)
        : std::runtime_error(what), deviation_(deviation) {}
    double deviation() const { return deviation_; }

private:
    double deviation_;
};

// Indicator of the union of [2j/N, (2j+1)/N), j < N.
SampledSignal haar_scaling(const TranslationSet& ts, const Grid& grid);
// Low-pass pair with both components (1/2N) sum_k e^{i pi a (4k)^2 / b} e^{-8 pi i u k}.
PeriodicFilterPair haar_filters(const TranslationSet& ts, const CanonicalMatrix& m,
                                std::size_t count = kDefaultFilterSamples);
// Low-pass followed by 2N-1 high-pass pairs obtained by a fixed unitary mixing
// of the 2N refinement cells (Sylvester-Hadamard when 2N is a power of two,
// DFT otherwise). All members are trigonometric polynomials.
std::vector<PeriodicFilterPair> haar_filter_bank(const TranslationSet& ts, const CanonicalMatrix& m,
                                                 std::size_t count = kDefaultFilterSamples);
// Time-domain wavelets built from the same cell mixing (unchirped).
std::vector<SampledSignal> haar_wavelets(const TranslationSet& ts, const CanonicalMatrix& m,
                                         const Grid& grid);

// Throws unless 1 / (2N step) is a positive integer.
void require_numra_step(int N, double step);

// Truncated product of dilated filters in the normalized variable:
//   prod_i F_i(u / (2N)^{i+1}) * prod_{j < depth} L0(u / (2N)^{prefix+j+1}) * tail,
// where tail = exp(L0'(0) v / (2N - 1)) at the last argument v approximates
// the rest of the infinite low-pass product to first order.
class HatProduct {
public:
    HatProduct(std::vector<const PeriodicFilterPair*> prefix, const PeriodicFilterPair& low, int depth);

    cplx operator()(double u) const;
    // Value with all factors and with the final low-pass factor removed.
    std::pair<cplx, cplx> with_previous(double u) const;
    int factors() const { return static_cast<int>(prefix_.size()) + depth_; }
    int two_n() const { return two_n_; }

private:
    std::vector<const PeriodicFilterPair*> prefix_;
    const PeriodicFilterPair* low_;
    int depth_;
    int two_n_;
    cplx slope_;
};

// Inverse 2 pi-convention Fourier transform onto a lattice-aligned grid. Sample
// j is the cell average over [t_j, t_j + step); `aliases` extra spectral copies
// on each side are folded in before the inverse DFT.
SampledSignal synthesize(const std::function<cplx(double)>& hat, const Grid& grid,
                         int aliases = kDefaultAliases);

// Base-band frequency points k / (n step), k = -n/2 .. n/2 - 1.
std::vector<double> frequency_grid(const Grid& grid);

struct CascadeResult {
    SampledSignal phi;
    std::vector<double> u;
    std::vector<cplx> hat;
    double tail_deviation = 0;
    double two_scale_residual = 0;
};

CascadeResult cascade(const PeriodicFilterPair& p0, int J, double tol, const Grid& grid,
                      int aliases = kDefaultAliases);

double max_tail_deviation(const HatProduct& hp, const std::vector<double>& u);

// psi_k^(u) = L_k(u/2N) phi^(u/2N); phi_hat is the scaling product.
SampledSignal wavelet_from_filters(const HatProduct& phi_hat, const PeriodicFilterPair& pk,
                                   const Grid& grid, int aliases = kDefaultAliases);

struct GramReport {
    std::size_t size = 0;
    std::vector<cplx> matrix;  // row-major
    double max_off_identity = 0;

    cplx at(std::size_t i, std::size_t j) const { return matrix[i * size + j]; }
};

GramReport gram(const std::vector<SampledSignal>& system);
// Rectangular cross Gram <a_i, b_j>, reporting the largest modulus.
GramReport cross_gram(const std::vector<SampledSignal>& a, const std::vector<SampledSignal>& b,
                      double* max_abs);

struct WaveletFamily {
    TranslationSet ts;
    CanonicalMatrix m;
    SampledSignal phi;
    std::vector<SampledSignal> psi;
    std::vector<PeriodicFilterPair> filters;
};

WaveletFamily haar_family(const TranslationSet& ts, const CanonicalMatrix& m, const Grid& grid);

struct ProjectionResult {
    SampledSignal signal;
    std::vector<double> lambdas;
    std::vector<cplx> coeffs;
    std::vector<std::string> warnings;

    double coefficient_energy() const;
};

// Translation window whose level-j elements cover the support of f.
std::pair<double, double> covering_window(const SampledSignal& f, const SampledSignal& generator, int j, int N);

ProjectionResult project(const SampledSignal& f, const WaveletFamily& fam, int j, double lambda_lo,
                         double lambda_hi, int max_level = 30);

}  // namespace lctnumra
