#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "lctnumra/canonical.hpp"

namespace lctnumra {

// Translation set {0, r/N} + 2Z with r odd, 1 <= r <= 2N-1, gcd(r, N) = 1.
struct TranslationSet {
    int N = 1;
    int r = 1;

    double offset() const { return static_cast<double>(r) / N; }
    // Spectral partner [0, 1/2) u [N/2, (N+1)/2).
    std::pair<std::pair<double, double>, std::pair<double, double>> spectral_set() const;
};

TranslationSet make_translation_set(int N, int r);
std::vector<int> valid_offsets(int N);

// All spectrum points in [lo, hi), ascending.
std::vector<double> omega_enumerate(const TranslationSet& ts, double lo, double hi);

// Trigonometric polynomials in e^{-4 pi i u}: comp(u) = sum_n c[n] e^{-4 pi i n u}.
struct FilterCoefficients {
    std::vector<cplx> c1, c2;
};

// Half-periodic components sampled on u_i = i / (2 count), i < count.
// The full filter is comp1(u) + exp(-2 pi i u r / N) comp2(u).
struct PeriodicFilterPair {
    TranslationSet ts;
    std::vector<cplx> lam1, lam2;
    // When present, evaluation is exact instead of nearest-sample.
    std::optional<FilterCoefficients> coeffs;

    std::size_t count() const { return lam1.size(); }
    double du() const { return 0.5 / static_cast<double>(count()); }
    cplx comp1(double u) const;
    cplx comp2(double u) const;
};

PeriodicFilterPair sample_filter(const TranslationSet& ts, std::size_t count,
                                 const std::function<cplx(double)>& comp1,
                                 const std::function<cplx(double)>& comp2);
PeriodicFilterPair filter_from_coefficients(const TranslationSet& ts, std::size_t count,
                                            FilterCoefficients coeffs);

cplx filter_eval(const PeriodicFilterPair& p, double u);
double m0(const PeriodicFilterPair& p, double u);

// Derivative of the full filter at u = 0 (exact for coefficient filters,
// one-sample central difference otherwise).
cplx filter_slope_at_zero(const PeriodicFilterPair& p);

// max_u |M0(u + 1/4) - M0(u)| over the stored samples.
double check_m0_period(const PeriodicFilterPair& p);

struct OrthoResidual {
    double sum = 0;          // |sum_p [..] - delta|
    double alternating = 0;  // |sum_p e^{-i pi r p / N} [..]|
};
OrthoResidual check_orthonormality(const PeriodicFilterPair& pl, const PeriodicFilterPair& pk,
                                   bool same_index);

struct ScalingResidual {
    double sum = 0;          // |sum_p M0(u + p/4N) - 1|
    double alternating = 0;  // |sum_p e^{-i pi r p/N} M0(u + p/4N)|
};
ScalingResidual check_scaling_conditions(const PeriodicFilterPair& p0);

// Pointwise unitary completion of a low-pass pair to 2N-1 high-pass pairs.
std::vector<PeriodicFilterPair> complete_filters(const PeriodicFilterPair& p0,
                                                 double precondition_tol = 1e-8);

// Worst residual over all ordered index pairs of a bank (index 0 = low-pass).
OrthoResidual bank_orthonormality(const std::vector<PeriodicFilterPair>& bank);

}  // namespace lctnumra
