#pragma once

#include <cstdint>
#include <vector>

#include "lctnumra/filters.hpp"
#include "lctnumra/sampling.hpp"
#include "lctnumra/scaling.hpp"

namespace lctnumra {

// Base-2N expansion of n, least significant digit first; empty for n = 0.
struct PacketIndex {
    std::uint64_t n = 0;
    int N = 1;
    std::vector<int> digits;
};

PacketIndex digits(std::uint64_t n, int N);
std::uint64_t reconstruct(const PacketIndex& idx);

// Product for W_n: digit filters first, then `depth` low-pass factors.
HatProduct packet_product(const PacketIndex& idx, const std::vector<PeriodicFilterPair>& bank, int depth);
cplx packet_hat_value(const PacketIndex& idx, const std::vector<PeriodicFilterPair>& bank, int depth, double u);

struct PacketNode {
    PacketIndex index;
    std::vector<double> u;
    std::vector<cplx> w_hat;
    SampledSignal w;
    double tail_deviation = 0;
};

// bank[0] is the low-pass filter; bank must hold 2N certified pairs.
PacketNode packet_hat(const PacketIndex& idx, const std::vector<PeriodicFilterPair>& bank, int depth, double tol,
                      const Grid& grid, int aliases = kDefaultAliases);

// Throws unless all pairwise filter residuals are within tol.
void certify_bank(const std::vector<PeriodicFilterPair>& bank, double tol = 1e-8);

struct LabelledGram {
    GramReport gram;
    std::vector<std::uint64_t> n;
    std::vector<double> lambda;
};

// Gram of chirped translates W_n(t - lambda) e^{-i pi (a/b)(t^2 - lambda^2)}.
LabelledGram packet_gram(const std::vector<PacketNode>& nodes, const TranslationSet& ts, const CanonicalMatrix& m,
                         double lambda_lo, double lambda_hi);

// Folded energy h_n(u) = sum_{|j| <= range} |W_n^(u + N j)|^2, checked through
// sum_p h_n(u + p/2) = 2 and sum_p e^{-i pi r p / N} h_n(u + p/2) = 0.
struct FoldResidual {
    double sum = 0;
    double alternating = 0;
    double truncation = 0;  // change when the range is halved
};
FoldResidual check_folding(const HatProduct& hp, const TranslationSet& ts, const std::vector<double>& u,
                           int range = 4096);

struct BasisElement {
    std::uint64_t n = 0;
    int level = 0;
    double lambda = 0;
    SampledSignal signal;
};

struct BasisSpec {
    const PacketNode* node = nullptr;
    int level = 0;
    std::vector<double> lambdas;
};

struct PacketBasis {
    TranslationSet ts;
    CanonicalMatrix m;
    std::vector<BasisElement> elements;
    double certification_residual = 0;
};

// Builds dilate_chirp(W_n, level, N, lambda, m) on `grid` and certifies the
// whole system against the identity (max |G - I| <= tol), throwing otherwise.
PacketBasis make_packet_basis(const std::vector<BasisSpec>& spec, const TranslationSet& ts,
                              const CanonicalMatrix& m, const Grid& grid, double tol = 1e-3,
                              int max_level = 30);

struct Coefficient {
    std::uint64_t n = 0;
    int j = 0;
    double lambda = 0;
    cplx value;
};

std::vector<Coefficient> packet_analyze(const SampledSignal& f, const PacketBasis& basis);
SampledSignal packet_synthesize(const std::vector<Coefficient>& coeffs, const PacketBasis& basis);

double coefficient_energy(const std::vector<Coefficient>& coeffs);

}  // namespace lctnumra
