#pragma once
// Hand-rolled generators for the property tests. Every generator draws from a
// caller-owned engine so each test case is reproducible from its seed.
#include <cmath>
#include <random>

#include "lctnumra/canonical.hpp"
#include "lctnumra/sampling.hpp"

namespace testing_support {

using lctnumra::cplx;

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline cplx gaussian_complex(std::mt19937_64& rng) {
    std::normal_distribution<double> n;
    return {n(rng), n(rng)};
}

// Unimodular with |b| bounded away from zero.
inline lctnumra::CanonicalMatrix unimodular(std::mt19937_64& rng) {
    const double a = uniform(rng, -2, 2), d = uniform(rng, -2, 2);
    double b = uniform(rng, 0.3, 2.0);
    if (uniform(rng, 0, 1) < 0.5) b = -b;
    return {a, b, (a * d - 1) / b, d};
}

// Random smooth bump packet: a few modulated Gaussians well inside [-3, 3].
inline lctnumra::SampledSignal smooth_signal(std::mt19937_64& rng, const lctnumra::Grid& g) {
    const int terms = uniform_int(rng, 1, 4);
    std::vector<double> centre, width, freq;
    std::vector<cplx> amp;
    for (int k = 0; k < terms; ++k) {
        centre.push_back(uniform(rng, -1.5, 1.5));
        width.push_back(uniform(rng, 0.6, 1.5));
        freq.push_back(uniform(rng, -2, 2));
        amp.push_back(gaussian_complex(rng));
    }
    return lctnumra::sample(g, [&](double t) {
        cplx v{};
        for (int k = 0; k < terms; ++k) {
            const double x = (t - centre[k]) / width[k];
            v += amp[k] * std::exp(-lctnumra::kPi * x * x) * std::polar(1.0, freq[k] * t);
        }
        return v;
    });
}

// Random step function on dyadic cells of [lo, hi).
inline lctnumra::SampledSignal step_signal(std::mt19937_64& rng, const lctnumra::Grid& g, double lo, double hi,
                                           int cells) {
    lctnumra::SampledSignal s = lctnumra::zeros(g);
    const double w = (hi - lo) / cells;
    for (int c = 0; c < cells; ++c)
        lctnumra::axpy(gaussian_complex(rng), lctnumra::indicator(g, lo + c * w, lo + (c + 1) * w), s);
    return s;
}

}  // namespace testing_support
