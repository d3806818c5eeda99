#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <stdexcept>

#include "lctnumra/lct.hpp"
#include "support.hpp"

using namespace lctnumra;
using namespace testing_support;

namespace {

SampledSignal gaussian(const Grid& g) {
    return sample(g, [](double t) { return cplx(std::exp(-kPi * t * t), 0); });
}

// Independent quadrature: the kernel written out from scratch, long double sums.
std::vector<cplx> oracle(const SampledSignal& f, const CanonicalMatrix& m, const Grid& omega) {
    std::vector<cplx> out(omega.count);
    const std::complex<long double> norm = std::sqrt(std::complex<long double>(0, 2 * kPi * m.b));
    for (std::size_t k = 0; k < omega.count; ++k) {
        const long double w = omega.at(k);
        std::complex<long double> acc = 0;
        for (std::size_t j = 0; j < f.grid.count; ++j) {
            const long double t = f.grid.at(j);
            const long double phase = (m.a * t * t - 2 * t * w + m.d * w * w) / (2 * m.b);
            acc += std::complex<long double>(f.values[j]) * std::polar(1.0L, phase);
        }
        const std::complex<long double> v = acc * static_cast<long double>(f.grid.step) / norm;
        out[k] = cplx(static_cast<double>(v.real()), static_cast<double>(v.imag()));
    }
    return out;
}

double median_seconds(const SampledSignal& f, const CanonicalMatrix& m) {
    lct_fast(f, m);
    std::vector<double> t;
    for (int rep = 0; rep < 31; ++rep) {
        const auto t0 = std::chrono::steady_clock::now();
        lct_fast(f, m);
        t.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    std::sort(t.begin(), t.end());
    return t[t.size() / 2];
}

}  // namespace

TEST_CASE("Fourier special case matches the closed form and a naive oracle") {
    const Grid g = grid_covering(-8, 8, 1.0 / 1024);
    const SampledSignal f = gaussian(g);
    const LctSpectrum F = lct_fast(f, fourier());
    const cplx root = std::sqrt(cplx(0, 2 * kPi));
    double worst = 0;
    for (std::size_t k = 0; k < F.values.size(); ++k) {
        const double w = F.omega.at(k);
        worst = std::max(worst, std::abs(F.values[k] - std::exp(-w * w / (4 * kPi)) / root));
    }
    CHECK(worst <= 1e-6);

    const Grid small = make_grid(-8, 1.0 / 16, 256);
    const SampledSignal fs = gaussian(small);
    const LctSpectrum Fs = lct_fast(fs, fourier());
    CHECK(relative_l2(Fs.values, oracle(fs, fourier(), Fs.omega)) <= 1e-10);
}

TEST_CASE("fast and direct paths agree with the independent oracle for general matrices") {
    const Grid g = make_grid(-8, 1.0 / 16, 256);
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 6; ++trial) {
        const CanonicalMatrix m = unimodular(rng);
        const SampledSignal f = smooth_signal(rng, g);
        const LctSpectrum fast = lct_fast(f, m);
        const auto ref = oracle(f, m, fast.omega);
        CHECK(relative_l2(fast.values, ref) <= 1e-10);
        CHECK(relative_l2(lct_direct(f, m, fast.omega).values, ref) <= 1e-10);
    }
}

TEST_CASE("zero input maps to zero") {
    const Grid g = make_grid(-4, 1.0 / 32, 256);
    const SampledSignal z = zeros(g);
    for (const auto& v : lct_fast(z, fourier()).values) CHECK(v == cplx{});
    for (const auto& v : lct_direct(z, fresnel(1), fast_omega_grid(g, fresnel(1))).values) CHECK(v == cplx{});
    const LctSpectrum F{fast_omega_grid(g, fourier()), std::vector<cplx>(g.count)};
    for (const auto& v : ilct(F, fourier(), g).values) CHECK(v == cplx{});
    CHECK(parseval_residual(z, z, fourier()) == 0.0);
}

TEST_CASE("inverse of the closed-form Gaussian spectrum") {
    const Grid g = grid_covering(-8, 8, 1.0 / 1024);
    const Grid omega = fast_omega_grid(g, fourier());
    const cplx root = std::sqrt(cplx(0, 2 * kPi));
    LctSpectrum F{omega, {}};
    for (std::size_t k = 0; k < omega.count; ++k) {
        const double w = omega.at(k);
        F.values.push_back(std::exp(-w * w / (4 * kPi)) / root);
    }
    const SampledSignal back = ilct_fast(F, fourier(), g);
    double worst = 0;
    for (std::size_t i = 0; i < g.count; ++i)
        worst = std::max(worst, std::abs(back.values[i] - std::exp(-kPi * g.at(i) * g.at(i))));
    CHECK(worst <= 1e-6);
}

TEST_CASE("property: round trips and Parseval on random signals and matrices") {
    std::mt19937_64 rng(22);
    const Grid g = make_grid(-8, 1.0 / 64, 1024);
    for (int trial = 0; trial < 20; ++trial) {
        const CanonicalMatrix m = unimodular(rng);
        const SampledSignal f = smooth_signal(rng, g), h = smooth_signal(rng, g);
        const LctSpectrum F = lct_fast(f, m);
        CHECK(l2_distance(ilct_fast(F, m, g), f) <= 1e-10 * l2_norm(f));
        CHECK(parseval_residual(f, h, m) <= 1e-10 * l2_norm(f) * l2_norm(h));
    }
}

TEST_CASE("property: linearity") {
    std::mt19937_64 rng(23);
    const Grid g = make_grid(-8, 1.0 / 32, 512);
    for (int trial = 0; trial < 20; ++trial) {
        const CanonicalMatrix m = unimodular(rng);
        const SampledSignal f = smooth_signal(rng, g), h = smooth_signal(rng, g);
        const cplx a = gaussian_complex(rng);
        SampledSignal combo = f;
        axpy(a, h, combo);
        const auto F = lct_fast(f, m).values, H = lct_fast(h, m).values, C = lct_fast(combo, m).values;
        std::vector<cplx> expect(F.size());
        for (std::size_t k = 0; k < F.size(); ++k) expect[k] = F[k] + a * H[k];
        CHECK(relative_l2(C, expect) <= 1e-12);
    }
}

TEST_CASE("modulus is even for real even input when a = d") {
    const Grid g = make_grid(-8, 1.0 / 64, 1024);
    const SampledSignal f = gaussian(g);
    const CanonicalMatrix m{1.5, 1.0, 1.25, 1.5};  // det = 1
    const LctSpectrum F = lct_direct(f, m, fast_omega_grid(g, m));
    // omega_k = (k - n/2) dw, so k and n - k mirror each other.
    double worst = 0;
    for (std::size_t k = 1; k < F.values.size(); ++k)
        worst = std::max(worst, std::abs(std::abs(F.values[k]) - std::abs(F.values[F.values.size() - k])));
    CHECK(worst <= 1e-12);
}

TEST_CASE("Parseval on the discontinuous box converges") {
    const CanonicalMatrix m{2, 1, 1, 1};
    for (double step : {1.0 / 256, 1.0 / 512}) {
        const Grid g = grid_covering(-8, 8, step);
        const SampledSignal box = indicator(g, 0, 1);
        CHECK(parseval_residual(box, box, m) <= 1e-3);
        CHECK(l2_distance(ilct(lct_direct(box, m, fast_omega_grid(g, m)), m, g), box) <= 1e-3);
    }
}

TEST_CASE("fast path rejects unsupported input") {
    CHECK_THROWS_AS(lct_fast(zeros(make_grid(0, 0.1, 100)), fourier()), std::invalid_argument);
    CHECK_THROWS_AS(lct_fast(zeros(make_grid(0, 0.1, 128)), identity_matrix()), std::invalid_argument);
    CHECK_THROWS_AS(lct_fast(zeros(make_grid(0, 0.1, 128)), CanonicalMatrix{0, 1, 2, -1}), std::invalid_argument);
}

TEST_CASE("fast path runtime grows like n log n") {
    const SampledSignal small = gaussian(make_grid(-8, 16.0 / 4096, 4096));
    const SampledSignal large = gaussian(make_grid(-8, 16.0 / 8192, 8192));
    const CanonicalMatrix m{2, 1, 1, 1};
    const double ratio = median_seconds(large, m) / median_seconds(small, m);
    MESSAGE("doubling ratio " << ratio);
    CHECK(ratio < 3.0);
}
