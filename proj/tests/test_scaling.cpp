#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "lctnumra/io.hpp"
#include "lctnumra/reference.hpp"
#include "lctnumra/scaling.hpp"
#include "support.hpp"

using namespace lctnumra;
using namespace testing_support;

namespace {

const CanonicalMatrix kChirp{2, 1, 1, 1};

Grid standard() { return grid_covering(-8, 8, 1.0 / 1024); }

SampledSignal classical_haar(const Grid& g) {
    SampledSignal s = indicator(g, 0, 0.5);
    axpy(-1.0, indicator(g, 0.5, 1), s);
    return s;
}

// Sinc-type transform of the unit box under the e^{-2 pi i u t} convention.
cplx box_hat(double u) {
    if (u == 0) return 1.0;
    return std::polar(1.0, -kPi * u) * std::sin(kPi * u) / (kPi * u);
}

}  // namespace

TEST_CASE("explicit Haar scaling functions") {
    const Grid g = standard();
    CHECK(l2_distance(haar_scaling(make_translation_set(1, 1), g), indicator(g, 0, 1)) == 0.0);
    SampledSignal two = indicator(g, 0, 0.5);
    axpy(1.0, indicator(g, 1, 1.5), two);
    CHECK(l2_distance(haar_scaling(make_translation_set(2, 1), g), two) == 0.0);
    for (int N = 1; N <= 5; ++N) {
        const Grid gn = grid_covering(-4, 12, numra_step(N, 8, 0));
        CHECK(std::abs(l2_norm(haar_scaling(make_translation_set(N, 1), gn)) - 1.0) <= 1e-12);
    }
    CHECK_THROWS_AS(haar_scaling(make_translation_set(3, 1), standard()), std::invalid_argument);
}

TEST_CASE("cascade reproduces the unit box for N = 1") {
    const Grid g = standard();
    const PeriodicFilterPair low = haar_filters(make_translation_set(1, 1), fourier());
    const CascadeResult res = cascade(low, 20, 1e-8, g);
    CHECK(l2_distance(res.phi, indicator(g, 0, 1)) <= 1e-2);
    CHECK(res.two_scale_residual <= 1e-6);
    CHECK(res.tail_deviation <= 1e-8);
    CHECK(std::abs(l2_norm(res.phi) - 1.0) <= 0.02);
    // The spectrum against the closed form at the sampled frequencies.
    double worst = 0;
    for (std::size_t k = 0; k < res.u.size(); k += 7) worst = std::max(worst, std::abs(res.hat[k] - box_hat(res.u[k])));
    CHECK(worst <= 1e-6);
}

TEST_CASE("cascade hat equals one at the origin for admissible filters") {
    for (int N : {1, 2, 3})
        for (const CanonicalMatrix& m : {fourier(), kChirp}) {
            const auto bank = haar_filter_bank(make_translation_set(N, 1), m);
            const HatProduct hat({}, bank[0], 20);
            CHECK(std::abs(hat(0.0) - 1.0) <= 1e-6);
        }
}

TEST_CASE("cascade for N = 2 matches the explicit scaling function") {
    const Grid g = standard();
    const TranslationSet ts = make_translation_set(2, 1);
    const CascadeResult res = cascade(haar_filters(ts, kChirp), 20, 1e-8, g);
    CHECK(l2_distance(res.phi, haar_scaling(ts, g)) <= 1e-2);
    CHECK(res.two_scale_residual <= 1e-6);
}

TEST_CASE("cascade reports non-convergence and bad inputs") {
    const Grid g = standard();
    const PeriodicFilterPair low = haar_filters(make_translation_set(1, 1), fourier());
    CHECK_THROWS_AS(cascade(low, 3, 1e-8, g), ConvergenceError);
    const PeriodicFilterPair doubled = sample_filter(
        make_translation_set(1, 1), 4096, [](double) { return cplx(1); }, [](double) { return cplx(1); });
    CHECK_THROWS_AS(cascade(doubled, 20, 1e-8, g), std::invalid_argument);
    CHECK_THROWS_AS(cascade(low, 20, 1e-8, make_grid(-8, 0.003, 4096)), std::invalid_argument);
}

TEST_CASE("classical Haar wavelet from the completed filter") {
    const Grid g = standard();
    const TranslationSet ts = make_translation_set(1, 1);
    const PeriodicFilterPair low = haar_filters(ts, fourier());
    const auto high = complete_filters(low);
    const HatProduct hat({}, low, 20);
    const SampledSignal psi = wavelet_from_filters(hat, high[0], g);
    CHECK(l2_distance(psi, classical_haar(g)) <= 1e-2);
    // Value at the origin is the filter value there.
    const HatProduct psi_hat({&high[0]}, low, 20);
    CHECK(std::abs(psi_hat(0.0) - filter_eval(high[0], 0.0)) <= 1e-12);
}

TEST_CASE("the first-order high-pass filter (e^{-2 pi i u} - 1)/2") {
    // Lambda(u) = (e^{-2 pi i u} - 1)/2, i.e. components -1/2 and 1/2.
    const Grid g = standard();
    const TranslationSet ts = make_translation_set(1, 1);
    const PeriodicFilterPair low = haar_filters(ts, kChirp);
    const PeriodicFilterPair given = sample_filter(
        ts, 4096, [](double) { return cplx(-0.5); }, [](double) { return cplx(0.5); });
    const HatProduct phi_hat({}, low, 20), psi_hat({&given}, low, 20);
    double worst = 0;
    for (int k = -400; k <= 400; ++k) {
        const double u = k / 64.0;
        const cplx expect = 0.5 * (std::polar(1.0, -2 * kPi * u) - 1.0) * phi_hat(u);
        worst = std::max(worst, std::abs(psi_hat(2 * u) - expect));
    }
    CHECK(worst <= 1e-10);
    // Under this transform convention it synthesizes the negated classical wavelet.
    const SampledSignal psi = wavelet_from_filters(phi_hat, given, g);
    CHECK(l2_distance(psi, scaled(classical_haar(g), -1.0)) <= 1e-2);
}

TEST_CASE("time-domain and filter-domain Haar wavelets agree for N = 2") {
    const Grid g = standard();
    const TranslationSet ts = make_translation_set(2, 1);
    for (const CanonicalMatrix& m : {fourier(), kChirp}) {
        const auto bank = haar_filter_bank(ts, m);
        const auto time = haar_wavelets(ts, m, g);
        const HatProduct hat({}, bank[0], 20);
        for (std::size_t k = 1; k < bank.size(); ++k)
            CHECK(l2_distance(wavelet_from_filters(hat, bank[k], g), time[k - 1]) <= 1e-2);
    }
}

TEST_CASE("chirped scaling system is orthonormal") {
    const Grid g = grid_covering(-16, 16, 1.0 / 1024);
    const TranslationSet ts = make_translation_set(2, 1);
    const SampledSignal phi = haar_scaling(ts, g);
    std::vector<SampledSignal> system;
    for (double lam : omega_enumerate(ts, -6, 6.25)) system.push_back(translate_chirp(phi, lam, kChirp));
    CHECK(gram(system).max_off_identity <= 1e-3);
    const GramReport single = gram({indicator(g, 0, 1)});
    CHECK(single.size == 1);
    CHECK(std::abs(single.at(0, 0) - 1.0) <= 1e-3);
}

TEST_CASE("wavelet and scaling spaces are orthogonal") {
    const Grid g = standard();
    for (int N : {1, 2}) {
        const TranslationSet ts = make_translation_set(N, 1);
        const WaveletFamily fam = haar_family(ts, kChirp, g);
        std::vector<SampledSignal> phis, psis;
        for (double lam : omega_enumerate(ts, -3, 3)) {
            phis.push_back(translate_chirp(fam.phi, lam, kChirp));
            for (const auto& psi : fam.psi) psis.push_back(translate_chirp(psi, lam, kChirp));
        }
        double cross = 0;
        cross_gram(psis, phis, &cross);
        CHECK(cross <= 1e-3);
        CHECK(gram(psis).max_off_identity <= 1e-3);
    }
}

TEST_CASE("discrepancy report is deterministic and records the determinant") {
    const std::string a = dump_json(discrepancy_report());
    const std::string b = dump_json(discrepancy_report());
    CHECK(a == b);
    const Json j = Json::parse(a);
    CHECK(j.at("det").get<double>() == -2.0);
    CHECK(j.at("labels").size() == j.at("gram").at("re").size());
    const Json c = chirped_haar_report();
    CHECK(c.at("l2_distance").get<double>() >= 0.0);
}

TEST_CASE("projection of a basis element returns it") {
    const Grid g = standard();
    const WaveletFamily fam = haar_family(make_translation_set(1, 1), kChirp, g);
    const SampledSignal f = translate_chirp(fam.phi, 2.0, kChirp);
    const ProjectionResult p = project(f, fam, 0, -4, 4);
    CHECK(l2_distance(p.signal, f) <= 1e-6);
    for (std::size_t i = 0; i < p.lambdas.size(); ++i)
        CHECK(std::abs(p.coeffs[i] - (p.lambdas[i] == 2.0 ? 1.0 : 0.0)) <= 1e-6);
}

TEST_CASE("projections shrink, converge upward and vanish downward") {
    const Grid g = standard();
    const WaveletFamily fam = haar_family(make_translation_set(1, 1), fourier(), g);
    const SampledSignal f = sample(g, [](double t) { return cplx(std::exp(-2 * kPi * t * t), 0); });
    const double nf = l2_norm(f);
    double previous = INFINITY;
    for (int j = 0; j <= 6; ++j) {
        const auto [lo, hi] = covering_window(f, fam.phi, j, 1);
        const ProjectionResult p = project(f, fam, j, lo, hi);
        CHECK(std::sqrt(p.coefficient_energy()) <= nf + 1e-6);
        const double err = l2_distance(p.signal, f);
        CHECK(err < previous);
        previous = err;
    }
    const auto [lo, hi] = covering_window(f, fam.phi, -8, 1);
    const ProjectionResult coarse = project(f, fam, -8, lo, hi);
    CHECK(std::sqrt(coarse.coefficient_energy()) < 0.05 * nf);
}

TEST_CASE("property: nested projections") {
    std::mt19937_64 rng(41);
    const Grid g = standard();
    const WaveletFamily fam = haar_family(make_translation_set(1, 1), kChirp, g);
    for (int trial = 0; trial < 5; ++trial) {
        const SampledSignal f = smooth_signal(rng, g);
        const int j = uniform_int(rng, 0, 3);
        const auto [lo, hi] = covering_window(f, fam.phi, j + 1, 1);
        const ProjectionResult fine = project(f, fam, j + 1, lo, hi);
        const auto [lo2, hi2] = covering_window(f, fam.phi, j, 1);
        const ProjectionResult direct = project(f, fam, j, lo2, hi2);
        const ProjectionResult nested = project(fine.signal, fam, j, lo2, hi2);
        CHECK(l2_distance(direct.signal, nested.signal) <= 1e-3 * l2_norm(f));
        CHECK(std::sqrt(fine.coefficient_energy()) <= l2_norm(f) + 1e-6);
    }
}

TEST_CASE("projection warns when the window misses part of the support") {
    const Grid g = standard();
    const WaveletFamily fam = haar_family(make_translation_set(1, 1), fourier(), g);
    const SampledSignal f = indicator(g, -2, 2);
    const ProjectionResult p = project(f, fam, 0, 0, 1);
    CHECK_FALSE(p.warnings.empty());
}
