#include "lctnumra/reference.hpp"

#include <algorithm>
#include <cmath>

#include "lctnumra/scaling.hpp"

namespace lctnumra {

namespace {

// Alternating +/- blocks of width 1/8 starting at `lo`, `first` giving the sign of the first block.
void eighths(SampledSignal& s, double lo, double first) {
    for (int q = 0; q < 4; ++q) {
        const double sign = (q % 2 == 0) ? first : -first;
        axpy(sign, indicator(s.grid, lo + q / 8.0, lo + (q + 1) / 8.0), s);
    }
}

Json complex_matrix(const GramReport& g) {
    Json re = Json::array(), im = Json::array();
    for (std::size_t i = 0; i < g.size; ++i) {
        Json rr = Json::array(), ii = Json::array();
        for (std::size_t j = 0; j < g.size; ++j) {
            rr.push_back(g.at(i, j).real());
            ii.push_back(g.at(i, j).imag());
        }
        re.push_back(rr);
        im.push_back(ii);
    }
    return {{"re", re}, {"im", im}};
}

}  // namespace

std::vector<SampledSignal> reference_wavelets_n2(const Grid& grid) {
    SampledSignal p1 = indicator(grid, 0.0, 0.5);
    axpy(-1.0, indicator(grid, 1.0, 1.5), p1);
    SampledSignal p2 = zeros(grid), p3 = zeros(grid);
    eighths(p2, -1.0, -1.0);
    eighths(p2, 0.0, -1.0);
    eighths(p3, -1.0, -1.0);
    eighths(p3, 0.0, 1.0);
    return {p1, p2, p3};
}

SampledSignal reference_chirped_haar(const Grid& grid) {
    return sample(grid, [](double t) -> cplx {
        if (t >= 0 && t < 0.5) return std::polar(1.0, -8 * kPi * t * t);
        if (t >= 0.5 && t < 1) return -std::polar(1.0, -2 * kPi * (2 * t - 1) * (2 * t - 1));
        return 0.0;
    });
}

CanonicalMatrix discrepancy_matrix() { return {0, 1, 2, -1}; }

Grid reference_grid() { return make_grid(-4.0, 1.0 / 1024, 8192); }

Json discrepancy_report(const Grid& grid) {
    const CanonicalMatrix m = discrepancy_matrix();
    const ValidationReport v = validate(m, true);
    const TranslationSet ts = make_translation_set(2, 1);
    const SampledSignal phi = haar_scaling(ts, grid);

    std::vector<SampledSignal> system;
    Json labels = Json::array();
    for (double lam : omega_enumerate(ts, -2.0, 2.25)) {
        system.push_back(translate_chirp(phi, lam, m));
        labels.push_back({{"kind", "phi"}, {"lambda", lam}});
    }
    const auto given = reference_wavelets_n2(grid);
    for (std::size_t k = 0; k < given.size(); ++k) {
        system.push_back(given[k]);
        labels.push_back({{"kind", "psi_" + std::to_string(k + 1)}, {"lambda", 0.0}});
    }
    const GramReport g = gram(system);

    const std::size_t nphi = system.size() - given.size();
    double cross = 0, self = 0;
    for (std::size_t i = nphi; i < g.size; ++i) {
        for (std::size_t j = 0; j < nphi; ++j) cross = std::max(cross, std::abs(g.at(i, j)));
        for (std::size_t j = nphi; j < g.size; ++j)
            self = std::max(self, std::abs(g.at(i, j) - (i == j ? 1.0 : 0.0)));
    }

    // The library's own Haar wavelets for the same data, for side-by-side reading.
    const auto library = haar_wavelets(ts, m, grid);
    Json distances = Json::array();
    for (std::size_t k = 0; k < given.size(); ++k) distances.push_back(l2_distance(given[k], library[k]));

    return {{"fixture", "reference N=2 wavelets, permissive matrix"},
            {"matrix", matrix_to_json(m)},
            {"det", v.det},
            {"warnings", v.warnings},
            {"translation_set", {{"N", ts.N}, {"r", ts.r}}},
            {"grid", grid_to_json(grid)},
            {"labels", labels},
            {"gram", complex_matrix(g)},
            {"max_abs_gram_minus_identity", g.max_off_identity},
            {"max_abs_psi_phi_cross", cross},
            {"max_abs_psi_gram_minus_identity", self},
            {"l2_distance_to_library_psi", distances}};
}

Json chirped_haar_report(const Grid& grid) {
    const CanonicalMatrix m{2, 1, 1, 1};
    const TranslationSet ts = make_translation_set(1, 1);
    const SampledSignal given = reference_chirped_haar(grid);
    const SampledSignal library = haar_wavelets(ts, m, grid).at(0);
    const SampledSignal half = indicator(grid, 0.0, 0.5), rest = indicator(grid, 0.5, 1.0);
    auto restricted = [&](const SampledSignal& f, const SampledSignal& mask) {
        SampledSignal out = f;
        for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] *= mask.values[i];
        return out;
    };
    return {{"fixture", "reference chirped Haar wavelet"},
            {"matrix", matrix_to_json(m)},
            {"grid", grid_to_json(grid)},
            {"l2_distance_first_half", l2_distance(restricted(given, half), restricted(library, half))},
            {"l2_distance_second_half", l2_distance(restricted(given, rest), restricted(library, rest))},
            {"l2_distance", l2_distance(given, library)}};
}

}  // namespace lctnumra
