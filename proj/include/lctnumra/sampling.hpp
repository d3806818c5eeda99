#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "lctnumra/canonical.hpp"

namespace lctnumra {

struct Grid {
    double t_min = 0;
    double step = 1;
    std::size_t count = 0;

    double at(std::size_t i) const { return t_min + static_cast<double>(i) * step; }
    double t_end() const { return t_min + static_cast<double>(count) * step; }
    // t_min / step as an integer; throws if the grid is not lattice aligned.
    std::int64_t lattice_offset() const;
    bool lattice_aligned() const;
};

Grid make_grid(double t_min, double step, std::size_t count);
// Lattice-aligned grid covering [lo, hi) with the given step.
Grid grid_covering(double lo, double hi, double step);
// Step 1/(2N * K * (2N)^J): dilations and translates by the spectrum land on grid points.
double numra_step(int N, int K, int J);

// Complex samples; the represented function is zero outside the window.
// Frequency-synthesized signals hold cell averages over [t, t + step).
struct SampledSignal {
    Grid grid;
    std::vector<cplx> values;
};

SampledSignal zeros(const Grid& g);
SampledSignal sample(const Grid& g, const std::function<cplx(double)>& f);
// 1 on [lo, hi), breakpoints snapped to the nearest grid point.
SampledSignal indicator(const Grid& g, double lo, double hi);

// Trapezoid rule on the zero-extended infinite grid: every stored sample
// carries weight `step`. Grids must share the lattice or one must refine
// the other by an integer factor.
cplx inner_product(const SampledSignal& f, const SampledSignal& g);
double l2_norm(const SampledSignal& f);
// ||f - g|| over the union of both windows (same step, aligned lattices).
double l2_distance(const SampledSignal& f, const SampledSignal& g);

SampledSignal add(const SampledSignal& f, const SampledSignal& g);
void axpy(cplx alpha, const SampledSignal& x, SampledSignal& y);
SampledSignal scaled(const SampledSignal& f, cplx alpha);

// t -> f(t - lambda) * exp(-i pi (a/b)(t^2 - lambda^2)).
SampledSignal translate_chirp(const SampledSignal& f, double lambda, const CanonicalMatrix& m);

// t -> (2N)^{j/2} f((2N)^j t - lambda) * exp(-i pi (a/b)(t^2 - lambda^2)).
// The input is read as a cell function, so coarse levels (j < 0) look up
// the cell containing each dilated point.
SampledSignal dilate_chirp(const SampledSignal& f, int j, int N, double lambda,
                           const CanonicalMatrix& m, int max_level = 30);

// Same as dilate_chirp but evaluated on a different (lattice-aligned) grid.
SampledSignal dilate_chirp_on(const Grid& out, const SampledSignal& f, int j, int N,
                              double lambda, const CanonicalMatrix& m, int max_level = 30);

}  // namespace lctnumra
