#include "lctnumra/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "lctnumra/io.hpp"

namespace lctnumra {

namespace {

constexpr double kAlignTol = 1e-9;

bool near_integer(double x, std::int64_t& out) {
    const double r = std::round(x);
    if (std::abs(x - r) > kAlignTol * std::max(1.0, std::abs(x))) return false;
    out = static_cast<std::int64_t>(r);
    return true;
}

bool same_step(double s1, double s2) { return std::abs(s1 - s2) <= 1e-12 * std::max(s1, s2); }

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

std::int64_t ipow(std::int64_t base, int e) {
    std::int64_t r = 1;
    for (int i = 0; i < e; ++i) {
        if (r > (std::int64_t{1} << 62) / base) throw std::invalid_argument("dilation level overflow");
        r *= base;
    }
    return r;
}

// Offset in samples of grid g relative to grid f (same step).
std::int64_t relative_offset(const Grid& f, const Grid& g) {
    std::int64_t off = 0;
    if (!near_integer((g.t_min - f.t_min) / f.step, off))
        throw std::invalid_argument("grids are not index aligned");
    return off;
}

}  // namespace

std::int64_t Grid::lattice_offset() const {
    std::int64_t off = 0;
    if (!near_integer(t_min / step, off))
        throw std::invalid_argument("grid t_min " + format_double(t_min) +
                                    " is not a multiple of the step");
    return off;
}

bool Grid::lattice_aligned() const {
    std::int64_t off = 0;
    return near_integer(t_min / step, off);
}

Grid make_grid(double t_min, double step, std::size_t count) {
    if (!(step > 0) || !std::isfinite(step)) throw std::invalid_argument("grid step must be positive");
    if (!std::isfinite(t_min)) throw std::invalid_argument("grid t_min must be finite");
    if (count == 0) throw std::invalid_argument("grid count must be positive");
    return {t_min, step, count};
}

Grid grid_covering(double lo, double hi, double step) {
    if (!(hi > lo)) throw std::invalid_argument("empty window");
    const double first = std::floor(lo / step + kAlignTol);
    const double last = std::ceil(hi / step - kAlignTol);
    return make_grid(first * step, step, static_cast<std::size_t>(last - first));
}

double numra_step(int N, int K, int J) {
    if (N < 1 || K < 1 || J < 0) throw std::invalid_argument("numra_step: bad parameters");
    return 1.0 / (2.0 * N * K * std::pow(2.0 * N, J));
}

SampledSignal zeros(const Grid& g) { return {g, std::vector<cplx>(g.count, cplx{})}; }

SampledSignal sample(const Grid& g, const std::function<cplx(double)>& f) {
    SampledSignal s = zeros(g);
    for (std::size_t i = 0; i < g.count; ++i) s.values[i] = f(g.at(i));
    return s;
}

SampledSignal indicator(const Grid& g, double lo, double hi) {
    SampledSignal s = zeros(g);
    const double i_lo = std::round((lo - g.t_min) / g.step);
    const double i_hi = std::round((hi - g.t_min) / g.step);
    for (std::size_t i = 0; i < g.count; ++i) {
        const double x = static_cast<double>(i);
        if (x >= i_lo && x < i_hi) s.values[i] = 1.0;
    }
    return s;
}

cplx inner_product(const SampledSignal& f, const SampledSignal& g) {
    const Grid& gf = f.grid;
    const Grid& gg = g.grid;
    if (same_step(gf.step, gg.step)) {
        const std::int64_t off = relative_offset(gf, gg);  // g index = f index - off
        const std::int64_t lo = std::max<std::int64_t>(0, off);
        const std::int64_t hi = std::min<std::int64_t>(gf.count, off + static_cast<std::int64_t>(gg.count));
        cplx acc{};
        for (std::int64_t i = lo; i < hi; ++i) acc += f.values[i] * std::conj(g.values[i - off]);
        return acc * gf.step;
    }
    // One grid refines the other: integrate on the coarse grid.
    const bool f_fine = gf.step < gg.step;
    const Grid& fine = f_fine ? gf : gg;
    const Grid& coarse = f_fine ? gg : gf;
    std::int64_t q = 0;
    if (!near_integer(coarse.step / fine.step, q) || q < 1)
        throw std::invalid_argument("incompatible grids: steps are not integer multiples");
    std::int64_t off = 0;
    if (!near_integer((coarse.t_min - fine.t_min) / fine.step, off))
        throw std::invalid_argument("incompatible grids: lattices are not aligned");
    cplx acc{};
    for (std::size_t k = 0; k < coarse.count; ++k) {
        const std::int64_t i = off + static_cast<std::int64_t>(k) * q;
        if (i < 0 || i >= static_cast<std::int64_t>(fine.count)) continue;
        const cplx cf = f_fine ? f.values[i] : f.values[k];
        const cplx cg = f_fine ? g.values[k] : g.values[i];
        acc += cf * std::conj(cg);
    }
    return acc * coarse.step;
}

double l2_norm(const SampledSignal& f) { return std::sqrt(std::max(0.0, inner_product(f, f).real())); }

double l2_distance(const SampledSignal& f, const SampledSignal& g) {
    if (!same_step(f.grid.step, g.grid.step)) throw std::invalid_argument("l2_distance: steps differ");
    const std::int64_t off = relative_offset(f.grid, g.grid);
    const std::int64_t lo = std::min<std::int64_t>(0, off);
    const std::int64_t hi = std::max<std::int64_t>(f.grid.count, off + static_cast<std::int64_t>(g.grid.count));
    double acc = 0;
    for (std::int64_t i = lo; i < hi; ++i) {
        cplx a{}, b{};
        if (i >= 0 && i < static_cast<std::int64_t>(f.grid.count)) a = f.values[i];
        const std::int64_t k = i - off;
        if (k >= 0 && k < static_cast<std::int64_t>(g.grid.count)) b = g.values[k];
        acc += std::norm(a - b);
    }
    return std::sqrt(acc * f.grid.step);
}

SampledSignal add(const SampledSignal& f, const SampledSignal& g) {
    SampledSignal out = f;
    axpy(1.0, g, out);
    return out;
}

void axpy(cplx alpha, const SampledSignal& x, SampledSignal& y) {
    if (!same_step(x.grid.step, y.grid.step)) throw std::invalid_argument("axpy: steps differ");
    const std::int64_t off = relative_offset(y.grid, x.grid);
    for (std::size_t i = 0; i < y.grid.count; ++i) {
        const std::int64_t k = static_cast<std::int64_t>(i) - off;
        if (k >= 0 && k < static_cast<std::int64_t>(x.grid.count)) y.values[i] += alpha * x.values[k];
    }
}

SampledSignal scaled(const SampledSignal& f, cplx alpha) {
    SampledSignal out = f;
    for (auto& v : out.values) v *= alpha;
    return out;
}

SampledSignal translate_chirp(const SampledSignal& f, double lambda, const CanonicalMatrix& m) {
    return dilate_chirp(f, 0, 1, lambda, m, 0);
}

SampledSignal dilate_chirp(const SampledSignal& f, int j, int N, double lambda,
                           const CanonicalMatrix& m, int max_level) {
    return dilate_chirp_on(f.grid, f, j, N, lambda, m, max_level);
}

SampledSignal dilate_chirp_on(const Grid& out, const SampledSignal& f, int j, int N,
                              double lambda, const CanonicalMatrix& m, int max_level) {
    if (N < 1) throw std::invalid_argument("dilate_chirp: N must be positive");
    if (std::abs(j) > max_level)
        throw std::invalid_argument("dilate_chirp: level " + std::to_string(j) +
                                    " exceeds the grid's level budget " + std::to_string(max_level));
    if (!same_step(out.step, f.grid.step)) throw std::invalid_argument("dilate_chirp: steps differ");
    const double ratio = m.chirp_ratio();
    std::int64_t lam_idx = 0;
    if (!near_integer(lambda / f.grid.step, lam_idx))
        throw std::invalid_argument("translation " + format_double(lambda) + " is not on the grid");
    const std::int64_t out0 = out.lattice_offset();
    const std::int64_t in0 = f.grid.lattice_offset();
    const std::int64_t scale = ipow(2 * N, std::abs(j));
    const double amp = std::pow(2.0 * N, 0.5 * j);

    SampledSignal res = zeros(out);
    const double lam2 = lambda * lambda;
    for (std::size_t i = 0; i < out.count; ++i) {
        const std::int64_t t_idx = out0 + static_cast<std::int64_t>(i);
        const std::int64_t x_idx = (j >= 0 ? t_idx * scale : floor_div(t_idx, scale)) - lam_idx;
        const std::int64_t k = x_idx - in0;
        if (k < 0 || k >= static_cast<std::int64_t>(f.grid.count)) continue;
        const cplx v = f.values[k];
        if (v == cplx{}) continue;
        const double t = static_cast<double>(t_idx) * out.step;
        res.values[i] = amp * v * std::polar(1.0, -kPi * ratio * (t * t - lam2));
    }
    return res;
}

}  // namespace lctnumra
