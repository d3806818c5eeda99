#include "lctnumra/scaling.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>

#include "lctnumra/fft.hpp"
#include "lctnumra/io.hpp"
#include "lctnumra/parallel.hpp"

namespace lctnumra {

namespace {

using Matrix = std::vector<std::vector<cplx>>;

// Unitary 2N x 2N mixing whose first row is constant.
Matrix cell_mixing(int twoN) {
    Matrix E(twoN, std::vector<cplx>(twoN));
    const double s = 1.0 / std::sqrt(static_cast<double>(twoN));
    const bool pow2 = is_power_of_two(static_cast<std::size_t>(twoN));
    for (int i = 0; i < twoN; ++i)
        for (int j = 0; j < twoN; ++j) {
            if (pow2) {
                E[i][j] = (std::popcount(static_cast<unsigned>(i & j)) % 2 == 0 ? s : -s);
            } else {
                E[i][j] = s * std::polar(1.0, -2.0 * kPi * i * j / twoN);
            }
        }
    return E;
}

std::vector<cplx> haar_chirps(const TranslationSet& ts, const CanonicalMatrix& m) {
    require_nonzero_b(m);
    std::vector<cplx> c(ts.N);
    for (int k = 0; k < ts.N; ++k) {
        const double q = 4.0 * k;
        c[k] = std::polar(1.0, kPi * m.a * q * q / m.b);
    }
    return c;
}

// Refinement cell j = 2k + t: translation 4k (t = 0) or 4k + r/N (t = 1).
double cell_translation(const TranslationSet& ts, int cell) {
    return 4.0 * (cell / 2) + (cell % 2 == 1 ? ts.offset() : 0.0);
}

}  // namespace

void require_numra_step(int N, double step) {
    const double q = 1.0 / (2.0 * N * step);
    if (q < 0.5 || std::abs(q - std::round(q)) > 1e-9 * q)
        throw std::invalid_argument("grid step " + format_double(step) + " is not 1/(2N K) for N = " +
                                    std::to_string(N));
}

SampledSignal haar_scaling(const TranslationSet& ts, const Grid& grid) {
    SampledSignal s = zeros(grid);
    for (int j = 0; j < ts.N; ++j) {
        const double lo = 2.0 * j / ts.N, hi = (2.0 * j + 1) / ts.N;
        for (double x : {lo, hi}) {
            const double q = (x - grid.t_min) / grid.step;
            if (std::abs(q - std::round(q)) > 1e-9 * std::max(1.0, std::abs(q)))
                throw std::invalid_argument("haar_scaling: breakpoint " + format_double(x) + " is off the grid");
        }
        axpy(1.0, indicator(grid, lo, hi), s);
    }
    return s;
}

PeriodicFilterPair haar_filters(const TranslationSet& ts, const CanonicalMatrix& m, std::size_t count) {
    return haar_filter_bank(ts, m, count).front();
}

std::vector<PeriodicFilterPair> haar_filter_bank(const TranslationSet& ts, const CanonicalMatrix& m,
                                                 std::size_t count) {
    const int twoN = 2 * ts.N;
    const auto chirps = haar_chirps(ts, m);
    const Matrix E = cell_mixing(twoN);
    const double norm = 1.0 / std::sqrt(static_cast<double>(twoN));
    std::vector<PeriodicFilterPair> bank;
    for (int row = 0; row < twoN; ++row) {
        FilterCoefficients fc{std::vector<cplx>(twoN - 1), std::vector<cplx>(twoN - 1)};
        for (int k = 0; k < ts.N; ++k) {
            fc.c1[2 * k] = chirps[k] * E[row][2 * k] * norm;
            fc.c2[2 * k] = chirps[k] * E[row][2 * k + 1] * norm;
        }
        bank.push_back(filter_from_coefficients(ts, count, std::move(fc)));
    }
    return bank;
}

std::vector<SampledSignal> haar_wavelets(const TranslationSet& ts, const CanonicalMatrix& m, const Grid& grid) {
    const int twoN = 2 * ts.N;
    const auto chirps = haar_chirps(ts, m);
    const Matrix E = cell_mixing(twoN);
    const SampledSignal phi = haar_scaling(ts, grid);
    std::vector<SampledSignal> cells;
    for (int cell = 0; cell < twoN; ++cell)
        cells.push_back(dilate_chirp(phi, 1, ts.N, cell_translation(ts, cell), fourier()));
    std::vector<SampledSignal> out;
    for (int row = 1; row < twoN; ++row) {
        SampledSignal psi = zeros(grid);
        for (int cell = 0; cell < twoN; ++cell) axpy(chirps[cell / 2] * E[row][cell], cells[cell], psi);
        out.push_back(std::move(psi));
    }
    return out;
}

HatProduct::HatProduct(std::vector<const PeriodicFilterPair*> prefix, const PeriodicFilterPair& low, int depth)
    : prefix_(std::move(prefix)), low_(&low), depth_(depth), two_n_(2 * low.ts.N) {
    if (depth < 1) throw std::invalid_argument("hat product needs at least one low-pass factor");
    for (const auto* f : prefix_)
        if (f->ts.N != low.ts.N || f->ts.r != low.ts.r)
            throw std::invalid_argument("hat product: filters use different translation sets");
    const cplx at0 = filter_eval(low, 0.0);
    if (std::abs(at0 - 1.0) > 1e-10)
        throw std::invalid_argument("low-pass filter must equal 1 at u = 0 (got deviation " +
                                    format_double(std::abs(at0 - 1.0)) + ")");
    slope_ = filter_slope_at_zero(low) / static_cast<double>(two_n_ - 1);
}

std::pair<cplx, cplx> HatProduct::with_previous(double u) const {
    const double s = static_cast<double>(two_n_);
    double v = u;
    cplx P = 1.0;
    for (const auto* f : prefix_) {
        v /= s;
        P *= filter_eval(*f, v);
    }
    for (int j = 0; j < depth_ - 1; ++j) {
        v /= s;
        P *= filter_eval(*low_, v);
    }
    const cplx prev = P * std::exp(slope_ * v);
    v /= s;
    P *= filter_eval(*low_, v);
    return {P * std::exp(slope_ * v), prev};
}

cplx HatProduct::operator()(double u) const { return with_previous(u).first; }

std::vector<double> frequency_grid(const Grid& grid) {
    const std::size_t n = grid.count;
    const double L = static_cast<double>(n) * grid.step;
    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i)
        u[i] = (static_cast<double>(i) - static_cast<double>(n / 2)) / L;
    return u;
}

SampledSignal synthesize(const std::function<cplx(double)>& hat, const Grid& grid, int aliases) {
    const std::int64_t n = static_cast<std::int64_t>(grid.count);
    const std::int64_t i0 = grid.lattice_offset();
    const double L = static_cast<double>(n) * grid.step;
    const std::int64_t i0_mod = ((i0 % n) + n) % n;
    std::vector<cplx> acc(grid.count);
    parallel_for(grid.count, [&](std::size_t idx) {
        const std::int64_t k = static_cast<std::int64_t>(idx) - n / 2;
        cplx sum{};
        for (int m = -aliases; m <= aliases; ++m) {
            const std::int64_t kk = k + n * m;
            const double u = static_cast<double>(kk) / L;
            const double x = static_cast<double>(kk) / static_cast<double>(n);  // u * step
            cplx box = 1.0;
            if (kk != 0) box = std::polar(std::sin(kPi * x) / (kPi * x), kPi * x);
            sum += hat(u) * box;
        }
        // e^{2 pi i u t_min} depends only on k modulo n because t_min / step is an integer
        const std::int64_t r = (((k % n) + n) % n * i0_mod) % n;
        acc[idx] = sum * std::polar(1.0, 2.0 * kPi * static_cast<double>(r) / static_cast<double>(n));
    });
    const std::vector<cplx> y = dft(acc, +1);
    SampledSignal out = zeros(grid);
    for (std::size_t j = 0; j < grid.count; ++j) out.values[j] = (j % 2 == 0 ? 1.0 : -1.0) * y[j] / L;
    return out;
}

double max_tail_deviation(const HatProduct& hp, const std::vector<double>& u) {
    std::vector<double> dev(u.size());
    parallel_for(u.size(), [&](std::size_t i) {
        const auto [cur, prev] = hp.with_previous(u[i]);
        dev[i] = std::abs(cur - prev);
    });
    return dev.empty() ? 0.0 : *std::max_element(dev.begin(), dev.end());
}

CascadeResult cascade(const PeriodicFilterPair& p0, int J, double tol, const Grid& grid, int aliases) {
    const ScalingResidual sr = check_scaling_conditions(p0);
    if (std::max(sr.sum, sr.alternating) > 1e-8)
        throw std::invalid_argument("cascade: low-pass filter fails the scaling conditions (residual " +
                                    format_double(std::max(sr.sum, sr.alternating)) + ")");
    require_numra_step(p0.ts.N, grid.step);
    const HatProduct hp({}, p0, J);
    CascadeResult res;
    res.u = frequency_grid(grid);
    res.tail_deviation = max_tail_deviation(hp, res.u);
    if (res.tail_deviation > tol)
        throw ConvergenceError("cascade: product not converged at J = " + std::to_string(J) +
                                   ", tail deviation " + format_double(res.tail_deviation),
                               res.tail_deviation);
    res.hat.resize(res.u.size());
    std::vector<double> two_scale(res.u.size());
    const double s = 2.0 * p0.ts.N;
    parallel_for(res.u.size(), [&](std::size_t i) {
        const double u = res.u[i];
        res.hat[i] = hp(u);
        two_scale[i] = std::abs(res.hat[i] - filter_eval(p0, u / s) * hp(u / s));
    });
    res.two_scale_residual = *std::max_element(two_scale.begin(), two_scale.end());
    res.phi = synthesize(hp, grid, aliases);
    return res;
}

SampledSignal wavelet_from_filters(const HatProduct& phi_hat, const PeriodicFilterPair& pk, const Grid& grid,
                                   int aliases) {
    if (pk.ts.N * 2 != phi_hat.two_n()) throw std::invalid_argument("wavelet_from_filters: N mismatch");
    require_numra_step(pk.ts.N, grid.step);
    const double s = static_cast<double>(phi_hat.two_n());
    return synthesize([&](double u) { return filter_eval(pk, u / s) * phi_hat(u / s); }, grid, aliases);
}

GramReport gram(const std::vector<SampledSignal>& system) {
    GramReport rep;
    rep.size = system.size();
    rep.matrix.assign(rep.size * rep.size, cplx{});
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < rep.size; ++i)
        for (std::size_t j = i; j < rep.size; ++j) pairs.emplace_back(i, j);
    parallel_for(pairs.size(), [&](std::size_t p) {
        const auto [i, j] = pairs[p];
        const cplx v = inner_product(system[i], system[j]);
        rep.matrix[i * rep.size + j] = v;
        if (i != j) rep.matrix[j * rep.size + i] = std::conj(v);
    });
    for (std::size_t i = 0; i < rep.size; ++i)
        for (std::size_t j = 0; j < rep.size; ++j)
            rep.max_off_identity = std::max(rep.max_off_identity, std::abs(rep.at(i, j) - (i == j ? 1.0 : 0.0)));
    return rep;
}

GramReport cross_gram(const std::vector<SampledSignal>& a, const std::vector<SampledSignal>& b, double* max_abs) {
    GramReport rep;
    rep.size = b.size();
    rep.matrix.assign(a.size() * b.size(), cplx{});
    parallel_for(a.size() * b.size(), [&](std::size_t p) {
        rep.matrix[p] = inner_product(a[p / b.size()], b[p % b.size()]);
    });
    double worst = 0;
    for (const cplx& v : rep.matrix) worst = std::max(worst, std::abs(v));
    rep.max_off_identity = worst;
    if (max_abs) *max_abs = worst;
    return rep;
}

WaveletFamily haar_family(const TranslationSet& ts, const CanonicalMatrix& m, const Grid& grid) {
    require_numra_step(ts.N, grid.step);
    return {ts, m, haar_scaling(ts, grid), haar_wavelets(ts, m, grid), haar_filter_bank(ts, m)};
}

double ProjectionResult::coefficient_energy() const {
    double e = 0;
    for (const cplx& c : coeffs) e += std::norm(c);
    return e;
}

namespace {

std::pair<double, double> support(const SampledSignal& f) {
    double peak = 0;
    for (const cplx& v : f.values) peak = std::max(peak, std::abs(v));
    std::size_t first = f.grid.count, last = 0;
    for (std::size_t i = 0; i < f.grid.count; ++i)
        if (std::abs(f.values[i]) > 1e-14 * peak && peak > 0) {
            first = std::min(first, i);
            last = i;
        }
    if (first == f.grid.count) return {0.0, 0.0};
    return {f.grid.at(first), f.grid.at(last) + f.grid.step};
}

}  // namespace

std::pair<double, double> covering_window(const SampledSignal& f, const SampledSignal& generator, int j, int N) {
    const auto [a, b] = support(f);
    const auto [g_lo, g_hi] = support(generator);
    const double s = std::pow(2.0 * N, j);
    return {s * a - g_hi, s * b - g_lo};
}

ProjectionResult project(const SampledSignal& f, const WaveletFamily& fam, int j, double lambda_lo,
                         double lambda_hi, int max_level) {
    ProjectionResult res;
    res.signal = zeros(f.grid);
    const int N = fam.ts.N;
    res.lambdas = omega_enumerate(fam.ts, lambda_lo, lambda_hi);

    const auto [need_lo, need_hi] = covering_window(f, fam.phi, j, N);
    for (double lam : omega_enumerate(fam.ts, need_lo, need_hi)) {
        if (lam > need_lo && (lam < lambda_lo || lam >= lambda_hi)) {
            res.warnings.push_back("translation window does not cover the support of f at level " +
                                   std::to_string(j));
            break;
        }
    }
    const auto [g_lo, g_hi] = support(fam.phi);
    const double s = std::pow(2.0 * N, j);

    res.coeffs.resize(res.lambdas.size());
    std::vector<SampledSignal> elems(res.lambdas.size());
    parallel_for(res.lambdas.size(), [&](std::size_t i) {
        elems[i] = dilate_chirp_on(f.grid, fam.phi, j, N, res.lambdas[i], fam.m, max_level);
        res.coeffs[i] = inner_product(f, elems[i]);
    });
    bool truncated = false;
    for (std::size_t i = 0; i < elems.size(); ++i) {
        axpy(res.coeffs[i], elems[i], res.signal);
        const double lo = (g_lo + res.lambdas[i]) / s, hi = (g_hi + res.lambdas[i]) / s;
        if (res.coeffs[i] != cplx{} && (lo < f.grid.t_min || hi > f.grid.t_end())) truncated = true;
    }
    if (truncated)
        res.warnings.push_back("basis elements extend past the signal window; the returned signal is truncated");
    return res;
}

}  // namespace lctnumra
