#include "lctnumra/lct.hpp"

#include <cmath>
#include <stdexcept>

#include "lctnumra/fft.hpp"
#include "lctnumra/parallel.hpp"

namespace lctnumra {

namespace {

void require_transform_matrix(const CanonicalMatrix& m) {
    if (m.b == 0.0) throw std::invalid_argument("chirp multiplication branch out of scope (b = 0)");
    require_valid(m);
}

bool fast_layout(const Grid& omega) {
    const double expected = -static_cast<double>(omega.count / 2) * omega.step;
    return std::abs(omega.t_min - expected) <= 1e-9 * omega.step * static_cast<double>(omega.count);
}

}  // namespace

Grid fast_omega_grid(const Grid& t, const CanonicalMatrix& m) {
    require_transform_matrix(m);
    const double n = static_cast<double>(t.count);
    const double dw = 2.0 * kPi * std::abs(m.b) / (n * t.step);
    return make_grid(-static_cast<double>(t.count / 2) * dw, dw, t.count);
}

Grid fast_time_grid(const Grid& omega, const CanonicalMatrix& m, double t_min) {
    require_transform_matrix(m);
    const double n = static_cast<double>(omega.count);
    return make_grid(t_min, 2.0 * kPi * std::abs(m.b) / (n * omega.step), omega.count);
}

LctSpectrum lct_direct(const SampledSignal& f, const CanonicalMatrix& m, const Grid& omega) {
    require_transform_matrix(m);
    LctSpectrum out{omega, std::vector<cplx>(omega.count)};
    const cplx root = kernel_root(m);
    const Grid& tg = f.grid;
    parallel_for(omega.count, [&](std::size_t k) {
        const double w = omega.at(k);
        cplx acc{};
        for (std::size_t j = 0; j < tg.count; ++j) {
            const cplx v = f.values[j];
            if (v == cplx{}) continue;
            const double t = tg.at(j);
            acc += v * std::polar(1.0, (m.a * t * t - 2.0 * t * w + m.d * w * w) / (2.0 * m.b));
        }
        out.values[k] = acc * tg.step / root;
    });
    return out;
}

LctSpectrum lct_fast(const SampledSignal& f, const CanonicalMatrix& m) {
    require_transform_matrix(m);
    const std::size_t n = f.grid.count;
    if (!is_power_of_two(n)) throw std::invalid_argument("lct_fast: sample count must be a power of two");
    const Grid omega = fast_omega_grid(f.grid, m);
    const int s = m.b > 0 ? 1 : -1;

    std::vector<cplx> g(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double t = f.grid.at(j);
        const double alt = (j % 2 == 0) ? 1.0 : -1.0;  // centres the frequency index
        g[j] = alt * f.values[j] * std::polar(1.0, m.a * t * t / (2.0 * m.b));
    }
    const std::vector<cplx> X = dft(g, -s);
    const cplx root = kernel_root(m);
    LctSpectrum out{omega, std::vector<cplx>(n)};
    for (std::size_t k = 0; k < n; ++k) {
        const double w = omega.at(k);
        const double phase = -f.grid.t_min * w / m.b + m.d * w * w / (2.0 * m.b);
        out.values[k] = X[k] * std::polar(1.0, phase) * f.grid.step / root;
    }
    return out;
}

SampledSignal ilct(const LctSpectrum& F, const CanonicalMatrix& m, const Grid& t) {
    require_transform_matrix(m);
    SampledSignal out = zeros(t);
    const cplx root_c = std::conj(kernel_root(m));
    parallel_for(t.count, [&](std::size_t j) {
        const double tj = t.at(j);
        cplx acc{};
        for (std::size_t k = 0; k < F.omega.count; ++k) {
            const cplx v = F.values[k];
            if (v == cplx{}) continue;
            const double w = F.omega.at(k);
            acc += v * std::polar(1.0, -(m.a * tj * tj - 2.0 * tj * w + m.d * w * w) / (2.0 * m.b));
        }
        out.values[j] = acc * F.omega.step / root_c;
    });
    return out;
}

SampledSignal ilct_fast(const LctSpectrum& F, const CanonicalMatrix& m, const Grid& t) {
    require_transform_matrix(m);
    const std::size_t n = F.omega.count;
    if (!is_power_of_two(n)) throw std::invalid_argument("ilct_fast: sample count must be a power of two");
    if (!fast_layout(F.omega)) throw std::invalid_argument("ilct_fast: omega grid is not in the fast layout");
    const Grid expect = fast_time_grid(F.omega, m, t.t_min);
    if (t.count != n || std::abs(t.step - expect.step) > 1e-12 * expect.step)
        throw std::invalid_argument("ilct_fast: time grid incompatible with the omega grid");
    const int s = m.b > 0 ? 1 : -1;

    std::vector<cplx> y(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double w = F.omega.at(k);
        const double phase = -m.d * w * w / (2.0 * m.b) + t.t_min * w / m.b;
        y[k] = F.values[k] * std::polar(1.0, phase);
    }
    const std::vector<cplx> Y = dft(y, s);
    const cplx root_c = std::conj(kernel_root(m));
    SampledSignal out = zeros(t);
    for (std::size_t j = 0; j < n; ++j) {
        const double tj = t.at(j);
        const double alt = (j % 2 == 0) ? 1.0 : -1.0;
        out.values[j] = alt * Y[j] * std::polar(1.0, -m.a * tj * tj / (2.0 * m.b)) * F.omega.step / root_c;
    }
    return out;
}

cplx spectrum_inner_product(const LctSpectrum& F, const LctSpectrum& G) {
    SampledSignal a{F.omega, F.values};
    SampledSignal b{G.omega, G.values};
    return inner_product(a, b);
}

double parseval_residual(const SampledSignal& f, const SampledSignal& g, const CanonicalMatrix& m) {
    const LctSpectrum F = lct_fast(f, m);
    const LctSpectrum G = lct_fast(g, m);
    return std::abs(spectrum_inner_product(F, G) - inner_product(f, g));
}

double relative_l2(const std::vector<cplx>& x, const std::vector<cplx>& ref) {
    if (x.size() != ref.size()) throw std::invalid_argument("relative_l2: size mismatch");
    double num = 0, den = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        num += std::norm(x[i] - ref[i]);
        den += std::norm(ref[i]);
    }
    if (den == 0) return std::sqrt(num);
    return std::sqrt(num / den);
}

}  // namespace lctnumra
