#include "lctnumra/filters.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "lctnumra/io.hpp"

namespace lctnumra {

namespace {

cplx poly_eval(const std::vector<cplx>& c, double u) {
    // Horner in z = e^{-4 pi i u}
    const cplx z = std::polar(1.0, -4.0 * kPi * u);
    cplx acc{};
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
}

std::size_t nearest_index(double u, std::size_t count) {
    const double du = 0.5 / static_cast<double>(count);
    double red = std::fmod(u, 0.5);
    if (red < 0) red += 0.5;
    auto idx = static_cast<long long>(std::llround(red / du));
    return static_cast<std::size_t>(idx % static_cast<long long>(count));
}

void require_sizes(const PeriodicFilterPair& p) {
    const std::size_t n = p.count();
    if (n == 0 || p.lam2.size() != n) throw std::invalid_argument("filter pair: component sizes differ or are empty");
}

void require_layout(const PeriodicFilterPair& p) {
    require_sizes(p);
    const std::size_t n = p.count();
    if (n % (4 * static_cast<std::size_t>(p.ts.N)) != 0)
        throw std::invalid_argument("filter grid count " + std::to_string(n) + " is not a multiple of 4N");
}

void require_matching(const PeriodicFilterPair& a, const PeriodicFilterPair& b) {
    if (a.ts.N != b.ts.N || a.ts.r != b.ts.r) throw std::invalid_argument("filter pairs use different translation sets");
    if (a.count() != b.count()) throw std::invalid_argument("filter pairs use different u grids");
}

std::vector<cplx> alternating_weights(const TranslationSet& ts) {
    std::vector<cplx> w(2 * ts.N);
    for (int p = 0; p < 2 * ts.N; ++p) w[p] = std::polar(1.0, -kPi * ts.r * p / ts.N);
    return w;
}

using Vec = std::vector<cplx>;

cplx dot(const Vec& x, const Vec& y) {  // x^H y
    cplx acc{};
    for (std::size_t i = 0; i < x.size(); ++i) acc += std::conj(x[i]) * y[i];
    return acc;
}

double vnorm(const Vec& x) { return std::sqrt(std::max(0.0, dot(x, x).real())); }

// Unitary U on C^2 with U alpha parallel to beta (identity when either vanishes).
std::array<cplx, 4> unitary_map(const std::array<cplx, 2>& alpha, const std::array<cplx, 2>& beta) {
    const double na = std::sqrt(std::norm(alpha[0]) + std::norm(alpha[1]));
    const double nb = std::sqrt(std::norm(beta[0]) + std::norm(beta[1]));
    if (na < 1e-14 || nb < 1e-14) return {1.0, 0.0, 0.0, 1.0};
    const cplx a0 = alpha[0] / na, a1 = alpha[1] / na;
    const cplx b0 = beta[0] / nb, b1 = beta[1] / nb;
    // Columns [a, a_perp] and [b, b_perp]; U = B A^H, row-major.
    const cplx ap0 = -std::conj(a1), ap1 = std::conj(a0);
    const cplx bp0 = -std::conj(b1), bp1 = std::conj(b0);
    return {b0 * std::conj(a0) + bp0 * std::conj(ap0), b0 * std::conj(a1) + bp0 * std::conj(ap1),
            b1 * std::conj(a0) + bp1 * std::conj(ap0), b1 * std::conj(a1) + bp1 * std::conj(ap1)};
}

}  // namespace

std::pair<std::pair<double, double>, std::pair<double, double>> TranslationSet::spectral_set() const {
    return {{0.0, 0.5}, {N / 2.0, (N + 1) / 2.0}};
}

TranslationSet make_translation_set(int N, int r) {
    if (N < 1) throw std::invalid_argument("translation set: N must be positive");
    if (r < 1 || r > 2 * N - 1) throw std::invalid_argument("translation set: r must lie in [1, 2N-1]");
    if (r % 2 == 0) throw std::invalid_argument("translation set: r must be odd");
    if (std::gcd(r, N) != 1) throw std::invalid_argument("translation set: gcd(r, N) must be 1");
    return {N, r};
}

std::vector<int> valid_offsets(int N) {
    std::vector<int> out;
    for (int r = 1; r <= 2 * N - 1; r += 2)
        if (std::gcd(r, N) == 1) out.push_back(r);
    return out;
}

std::vector<double> omega_enumerate(const TranslationSet& ts, double lo, double hi) {
    std::vector<double> out;
    if (!(hi > lo)) return out;
    const auto n_lo = static_cast<long long>(std::floor((lo - ts.offset()) / 2.0)) - 1;
    const auto n_hi = static_cast<long long>(std::ceil(hi / 2.0)) + 1;
    for (long long n = n_lo; n <= n_hi; ++n) {
        for (double x : {2.0 * n, 2.0 * n + ts.offset()})
            if (x >= lo && x < hi) out.push_back(x);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

cplx PeriodicFilterPair::comp1(double u) const {
    if (coeffs) return poly_eval(coeffs->c1, u);
    return lam1[nearest_index(u, count())];
}

cplx PeriodicFilterPair::comp2(double u) const {
    if (coeffs) return poly_eval(coeffs->c2, u);
    return lam2[nearest_index(u, count())];
}

PeriodicFilterPair sample_filter(const TranslationSet& ts, std::size_t count,
                                 const std::function<cplx(double)>& comp1,
                                 const std::function<cplx(double)>& comp2) {
    PeriodicFilterPair p{ts, Vec(count), Vec(count), std::nullopt};
    for (std::size_t i = 0; i < count; ++i) {
        const double u = static_cast<double>(i) * p.du();
        p.lam1[i] = comp1(u);
        p.lam2[i] = comp2(u);
    }
    require_sizes(p);
    return p;
}

PeriodicFilterPair filter_from_coefficients(const TranslationSet& ts, std::size_t count,
                                            FilterCoefficients coeffs) {
    auto c1 = coeffs.c1;
    auto c2 = coeffs.c2;
    PeriodicFilterPair p = sample_filter(
        ts, count, [&](double u) { return poly_eval(c1, u); }, [&](double u) { return poly_eval(c2, u); });
    p.coeffs = std::move(coeffs);
    return p;
}

cplx filter_eval(const PeriodicFilterPair& p, double u) {
    return p.comp1(u) + std::polar(1.0, -2.0 * kPi * u * p.ts.r / p.ts.N) * p.comp2(u);
}

double m0(const PeriodicFilterPair& p, double u) { return std::norm(p.comp1(u)) + std::norm(p.comp2(u)); }

cplx filter_slope_at_zero(const PeriodicFilterPair& p) {
    const double shift = static_cast<double>(p.ts.r) / p.ts.N;
    if (p.coeffs) {
        cplx s1{}, s2{}, v2{};
        for (std::size_t n = 0; n < p.coeffs->c1.size(); ++n)
            s1 += p.coeffs->c1[n] * cplx(0, -4.0 * kPi * static_cast<double>(n));
        for (std::size_t n = 0; n < p.coeffs->c2.size(); ++n) {
            s2 += p.coeffs->c2[n] * cplx(0, -4.0 * kPi * static_cast<double>(n));
            v2 += p.coeffs->c2[n];
        }
        return s1 + s2 + cplx(0, -2.0 * kPi * shift) * v2;
    }
    const double h = p.du();
    return (filter_eval(p, h) - filter_eval(p, -h)) / (2.0 * h);
}

double check_m0_period(const PeriodicFilterPair& p) {
    require_sizes(p);
    const std::size_t n = p.count();
    if (!p.coeffs && n % 2 != 0) throw std::invalid_argument("filter grid count must be even");
    double worst = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = std::norm(p.lam1[i]) + std::norm(p.lam2[i]);
        double b;
        if (p.coeffs) {
            b = m0(p, static_cast<double>(i) * p.du() + 0.25);
        } else {
            const std::size_t k = (i + n / 2) % n;  // 1/4 in u is half of the stored period
            b = std::norm(p.lam1[k]) + std::norm(p.lam2[k]);
        }
        worst = std::max(worst, std::abs(b - a));
    }
    return worst;
}

namespace {

// Values at u_i + p/(4N) for every sample i and shift p, row-major in (i, p).
// Coefficient filters are evaluated exactly; sampled ones need 4N | count.
struct ShiftTable {
    std::vector<cplx> c1, c2;
};

ShiftTable shift_table(const PeriodicFilterPair& f) {
    const std::size_t n = f.count();
    const std::size_t twoN = 2 * static_cast<std::size_t>(f.ts.N);
    if (!f.coeffs) require_layout(f);
    else require_sizes(f);
    ShiftTable t{Vec(n * twoN), Vec(n * twoN)};
    const std::size_t stride = n / twoN;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t p = 0; p < twoN; ++p) {
            if (f.coeffs) {
                const double u = static_cast<double>(i) * f.du() + static_cast<double>(p) / (2.0 * twoN);
                t.c1[i * twoN + p] = f.comp1(u);
                t.c2[i * twoN + p] = f.comp2(u);
            } else {
                const std::size_t k = (i + p * stride) % n;
                t.c1[i * twoN + p] = f.lam1[k];
                t.c2[i * twoN + p] = f.lam2[k];
            }
        }
    return t;
}

OrthoResidual ortho_from_tables(const ShiftTable& a, const ShiftTable& b, const TranslationSet& ts,
                                std::size_t n, bool same_index) {
    const std::size_t twoN = 2 * static_cast<std::size_t>(ts.N);
    const Vec w = alternating_weights(ts);
    const double delta = same_index ? 1.0 : 0.0;
    OrthoResidual res;
    for (std::size_t i = 0; i < n; ++i) {
        cplx s{}, t{};
        for (std::size_t p = 0; p < twoN; ++p) {
            const std::size_t k = i * twoN + p;
            const cplx g = a.c1[k] * std::conj(b.c1[k]) + a.c2[k] * std::conj(b.c2[k]);
            s += g;
            t += w[p] * g;
        }
        res.sum = std::max(res.sum, std::abs(s - delta));
        res.alternating = std::max(res.alternating, std::abs(t));
    }
    return res;
}

}  // namespace

OrthoResidual check_orthonormality(const PeriodicFilterPair& pl, const PeriodicFilterPair& pk,
                                   bool same_index) {
    require_matching(pl, pk);
    return ortho_from_tables(shift_table(pl), shift_table(pk), pl.ts, pl.count(), same_index);
}

ScalingResidual check_scaling_conditions(const PeriodicFilterPair& p0) {
    const OrthoResidual r = check_orthonormality(p0, p0, true);
    return {r.sum, r.alternating};
}

std::vector<PeriodicFilterPair> complete_filters(const PeriodicFilterPair& p0, double precondition_tol) {
    require_layout(p0);
    const ScalingResidual sr = check_scaling_conditions(p0);
    if (sr.sum > precondition_tol)
        throw std::invalid_argument("complete_filters: scaling sum residual " + format_double(sr.sum) +
                                    " exceeds " + format_double(precondition_tol));
    if (sr.alternating > precondition_tol)
        throw std::invalid_argument("complete_filters: scaling alternating residual " +
                                    format_double(sr.alternating) + " exceeds " + format_double(precondition_tol));
    const double per = check_m0_period(p0);
    if (per > precondition_tol)
        throw std::invalid_argument("complete_filters: m0 quarter-period residual " + format_double(per) +
                                    " exceeds " + format_double(precondition_tol));

    const int N = p0.ts.N;
    const int twoN = 2 * N;
    const std::size_t n = p0.count();
    const std::size_t stride = n / static_cast<std::size_t>(twoN);
    const std::size_t dim = 2 * static_cast<std::size_t>(twoN);

    std::vector<PeriodicFilterPair> out(twoN - 1, PeriodicFilterPair{p0.ts, Vec(n), Vec(n), std::nullopt});

    // Coordinates: index 2p + c holds component c+1 at u + p/(4N). The
    // conditions pair shift p with p + N; inside each pair the admissible
    // vectors form the graph of a unitary map, and the seeds span that graph.
    for (std::size_t i = 0; i < stride; ++i) {
        Vec x0(dim);
        for (int p = 0; p < twoN; ++p) {
            const std::size_t k = i + static_cast<std::size_t>(p) * stride;
            x0[2 * p] = p0.lam1[k];
            x0[2 * p + 1] = p0.lam2[k];
        }
        const double n0 = vnorm(x0);
        for (auto& v : x0) v /= n0;

        std::vector<Vec> seeds;
        for (int p = 0; p < N; ++p) {
            const std::array<cplx, 2> alpha{x0[2 * p], x0[2 * p + 1]};
            const std::array<cplx, 2> beta{x0[2 * (p + N)], x0[2 * (p + N) + 1]};
            const auto U = unitary_map(alpha, beta);
            for (int c = 0; c < 2; ++c) {
                Vec s(dim);
                s[2 * p + c] = 1.0 / std::sqrt(2.0);
                s[2 * (p + N)] = U[0 * 2 + c] / std::sqrt(2.0);
                s[2 * (p + N) + 1] = U[1 * 2 + c] / std::sqrt(2.0);
                seeds.push_back(std::move(s));
            }
        }
        // Skip the seed most parallel to the low-pass vector; ties go to the later seed.
        std::size_t skip = 0;
        double best = -1;
        for (std::size_t s = 0; s < seeds.size(); ++s) {
            const double c = std::abs(dot(x0, seeds[s]));
            if (c >= best - 1e-12) {
                best = std::max(best, c);
                skip = s;
            }
        }
        std::vector<Vec> basis{x0};
        for (std::size_t s = 0; s < seeds.size(); ++s) {
            if (s == skip) continue;
            Vec v = seeds[s];
            for (int pass = 0; pass < 2; ++pass) {
                for (const Vec& q : basis) {
                    const cplx c = dot(q, v);
                    for (std::size_t t = 0; t < dim; ++t) v[t] -= c * q[t];
                }
            }
            const double nv = vnorm(v);
            if (nv < 1e-8) throw std::runtime_error("complete_filters: degenerate seed");
            for (auto& x : v) x /= nv;
            basis.push_back(std::move(v));
        }
        for (int k = 1; k < twoN; ++k) {
            for (int p = 0; p < twoN; ++p) {
                const std::size_t idx = i + static_cast<std::size_t>(p) * stride;
                out[k - 1].lam1[idx] = basis[k][2 * p];
                out[k - 1].lam2[idx] = basis[k][2 * p + 1];
            }
        }
    }
    return out;
}

OrthoResidual bank_orthonormality(const std::vector<PeriodicFilterPair>& bank) {
    std::vector<ShiftTable> tables;
    for (const auto& f : bank) {
        require_matching(bank.front(), f);
        tables.push_back(shift_table(f));
    }
    OrthoResidual worst;
    for (std::size_t l = 0; l < bank.size(); ++l)
        for (std::size_t k = 0; k < bank.size(); ++k) {
            const OrthoResidual r = ortho_from_tables(tables[l], tables[k], bank[l].ts, bank[l].count(), l == k);
            worst.sum = std::max(worst.sum, r.sum);
            worst.alternating = std::max(worst.alternating, r.alternating);
        }
    return worst;
}

}  // namespace lctnumra
