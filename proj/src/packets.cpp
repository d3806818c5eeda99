#include "lctnumra/packets.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "lctnumra/io.hpp"
#include "lctnumra/parallel.hpp"

namespace lctnumra {

PacketIndex digits(std::uint64_t n, int N) {
    if (N < 1) throw std::invalid_argument("digits: N must be positive");
    PacketIndex idx{n, N, {}};
    const std::uint64_t base = 2 * static_cast<std::uint64_t>(N);
    for (std::uint64_t v = n; v > 0; v /= base) idx.digits.push_back(static_cast<int>(v % base));
    return idx;
}

std::uint64_t reconstruct(const PacketIndex& idx) {
    const std::uint64_t base = 2 * static_cast<std::uint64_t>(idx.N);
    std::uint64_t n = 0;
    for (auto it = idx.digits.rbegin(); it != idx.digits.rend(); ++it) {
        if (*it < 0 || static_cast<std::uint64_t>(*it) >= base) throw std::invalid_argument("digit out of range");
        n = n * base + static_cast<std::uint64_t>(*it);
    }
    return n;
}

HatProduct packet_product(const PacketIndex& idx, const std::vector<PeriodicFilterPair>& bank, int depth) {
    if (bank.size() != 2 * static_cast<std::size_t>(idx.N))
        throw std::invalid_argument("packet product: bank must hold 2N filters");
    std::vector<const PeriodicFilterPair*> prefix;
    for (int d : idx.digits) prefix.push_back(&bank.at(static_cast<std::size_t>(d)));
    return HatProduct(std::move(prefix), bank[0], depth);
}

cplx packet_hat_value(const PacketIndex& idx, const std::vector<PeriodicFilterPair>& bank, int depth, double u) {
    return packet_product(idx, bank, depth)(u);
}

void certify_bank(const std::vector<PeriodicFilterPair>& bank, double tol) {
    const OrthoResidual r = bank_orthonormality(bank);
    if (std::max(r.sum, r.alternating) > tol)
        throw std::invalid_argument("filter bank is not certified: residual " +
                                    format_double(std::max(r.sum, r.alternating)));
}

PacketNode packet_hat(const PacketIndex& idx, const std::vector<PeriodicFilterPair>& bank, int depth, double tol,
                      const Grid& grid, int aliases) {
    require_numra_step(idx.N, grid.step);
    const HatProduct hp = packet_product(idx, bank, depth);
    PacketNode node;
    node.index = idx;
    node.u = frequency_grid(grid);
    node.tail_deviation = max_tail_deviation(hp, node.u);
    if (node.tail_deviation > tol)
        throw ConvergenceError("packet " + std::to_string(idx.n) + ": tail deviation " +
                                   format_double(node.tail_deviation),
                               node.tail_deviation);
    node.w_hat.resize(node.u.size());
    parallel_for(node.u.size(), [&](std::size_t i) { node.w_hat[i] = hp(node.u[i]); });
    node.w = synthesize(hp, grid, aliases);
    return node;
}

LabelledGram packet_gram(const std::vector<PacketNode>& nodes, const TranslationSet& ts, const CanonicalMatrix& m,
                         double lambda_lo, double lambda_hi) {
    LabelledGram out;
    std::vector<SampledSignal> system;
    const auto lambdas = omega_enumerate(ts, lambda_lo, lambda_hi);
    for (const PacketNode& node : nodes)
        for (double lam : lambdas) {
            system.push_back(translate_chirp(node.w, lam, m));
            out.n.push_back(node.index.n);
            out.lambda.push_back(lam);
        }
    out.gram = gram(system);
    return out;
}

FoldResidual check_folding(const HatProduct& hp, const TranslationSet& ts, const std::vector<double>& u, int range) {
    const int twoN = 2 * ts.N;
    auto fold = [&](double x, int R) {
        double h = 0;
        for (int j = -R; j <= R; ++j) h += std::norm(hp(x + static_cast<double>(ts.N) * j));
        return h;
    };
    std::vector<FoldResidual> per(u.size());
    parallel_for(u.size(), [&](std::size_t i) {
        cplx s{}, t{}, s_half{};
        for (int p = 0; p < twoN; ++p) {
            const double x = u[i] + 0.5 * p;
            const double h = fold(x, range);
            s += h;
            t += std::polar(1.0, -kPi * ts.r * p / ts.N) * h;
            s_half += fold(x, range / 2);
        }
        per[i] = {std::abs(s - 2.0), std::abs(t), std::abs(s - s_half)};
    });
    FoldResidual worst;
    for (const auto& r : per) {
        worst.sum = std::max(worst.sum, r.sum);
        worst.alternating = std::max(worst.alternating, r.alternating);
        worst.truncation = std::max(worst.truncation, r.truncation);
    }
    return worst;
}

PacketBasis make_packet_basis(const std::vector<BasisSpec>& spec, const TranslationSet& ts,
                              const CanonicalMatrix& m, const Grid& grid, double tol, int max_level) {
    PacketBasis basis{ts, m, {}, 0};
    for (const BasisSpec& s : spec) {
        if (!s.node) throw std::invalid_argument("basis spec without a packet");
        for (double lam : s.lambdas)
            basis.elements.push_back({s.node->index.n, s.level, lam, SampledSignal{}});
    }
    std::vector<const PacketNode*> owner;
    for (const BasisSpec& s : spec)
        for (std::size_t k = 0; k < s.lambdas.size(); ++k) owner.push_back(s.node);
    parallel_for(basis.elements.size(), [&](std::size_t i) {
        BasisElement& e = basis.elements[i];
        e.signal = dilate_chirp_on(grid, owner[i]->w, e.level, ts.N, e.lambda, m, max_level);
    });
    std::vector<SampledSignal> system;
    system.reserve(basis.elements.size());
    for (const auto& e : basis.elements) system.push_back(e.signal);
    basis.certification_residual = gram(system).max_off_identity;
    if (basis.certification_residual > tol)
        throw std::invalid_argument("packet basis is not certified: Gram residual " +
                                    format_double(basis.certification_residual) + " > " + format_double(tol));
    return basis;
}

std::vector<Coefficient> packet_analyze(const SampledSignal& f, const PacketBasis& basis) {
    std::vector<Coefficient> out(basis.elements.size());
    parallel_for(out.size(), [&](std::size_t i) {
        const BasisElement& e = basis.elements[i];
        out[i] = {e.n, e.level, e.lambda, inner_product(f, e.signal)};
    });
    return out;
}

SampledSignal packet_synthesize(const std::vector<Coefficient>& coeffs, const PacketBasis& basis) {
    if (basis.elements.empty()) throw std::invalid_argument("packet_synthesize: empty basis");
    if (coeffs.size() != basis.elements.size())
        throw std::invalid_argument("packet_synthesize: coefficient table does not match the basis");
    SampledSignal out = zeros(basis.elements.front().signal.grid);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const BasisElement& e = basis.elements[i];
        if (coeffs[i].n != e.n || coeffs[i].j != e.level || coeffs[i].lambda != e.lambda)
            throw std::invalid_argument("packet_synthesize: coefficient labels do not match the basis");
        axpy(coeffs[i].value, e.signal, out);
    }
    return out;
}

double coefficient_energy(const std::vector<Coefficient>& coeffs) {
    double e = 0;
    for (const auto& c : coeffs) e += std::norm(c.value);
    return e;
}

}  // namespace lctnumra
