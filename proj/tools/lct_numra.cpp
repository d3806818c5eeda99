// Command-line front end. Exit codes: 0 success, 1 usage or I/O error,
// 2 verification failure (the report is still written).
#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lctnumra/canonical.hpp"
#include "lctnumra/filters.hpp"
#include "lctnumra/io.hpp"
#include "lctnumra/lct.hpp"
#include "lctnumra/packets.hpp"
#include "lctnumra/reference.hpp"
#include "lctnumra/sampling.hpp"
#include "lctnumra/scaling.hpp"

using namespace lctnumra;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kFailed = 2;

// Accumulates residuals against their tolerances and renders the common report shape.
class Report {
public:
    explicit Report(Json config) : config_(std::move(config)) {}

    void residual(const std::string& name, double value, double tol) {
        tolerances_[name] = tol;
        const bool pass = value <= tol;
        residuals_[name] = {{"value", value}, {"tolerance", tol}, {"pass", pass}};
        if (!pass) violations_.push_back(name + " residual " + format_double(value) + " exceeds " + format_double(tol));
    }
    void violation(const std::string& v) { violations_.push_back(v); }
    void warning(const std::string& w) { warnings_.push_back(w); }
    void set(const std::string& key, Json value) { extra_[key] = std::move(value); }
    bool ok() const { return violations_.empty(); }

    Json json() const {
        Json out = extra_;
        out["config"] = config_;
        out["config_hash"] = config_hash(config_);
        out["tolerances"] = tolerances_;
        out["residuals"] = residuals_;
        out["violations"] = violations_;
        out["warnings"] = warnings_;
        out["status"] = ok() ? "pass" : "fail";
        return out;
    }

    int write(const std::string& path) const {
        write_atomic(path, dump_json(json()));
        return ok() ? kOk : kFailed;
    }

private:
    Json config_;
    Json tolerances_ = Json::object();
    Json residuals_ = Json::object();
    Json violations_ = Json::array();
    Json warnings_ = Json::array();
    Json extra_ = Json::object();
};

std::pair<double, double> parse_pair(const std::string& s) {
    std::stringstream ss(s);
    std::string a, b;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || ss.rdbuf()->in_avail() != 0)
        throw std::invalid_argument("expected 'lo,hi', got '" + s + "'");
    const double lo = std::stod(a), hi = std::stod(b);
    if (!(hi > lo)) throw std::invalid_argument("window must satisfy lo < hi");
    return {lo, hi};
}

Json validation_json(const ValidationReport& v) {
    return {{"ok", v.ok}, {"det", v.det}, {"violations", v.violations}, {"warnings", v.warnings}};
}

std::vector<PeriodicFilterPair> read_bank(const fs::path& dir) {
    std::vector<PeriodicFilterPair> bank{read_filter(dir / "filters.csv")};
    for (int k = 1; k < 2 * bank[0].ts.N; ++k) bank.push_back(read_filter(dir / ("filters_" + std::to_string(k) + ".csv")));
    return bank;
}

// Options shared by the grid-producing subcommands.
struct GridOptions {
    std::string window = "-8,8";
    double step = 1.0 / 1024;

    void attach(CLI::App* app) {
        app->add_option("--window", window, "time window lo,hi")->capture_default_str();
        app->add_option("--step", step, "time step")->capture_default_str();
    }
    Grid grid() const {
        const auto [lo, hi] = parse_pair(window);
        return grid_covering(lo, hi, step);
    }
};

// ---- matrix ----

struct MatrixCmd {
    std::string matrix, report_path;
    bool permissive = false;

    int run() const {
        const CanonicalMatrix m = parse_matrix(matrix);
        const ValidationReport v = validate(m, permissive);
        Report r({{"command", "matrix"}, {"matrix", matrix_to_json(m)}, {"permissive", permissive}});
        r.set("validation", validation_json(v));
        r.set("det", v.det);
        for (const auto& s : v.violations) r.violation(s);
        for (const auto& s : v.warnings) r.warning(s);
        return r.write(report_path);
    }
};

// ---- lct ----

struct LctCmd {
    std::string direction, matrix, method = "fast", in, out;
    std::optional<double> t_min;

    int run() const {
        const CanonicalMatrix m = parse_matrix(matrix);
        require_valid(m);
        if (method != "fast" && method != "direct") throw std::invalid_argument("--method must be fast or direct");
        if (direction == "fwd") {
            const SampledSignal f = read_signal(in);
            const LctSpectrum F = method == "fast" ? lct_fast(f, m) : lct_direct(f, m, fast_omega_grid(f.grid, m));
            write_spectrum(out, F);
        } else {
            const LctSpectrum F = read_spectrum(in);
            const double h = fast_time_grid(F.omega, m, 0.0).step;
            const double start = t_min.value_or(-static_cast<double>(F.omega.count / 2) * h);
            const Grid t = fast_time_grid(F.omega, m, start);
            write_signal(out, method == "fast" ? ilct_fast(F, m, t) : ilct(F, m, t));
        }
        return kOk;
    }
};

// ---- haar ----

struct HaarCmd {
    int N = 1, r = 1;
    std::string matrix = "0,1,-1,0", out_dir, config_path;
    bool permissive = false;
    std::size_t samples = kDefaultFilterSamples;
    GridOptions grid_opts;
    double filter_tol = 1e-12, gram_tol = 1e-3;

    RunConfig config(const CLI::App& app) const {
        RunConfig c;
        if (!config_path.empty()) c = config_from_json(Json::parse(read_file(config_path)));
        if (config_path.empty() || app.count("--matrix")) c.matrix = parse_matrix(matrix);
        if (config_path.empty() || app.count("--allow-nonunimodular")) c.permissive = permissive;
        if (config_path.empty() || app.count("--N") || app.count("--r"))
            c.ts = make_translation_set(app.count("--N") || config_path.empty() ? N : c.ts.N,
                                        app.count("--r") || config_path.empty() ? r : c.ts.r);
        if (config_path.empty() || app.count("--window") || app.count("--step")) c.grid = grid_opts.grid();
        c.tolerances.emplace("filters", filter_tol);
        c.tolerances.emplace("gram", gram_tol);
        if (app.count("--filter-tol")) c.tolerances["filters"] = filter_tol;
        if (app.count("--gram-tol")) c.tolerances["gram"] = gram_tol;
        if (!out_dir.empty()) c.out_dir = out_dir;
        if (c.out_dir.empty()) throw std::invalid_argument("haar: --out-dir is required");
        return c;
    }

    int run(const CLI::App& app) const {
        const RunConfig c = config(app);
        Json cfg = config_to_json(c);
        cfg.erase("output_dir");  // reruns into other directories share one hash
        cfg["command"] = "haar";
        cfg["filter_samples"] = samples;
        Report rep(cfg);
        const fs::path dir = c.out_dir;

        const ValidationReport v = validate(c.matrix, c.permissive);
        rep.set("validation", validation_json(v));
        for (const auto& s : v.warnings) rep.warning(s);
        if (!v.ok) {
            for (const auto& s : v.violations) rep.violation(s);
            return rep.write((dir / "verify.json").string());
        }

        const double ftol = c.tolerances.at("filters"), gtol = c.tolerances.at("gram");
        const auto bank = haar_filter_bank(c.ts, c.matrix, samples);
        const OrthoResidual o = bank_orthonormality(bank);
        const ScalingResidual s = check_scaling_conditions(bank[0]);
        rep.residual("shift_orthonormality", o.sum, ftol);
        rep.residual("shift_alternating", o.alternating, ftol);
        rep.residual("m0_quarter_period", check_m0_period(bank[0]), ftol);
        rep.residual("scaling_sum", s.sum, ftol);
        rep.residual("scaling_alternating", s.alternating, ftol);

        const WaveletFamily fam = haar_family(c.ts, c.matrix, c.grid);
        std::vector<SampledSignal> system;
        for (double lam : omega_enumerate(c.ts, -2.0, 2.25)) {
            system.push_back(translate_chirp(fam.phi, lam, c.matrix));
            for (const auto& psi : fam.psi) system.push_back(translate_chirp(psi, lam, c.matrix));
        }
        rep.residual("wavelet_system_gram", gram(system).max_off_identity, gtol);

        write_signal(dir / "phi.csv", fam.phi);
        for (std::size_t k = 0; k < fam.psi.size(); ++k)
            write_signal(dir / ("psi_" + std::to_string(k + 1) + ".csv"), fam.psi[k]);
        write_filter(dir / "filters.csv", bank[0]);
        for (std::size_t k = 1; k < bank.size(); ++k)
            write_filter(dir / ("filters_" + std::to_string(k) + ".csv"), bank[k]);

        const CanonicalMatrix fixture = discrepancy_matrix();
        if (c.ts.N == 2 && c.matrix.a == fixture.a && c.matrix.b == fixture.b && c.matrix.c == fixture.c &&
            c.matrix.d == fixture.d)
            write_atomic(dir / "reference_gram.json", dump_json(discrepancy_report()));

        return rep.write((dir / "verify.json").string());
    }
};

// ---- cascade ----

struct CascadeCmd {
    std::string filters, out, report_path;
    int J = kDefaultDepth;
    double tol = kDefaultTailTol;
    int aliases = kDefaultAliases;
    GridOptions grid_opts;

    int run() const {
        const PeriodicFilterPair p0 = read_filter(filters);
        const Grid g = grid_opts.grid();
        Report rep({{"command", "cascade"}, {"filters", filters}, {"J", J}, {"tol", tol}, {"aliases", aliases},
                    {"grid", grid_to_json(g)}});
        try {
            const CascadeResult res = cascade(p0, J, tol, g, aliases);
            write_signal(out, res.phi);
            rep.residual("tail_deviation", res.tail_deviation, tol);
            rep.set("two_scale_residual", res.two_scale_residual);
        } catch (const ConvergenceError& e) {
            rep.residual("tail_deviation", e.deviation(), tol);
        }
        if (report_path.empty()) {
            if (!rep.ok()) std::cerr << "cascade: " << rep.json()["violations"].dump() << "\n";
            return rep.ok() ? kOk : kFailed;
        }
        return rep.write(report_path);
    }
};

// ---- verify ----

struct VerifyCmd {
    std::vector<std::string> filters;
    std::string report_path;
    double tol = 1e-10;

    int run() const {
        std::vector<PeriodicFilterPair> bank;
        for (const auto& f : filters) bank.push_back(read_filter(f));
        Report rep({{"command", "verify"}, {"filters", filters}, {"tol", tol}});
        const OrthoResidual o = bank_orthonormality(bank);
        const ScalingResidual s = check_scaling_conditions(bank[0]);
        rep.residual("shift_orthonormality", o.sum, tol);
        rep.residual("shift_alternating", o.alternating, tol);
        rep.residual("m0_quarter_period", check_m0_period(bank[0]), tol);
        rep.residual("scaling_sum", s.sum, tol);
        rep.residual("scaling_alternating", s.alternating, tol);
        Json pairs = Json::array();
        for (std::size_t l = 0; l < bank.size(); ++l)
            for (std::size_t k = 0; k < bank.size(); ++k) {
                const OrthoResidual r = check_orthonormality(bank[l], bank[k], l == k);
                pairs.push_back({{"l", l}, {"k", k}, {"sum", r.sum}, {"alternating", r.alternating}});
            }
        rep.set("pairs", pairs);
        return rep.write(report_path);
    }
};

// ---- packets ----

struct PacketsGenCmd {
    std::uint64_t n_max = 8;
    std::string filters_dir, out_dir, matrix = "0,1,-1,0";
    bool permissive = false;
    int J = kDefaultDepth;
    double tol = kDefaultTailTol;
    GridOptions grid_opts;

    int run() const {
        const CanonicalMatrix m = parse_matrix(matrix);
        require_valid(m, permissive);
        const auto bank = read_bank(filters_dir);
        const Grid g = grid_opts.grid();
        const fs::path dir = out_dir;
        Report rep({{"command", "packets gen"}, {"filters", filters_dir}, {"n_max", n_max}, {"J", J}, {"tol", tol},
                    {"grid", grid_to_json(g)}, {"matrix", matrix_to_json(m)}});
        const OrthoResidual o = bank_orthonormality(bank);
        rep.residual("bank_orthonormality", std::max(o.sum, o.alternating), 1e-8);
        Json nodes = Json::array();
        if (rep.ok()) {
            for (std::uint64_t n = 0; n <= n_max; ++n) {
                const PacketNode node = packet_hat(digits(n, bank[0].ts.N), bank, J, tol, g);
                const std::string name = "packet_" + std::to_string(n) + ".csv";
                write_signal(dir / name, node.w);
                nodes.push_back({{"n", n}, {"digits", node.index.digits}, {"file", name},
                                 {"tail_deviation", node.tail_deviation}});
            }
        }
        rep.set("nodes", nodes);
        rep.set("translation_set", {{"N", bank[0].ts.N}, {"r", bank[0].ts.r}});
        rep.set("matrix", matrix_to_json(m));
        return rep.write((dir / "packets.json").string());
    }
};

struct PacketsGramCmd {
    std::string nodes_dir, window = "-4,4", report_path;
    double tol = 1e-3;

    int run() const {
        const fs::path dir = nodes_dir;
        const Json manifest = Json::parse(read_file(dir / "packets.json"));
        const TranslationSet ts = make_translation_set(manifest.at("translation_set").at("N").get<int>(),
                                                       manifest.at("translation_set").at("r").get<int>());
        const CanonicalMatrix m = matrix_from_json(manifest.at("matrix"));
        const auto [lo, hi] = parse_pair(window);
        std::vector<PacketNode> nodes;
        for (const auto& entry : manifest.at("nodes")) {
            PacketNode node;
            node.index = digits(entry.at("n").get<std::uint64_t>(), ts.N);
            node.w = read_signal(dir / entry.at("file").get<std::string>());
            nodes.push_back(std::move(node));
        }
        // Inclusive upper end: nudge past hi by less than the lattice spacing.
        const LabelledGram lg = packet_gram(nodes, ts, m, lo, hi + 0.5 / ts.N);
        Report rep({{"command", "packets gram"}, {"nodes", nodes_dir}, {"window", {lo, hi}}, {"tol", tol}});
        rep.residual("packet_gram", lg.gram.max_off_identity, tol);
        rep.set("size", lg.gram.size);
        rep.set("n", lg.n);
        rep.set("lambda", lg.lambda);
        return rep.write(report_path);
    }
};

// ---- project ----

struct ProjectCmd {
    std::string in, out, out_signal, report_path, matrix = "0,1,-1,0", window;
    int N = 1, r = 1, level = 0;
    bool permissive = false;

    int run() const {
        const CanonicalMatrix m = parse_matrix(matrix);
        require_valid(m, permissive);
        const SampledSignal f = read_signal(in);
        const TranslationSet ts = make_translation_set(N, r);
        const WaveletFamily fam = haar_family(ts, m, f.grid);
        auto [lo, hi] = window.empty() ? covering_window(f, fam.phi, level, N) : parse_pair(window);
        const ProjectionResult res = project(f, fam, level, lo, hi);
        std::vector<Coefficient> table;
        for (std::size_t i = 0; i < res.lambdas.size(); ++i) table.push_back({0, level, res.lambdas[i], res.coeffs[i]});
        write_coefficients(out, table);
        if (!out_signal.empty()) write_signal(out_signal, res.signal);
        if (!report_path.empty()) {
            Report rep({{"command", "project"}, {"input", in}, {"matrix", matrix_to_json(m)}, {"N", N}, {"r", r},
                        {"level", level}, {"window", {lo, hi}}});
            for (const auto& w : res.warnings) rep.warning(w);
            const double nf = l2_norm(f);
            rep.set("norm_ratio", nf > 0 ? l2_norm(res.signal) / nf : 0.0);
            rep.set("coefficient_energy", res.coefficient_energy());
            return rep.write(report_path);
        }
        for (const auto& w : res.warnings) std::cerr << "warning: " << w << "\n";
        return kOk;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Linear canonical transform and nonuniform multiresolution toolkit"};
    app.require_subcommand(1);

    MatrixCmd mc;
    auto* matrix = app.add_subcommand("matrix", "validate a canonical matrix");
    matrix->add_option("--matrix", mc.matrix, "a,b,c,d")->required();
    matrix->add_flag("--allow-nonunimodular", mc.permissive, "downgrade det != 1 to a warning");
    matrix->add_option("--report", mc.report_path, "report JSON")->required();

    LctCmd lc;
    auto* lct = app.add_subcommand("lct", "forward or inverse transform");
    lct->add_option("direction", lc.direction, "fwd or inv")->required()->check(CLI::IsMember({"fwd", "inv"}));
    lct->add_option("--matrix", lc.matrix, "a,b,c,d")->required();
    lct->add_option("--method", lc.method, "fast or direct")->check(CLI::IsMember({"fast", "direct"}));
    lct->add_option("--in", lc.in)->required();
    lct->add_option("--out", lc.out)->required();
    lct->add_option("--t-min", lc.t_min, "first time sample for the inverse");

    HaarCmd hc;
    auto* haar = app.add_subcommand("haar", "explicit Haar family with verification report");
    haar->add_option("--config", hc.config_path, "run configuration JSON");
    haar->add_option("--N", hc.N)->capture_default_str();
    haar->add_option("--r", hc.r)->capture_default_str();
    haar->add_option("--matrix", hc.matrix)->capture_default_str();
    haar->add_flag("--allow-nonunimodular", hc.permissive);
    haar->add_option("--samples", hc.samples, "filter samples on [0, 1/2)")->capture_default_str();
    haar->add_option("--filter-tol", hc.filter_tol)->capture_default_str();
    haar->add_option("--gram-tol", hc.gram_tol)->capture_default_str();
    haar->add_option("--out-dir", hc.out_dir);
    hc.grid_opts.attach(haar);

    CascadeCmd cc;
    auto* casc = app.add_subcommand("cascade", "scaling function from a low-pass filter");
    casc->add_option("--filters", cc.filters)->required();
    casc->add_option("--J", cc.J)->capture_default_str();
    casc->add_option("--tol", cc.tol)->capture_default_str();
    casc->add_option("--aliases", cc.aliases)->capture_default_str();
    casc->add_option("--out", cc.out)->required();
    casc->add_option("--report", cc.report_path);
    cc.grid_opts.attach(casc);

    VerifyCmd vc;
    auto* verify = app.add_subcommand("verify", "check filter conditions");
    verify->add_option("--filters", vc.filters, "filter CSV, low-pass first; repeat for more")->required();
    verify->add_option("--tol", vc.tol)->capture_default_str();
    verify->add_option("--report", vc.report_path)->required();

    auto* packets = app.add_subcommand("packets", "wavelet packets");
    packets->require_subcommand(1);
    PacketsGenCmd pg;
    auto* gen = packets->add_subcommand("gen", "generate packets W_0..W_nmax");
    gen->add_option("--n-max", pg.n_max)->capture_default_str();
    gen->add_option("--filters", pg.filters_dir, "directory with filters.csv, filters_k.csv")->required();
    gen->add_option("--out-dir", pg.out_dir)->required();
    gen->add_option("--matrix", pg.matrix)->capture_default_str();
    gen->add_flag("--allow-nonunimodular", pg.permissive);
    gen->add_option("--J", pg.J)->capture_default_str();
    gen->add_option("--tol", pg.tol)->capture_default_str();
    pg.grid_opts.attach(gen);
    PacketsGramCmd pgr;
    auto* pgram = packets->add_subcommand("gram", "Gram matrix of chirped packet translates");
    pgram->add_option("--nodes", pgr.nodes_dir)->required();
    pgram->add_option("--window", pgr.window)->capture_default_str();
    pgram->add_option("--tol", pgr.tol)->capture_default_str();
    pgram->add_option("--report", pgr.report_path)->required();

    ProjectCmd pc;
    auto* proj = app.add_subcommand("project", "project a signal onto V_j");
    proj->add_option("--in", pc.in)->required();
    proj->add_option("--out", pc.out, "coefficient CSV")->required();
    proj->add_option("--out-signal", pc.out_signal);
    proj->add_option("--report", pc.report_path);
    proj->add_option("--matrix", pc.matrix)->capture_default_str();
    proj->add_flag("--allow-nonunimodular", pc.permissive);
    proj->add_option("--N", pc.N)->capture_default_str();
    proj->add_option("--r", pc.r)->capture_default_str();
    proj->add_option("--level", pc.level)->capture_default_str();
    proj->add_option("--window", pc.window, "translation window lo,hi");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return kUsage;
    }

    try {
        if (*matrix) return mc.run();
        if (*lct) return lc.run();
        if (*haar) return hc.run(*haar);
        if (*casc) return cc.run();
        if (*verify) return vc.run();
        if (*gen) return pg.run();
        if (*pgram) return pgr.run();
        if (*proj) return pc.run();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
