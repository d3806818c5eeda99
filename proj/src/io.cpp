#include "lctnumra/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unistd.h>

namespace lctnumra {

std::string format_double(double x) {
    if (x == 0) return "0";  // folds -0 as well, keeping reports stable
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

void dump_value(const Json& j, std::string& out, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) { out += "{}"; return; }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {  // std::map keeps keys sorted
                if (!first) out += ",\n";
                first = false;
                out += inner + Json(it.key()).dump() + ": ";
                dump_value(it.value(), out, indent + 1);
            }
            out += "\n" + pad + "}";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) { out += "[]"; return; }
            out += "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) out += ",\n";
                out += inner;
                dump_value(j[i], out, indent + 1);
            }
            out += "\n" + pad + "]";
            return;
        }
        case Json::value_t::number_float: {
            const double v = j.get<double>();
            out += std::isfinite(v) ? format_double(v) : "null";
            return;
        }
        default:
            out += j.dump();
    }
}

std::vector<std::vector<double>> read_csv(const fs::path& p, const std::string& header) {
    std::ifstream in(p);
    if (!in) throw std::runtime_error("cannot open " + p.string());
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(p.string() + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != header) throw std::runtime_error(p.string() + ": expected header '" + header + "'");
    const std::size_t cols = static_cast<std::size_t>(std::count(header.begin(), header.end(), ',')) + 1;
    std::vector<std::vector<double>> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        std::vector<double> row;
        const char* s = line.c_str();
        while (true) {
            char* end = nullptr;
            const double v = std::strtod(s, &end);
            if (end == s) throw std::runtime_error(p.string() + ":" + std::to_string(lineno) + ": bad number");
            row.push_back(v);
            s = end;
            if (*s == ',') { ++s; continue; }
            break;
        }
        if (row.size() != cols)
            throw std::runtime_error(p.string() + ":" + std::to_string(lineno) + ": expected " +
                                     std::to_string(cols) + " columns");
        rows.push_back(std::move(row));
    }
    return rows;
}

Json read_json(const fs::path& p) {
    try {
        return Json::parse(read_file(p));
    } catch (const Json::exception& e) {
        throw std::runtime_error(p.string() + ": " + e.what());
    }
}

// Grid from a sidecar if present, else inferred from the first column.
Grid grid_for(const fs::path& p, const std::vector<std::vector<double>>& rows) {
    const fs::path side = sidecar_path(p);
    if (fs::exists(side)) {
        Grid g = grid_from_json(read_json(side));
        if (g.count != rows.size()) throw std::runtime_error(p.string() + ": row count disagrees with sidecar");
        return g;
    }
    if (rows.size() < 2) throw std::runtime_error(p.string() + ": need a sidecar or at least two rows");
    return make_grid(rows[0][0], rows[1][0] - rows[0][0], rows.size());
}

}  // namespace

std::string dump_json(const Json& j) {
    std::string out;
    dump_value(j, out, 0);
    out += "\n";
    return out;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_atomic(const fs::path& p, const std::string& content) {
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    fs::path tmp = p;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, p);
}

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256 failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

fs::path sidecar_path(const fs::path& csv) {
    fs::path s = csv;
    s.replace_extension(".json");
    return s;
}

Json matrix_to_json(const CanonicalMatrix& m) { return {{"a", m.a}, {"b", m.b}, {"c", m.c}, {"d", m.d}}; }

CanonicalMatrix matrix_from_json(const Json& j) {
    return {j.at("a").get<double>(), j.at("b").get<double>(), j.at("c").get<double>(), j.at("d").get<double>()};
}

Json grid_to_json(const Grid& g) { return {{"t_min", g.t_min}, {"step", g.step}, {"count", g.count}}; }

Grid grid_from_json(const Json& j) {
    return make_grid(j.at("t_min").get<double>(), j.at("step").get<double>(), j.at("count").get<std::size_t>());
}

void write_signal(const fs::path& p, const SampledSignal& f) {
    std::string out = "t,re,im\n";
    for (std::size_t i = 0; i < f.values.size(); ++i)
        out += format_double(f.grid.at(i)) + "," + format_double(f.values[i].real()) + "," +
               format_double(f.values[i].imag()) + "\n";
    write_atomic(p, out);
    write_atomic(sidecar_path(p), dump_json(grid_to_json(f.grid)));
}

SampledSignal read_signal(const fs::path& p) {
    const auto rows = read_csv(p, "t,re,im");
    SampledSignal f{grid_for(p, rows), {}};
    for (const auto& r : rows) f.values.emplace_back(r[1], r[2]);
    return f;
}

void write_spectrum(const fs::path& p, const LctSpectrum& F) {
    std::string out = "omega,re,im\n";
    for (std::size_t i = 0; i < F.values.size(); ++i)
        out += format_double(F.omega.at(i)) + "," + format_double(F.values[i].real()) + "," +
               format_double(F.values[i].imag()) + "\n";
    write_atomic(p, out);
    write_atomic(sidecar_path(p), dump_json(grid_to_json(F.omega)));
}

LctSpectrum read_spectrum(const fs::path& p) {
    const auto rows = read_csv(p, "omega,re,im");
    LctSpectrum F{grid_for(p, rows), {}};
    for (const auto& r : rows) F.values.emplace_back(r[1], r[2]);
    return F;
}

void write_filter(const fs::path& p, const PeriodicFilterPair& f) {
    std::string out = "u,re1,im1,re2,im2\n";
    for (std::size_t k = 0; k < f.count(); ++k) {
        const double u = static_cast<double>(k) * f.du();
        const cplx a = f.comp1(u), b = f.comp2(u);
        out += format_double(u) + "," + format_double(a.real()) + "," + format_double(a.imag()) + "," +
               format_double(b.real()) + "," + format_double(b.imag()) + "\n";
    }
    write_atomic(p, out);
    write_atomic(sidecar_path(p), dump_json(Json{{"N", f.ts.N}, {"r", f.ts.r}}));
}

PeriodicFilterPair read_filter(const fs::path& p) {
    const auto rows = read_csv(p, "u,re1,im1,re2,im2");
    const Json meta = read_json(sidecar_path(p));
    PeriodicFilterPair f{make_translation_set(meta.at("N").get<int>(), meta.at("r").get<int>()), {}, {}, {}};
    if (rows.empty()) throw std::runtime_error(p.string() + ": no filter samples");
    const double du = 0.5 / static_cast<double>(rows.size());
    for (std::size_t k = 0; k < rows.size(); ++k) {
        if (std::abs(rows[k][0] - static_cast<double>(k) * du) > 1e-9)
            throw std::runtime_error(p.string() + ": samples must cover [0, 1/2) uniformly");
        f.lam1.emplace_back(rows[k][1], rows[k][2]);
        f.lam2.emplace_back(rows[k][3], rows[k][4]);
    }
    return f;
}

void write_coefficients(const fs::path& p, const std::vector<Coefficient>& c) {
    std::string out = "n,j,lambda,re,im\n";
    for (const auto& e : c)
        out += std::to_string(e.n) + "," + std::to_string(e.j) + "," + format_double(e.lambda) + "," +
               format_double(e.value.real()) + "," + format_double(e.value.imag()) + "\n";
    write_atomic(p, out);
}

std::vector<Coefficient> read_coefficients(const fs::path& p) {
    std::vector<Coefficient> out;
    for (const auto& r : read_csv(p, "n,j,lambda,re,im"))
        out.push_back({static_cast<std::uint64_t>(r[0]), static_cast<int>(r[1]), r[2], cplx(r[3], r[4])});
    return out;
}

Json config_to_json(const RunConfig& c) {
    Json tol = Json::object();
    for (const auto& [k, v] : c.tolerances) tol[k] = v;
    return {{"matrix", matrix_to_json(c.matrix)},
            {"permissive", c.permissive},
            {"translation_set", {{"N", c.ts.N}, {"r", c.ts.r}}},
            {"grid", grid_to_json(c.grid)},
            {"tolerances", tol},
            {"output_dir", c.out_dir}};
}

RunConfig config_from_json(const Json& j) {
    RunConfig c;
    c.matrix = matrix_from_json(j.at("matrix"));
    c.permissive = j.value("permissive", false);
    const Json& ts = j.at("translation_set");
    c.ts = make_translation_set(ts.at("N").get<int>(), ts.at("r").get<int>());
    c.grid = grid_from_json(j.at("grid"));
    for (auto it = j.at("tolerances").begin(); it != j.at("tolerances").end(); ++it) {
        const double v = it.value().get<double>();
        if (!(v > 0)) throw std::invalid_argument("tolerance '" + it.key() + "' must be positive");
        c.tolerances[it.key()] = v;
    }
    c.out_dir = j.value("output_dir", std::string{});
    return c;
}

std::string config_hash(const Json& config) { return sha256_hex(dump_json(config)); }

}  // namespace lctnumra
