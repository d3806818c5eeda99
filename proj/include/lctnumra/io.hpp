#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "lctnumra/canonical.hpp"
#include "lctnumra/filters.hpp"
#include "lctnumra/lct.hpp"
#include "lctnumra/packets.hpp"
#include "lctnumra/sampling.hpp"

namespace lctnumra {

using Json = nlohmann::json;
namespace fs = std::filesystem;

// 17 significant digits, enough to round-trip any double.
std::string format_double(double x);

// Keys sorted, two-space indent, numbers through format_double, trailing newline.
std::string dump_json(const Json& j);

std::string read_file(const fs::path& p);
// Writes to a sibling temp file and renames it into place.
void write_atomic(const fs::path& p, const std::string& content);

std::string sha256_hex(const std::string& data);

// Sidecar metadata lives next to a CSV as <stem>.json.
fs::path sidecar_path(const fs::path& csv);

Json matrix_to_json(const CanonicalMatrix& m);
CanonicalMatrix matrix_from_json(const Json& j);
Json grid_to_json(const Grid& g);
Grid grid_from_json(const Json& j);

void write_signal(const fs::path& p, const SampledSignal& f);
SampledSignal read_signal(const fs::path& p);

void write_spectrum(const fs::path& p, const LctSpectrum& F);
LctSpectrum read_spectrum(const fs::path& p);

// Samples at u = k du for k < count, metadata {N, r}.
void write_filter(const fs::path& p, const PeriodicFilterPair& f);
PeriodicFilterPair read_filter(const fs::path& p);

void write_coefficients(const fs::path& p, const std::vector<Coefficient>& c);
std::vector<Coefficient> read_coefficients(const fs::path& p);

struct RunConfig {
    CanonicalMatrix matrix = fourier();
    bool permissive = false;
    TranslationSet ts{1, 1};
    Grid grid{-8.0, 1.0 / 1024, 16384};
    std::map<std::string, double> tolerances;
    std::string out_dir;
};

Json config_to_json(const RunConfig& c);
RunConfig config_from_json(const Json& j);
std::string config_hash(const Json& config);

}  // namespace lctnumra
