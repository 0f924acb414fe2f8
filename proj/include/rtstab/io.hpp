#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rtstab/dispersion.hpp"
#include "rtstab/grid.hpp"
#include "rtstab/params.hpp"

namespace rtstab::io {

// Stable machine-facing exit codes. Human-readable text goes to stderr only.
enum ExitCode : int {
    kOk = 0,
    kConfig = 1,
    kStableConfiguration = 2,
    kNoConvergence = 3,
    kContour = 4,
    kIo = 5,
};

struct SymbolBlock {
    Complex lambda;
    std::vector<double> taus;
};

struct CurveBlock {
    int n_points = 128;
    double tol = 1e-10;
};

struct MaxBlock {
    double tol = 1e-9;
};

struct ZerosBlock {
    std::vector<double> taus;
    std::optional<Rectangle> region; // absent: parameter-scaled default
};

struct ProfileBlock {
    Complex lambda;
    double tau = 0.0;
    Complex h_amp{1.0, 0.0};
    int n_samples = 64;  // per phase, for the CSV export
    double y_max = 0.0;  // 0: one decay length
};

struct WitnessBlock {
    std::vector<double> xi0;
    std::vector<double> epsilons;
    double norm_p = 2.0;
    GridSpec grid;
    std::optional<double> lambda0; // off-curve override
};

struct InitialFieldSpec {
    std::string kind; // pure-mode | white-noise | file
    std::vector<double> mode;
    double amplitude = 1.0;
    std::string path;
};

struct SimulateBlock {
    GridSpec grid;
    InitialFieldSpec initial;
    std::vector<double> times;
    double table_tol = 1e-10;
};

struct RunConfig {
    FluidParams params;
    std::optional<SymbolBlock> symbol;
    std::optional<CurveBlock> curve;
    std::optional<MaxBlock> max;
    std::optional<ZerosBlock> zeros;
    std::optional<ProfileBlock> profile;
    std::optional<WitnessBlock> witness;
    std::optional<SimulateBlock> simulate;
    std::uint64_t seed = 0;
    int threads = 1;
};

// Strict parse: unknown keys, missing fields, wrong types and physical
// positivity violations are all collected and thrown as ConfigInvalid.
RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_text(const std::string& text);

// Executes one subcommand, writing artifacts and manifest.json into out_dir
// (created if missing). Returns a stable exit code; never throws.
int run_command(const std::string& cmd, const RunConfig& cfg,
                const std::string& out_dir);

// FNV-1a 64-bit content hash, hex-encoded (manifest entries).
std::string fnv1a64_hex(const std::string& bytes);

} // namespace rtstab::io
