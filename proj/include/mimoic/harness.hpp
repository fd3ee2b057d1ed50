#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mimoic/algorithms.hpp"
#include "mimoic/network.hpp"

namespace mimoic {

struct SweepConfig {
    std::string name;      // value of the `scenario` CSV column
    ScenarioSpec scenario; // snr_db is overridden by each grid point
    std::vector<double> snr_grid_db;
    std::vector<AlgorithmId> algorithms;
    int trials = 100;
    std::uint64_t base_seed = 1;
    RunSettings settings;
    std::string output_path;

    // Throws ValidationError naming the field.
    void validate() const;
};

// INI-style document with [scenario], [sweep] and [settings] sections.
// Unknown sections or keys are a ParseError; a well-formed document with bad
// values is a ValidationError.
SweepConfig parse_config(std::string_view text);
SweepConfig load_config(const std::string& path);
std::string render_config(const SweepConfig& cfg);

struct SweepRow {
    std::string scenario;
    AlgorithmId algorithm = AlgorithmId::DBA;
    double snr_db = 0.0;
    int trial = 0;
    std::uint64_t seed = 0;
    int iterations = 0;
    bool converged = false;
    bool failed = false;
    double sum_rate_bits = 0.0;
    double leakage = 0.0;
    double ia_residual = 0.0;
    // Not written to CSV.
    std::uint64_t init_hash = 0;
    std::string error;
};

struct SweepResult {
    std::vector<SweepRow> rows;
};

inline constexpr std::string_view kCsvHeader =
    "scenario,algorithm,snr_db,trial,seed,iterations,converged,sum_rate_bits,leakage,ia_residual";

// Trial t uses one channel draw with seed base_seed + t for every SNR point
// and algorithm; only the noise powers change along the SNR grid. Rows are
// ordered by (algorithm, snr, trial) in config order regardless of `workers`.
SweepResult run_sweep(const SweepConfig& cfg, int workers = 1);

std::uint64_t trial_seed(const SweepConfig& cfg, int trial);

void emit_csv(const SweepResult& result, std::ostream& out);
void emit_csv(const SweepResult& result, const std::string& path);
std::string to_csv(const SweepResult& result);
SweepResult parse_csv(std::string_view text);

// FNV-1a over the raw bytes of every beamformer entry.
std::uint64_t profile_hash(const BeamformerProfile& profile);

std::vector<std::string> preset_names();
std::string preset_description(std::string_view name);
SweepConfig preset(std::string_view name);

// Explicit request, else $MIMOIC_PARALLEL, else hardware concurrency.
int resolve_workers(std::optional<int> requested);

} // namespace mimoic
