#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "mimoic/equilibria.hpp"

namespace mimoic {

enum class AlgorithmId { DBA, SRMAX, MAXSINR, ALTMIN, EGO_ONLY, ALT_ONLY };

std::string_view to_string(AlgorithmId id);
AlgorithmId parse_algorithm(std::string_view text);

enum class InitMode { FixedBasis, SeededRandom };

std::string_view to_string(InitMode mode);
InitMode parse_init_mode(std::string_view text);

struct RunSettings {
    int max_iters = 500;
    double tol_sumrate = 1e-3; // bits
    InitMode init_mode = InitMode::FixedBasis;
    int restarts = 1;
    std::uint64_t seed = 0; // seeded_random initialization and restarts
    LambdaDirectGain lambda_gain = LambdaDirectGain::Own;

    // Throws InvalidConfig.
    void validate() const;
};

struct IterationRecord {
    double sum_rate = 0.0;
    double leakage = 0.0;
    double max_beamformer_delta = 0.0;
};

using IterationTrace = std::vector<IterationRecord>;

struct RunResult {
    BeamformerProfile profile;
    BeamformerProfile initial;
    IterationTrace trace;
    bool converged = false;
    int iterations = 0;
    double sum_rate = 0.0;
};

// Transmit vectors are e_1 (FixedBasis) or drawn from the seeded generator;
// receive vectors are the Max-SINR receivers for those transmitters, so every
// algorithm starts from the same complete profile.
BeamformerProfile initial_profile(const ChannelRealization& r, InitMode mode, std::uint64_t seed);

// Runs `settings.restarts` independent starts and keeps the best final sum
// rate. The first start uses `initial` when given, otherwise
// `settings.init_mode`; further starts are seeded_random.
RunResult run_algorithm(AlgorithmId id, const ChannelRealization& r, const RunSettings& settings);
RunResult run_algorithm(AlgorithmId id, const ChannelRealization& r, const RunSettings& settings,
                        const BeamformerProfile& initial);

RunResult run_dba(const ChannelRealization& r, const RunSettings& settings);
RunResult run_srmax(const ChannelRealization& r, const RunSettings& settings);
RunResult run_maxsinr(const ChannelRealization& r, const RunSettings& settings);
RunResult run_altmin(const ChannelRealization& r, const RunSettings& settings);

// One sweep of each algorithm, starting from `profile`.
BeamformerProfile dba_step(const ChannelRealization& r, const BeamformerProfile& profile, const LambdaMatrix& lambdas);
BeamformerProfile srmax_step(const ChannelRealization& r, const BeamformerProfile& profile);
BeamformerProfile maxsinr_step(const ChannelRealization& r, const BeamformerProfile& profile);
BeamformerProfile altmin_step(const ChannelRealization& r, const BeamformerProfile& profile);
BeamformerProfile alt_only_step(const ChannelRealization& r, const BeamformerProfile& profile);

// max_{i, j != i} |v_i^H H_ij w_j|^2 P
double ia_residual(const ChannelRealization& r, const BeamformerProfile& profile);

// Applies one DBA sweep with uniform lambda = -lambda_magnitude to a profile
// that is interference-aligned (residual <= 1e-8) and returns the residual of
// the result.
double ia_stability_probe(const ChannelRealization& r, const BeamformerProfile& profile_in_ia,
                          double lambda_magnitude);

struct OracleResult {
    double sum_rate = 0.0;
    BeamformerProfile profile;
};

// Exhaustive search over w_i = (cos t, sin t e^{jp}) with `grid_density`
// points per angle and Max-SINR receivers. Requires n_tx_ant == 2 and
// n_links <= 3.
OracleResult brute_force_sumrate(const ChannelRealization& r, int grid_density);

} // namespace mimoic
