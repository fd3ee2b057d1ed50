#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mimoic/numerics.hpp"

namespace mimoic {

// Static description of a coordination cluster. alpha(j, i) is the average
// power gain from Tx i to Rx j; noise_power(i) folds thermal noise and
// out-of-cluster interference at Rx i into one white term.
struct NetworkConfig {
    int n_links = 0;
    int n_tx_ant = 0;
    int n_rx_ant = 0;
    RealMatrix alpha;
    RealVector noise_power;
    double tx_power = 1.0;

    // Throws InvalidConfig.
    void validate() const;

    double snr(int link) const { return tx_power * alpha(link, link) / noise_power(link); }
};

class ChannelRealization {
public:
    ChannelRealization(NetworkConfig config, std::vector<ComplexMatrix> h_bar, std::uint64_t seed);

    const NetworkConfig& config() const noexcept { return config_; }
    std::uint64_t seed() const noexcept { return seed_; }
    int n_links() const noexcept { return config_.n_links; }

    // Small-scale fading from Tx `tx` to Rx `rx`, entries CN(0, 1).
    const ComplexMatrix& h_bar(int rx, int tx) const;

    // sqrt(alpha(rx, tx)) * h_bar(rx, tx).
    ComplexMatrix channel(int rx, int tx) const;

    // Same fading draw under a different large-scale configuration with
    // identical dimensions.
    ChannelRealization rebind(NetworkConfig config) const;

    // Replaces one fading matrix (used to construct special instances).
    void set_h_bar(int rx, int tx, ComplexMatrix value);

private:
    void check_index(int rx, int tx) const;

    NetworkConfig config_;
    std::vector<ComplexMatrix> h_bar_; // row-major over (rx, tx)
    std::uint64_t seed_;
};

ChannelRealization draw_realization(const NetworkConfig& config, std::uint64_t seed);

ComplexMatrix effective_channel(const ChannelRealization& r, int rx, int tx);

enum class ScenarioFamily { Symmetric, AsymNoise, AsymSir, WeakDirect };

std::string_view to_string(ScenarioFamily family);
ScenarioFamily parse_family(std::string_view text);

struct ScenarioSpec {
    ScenarioFamily family = ScenarioFamily::Symmetric;
    int n_links = 3;
    int n_tx_ant = 2;
    int n_rx_ant = 2;
    double snr_db = 20.0;
    std::vector<double> sir_db{0.0, 0.0, 0.0};
    double delta_noise_db = 0.0;
    double delta_direct_db = 0.0;
    int victim_link = 0; // zero-based

    // Throws InvalidConfig naming the offending field.
    void validate() const;
};

// Nominal direct gains are 1 and cross gains into Rx i are split evenly so
// that 1 / sum_{j != i} alpha_ij equals SIR_i; noise is P / snr for every
// receiver. AsymNoise/AsymSir raise the victim's noise by delta_noise_db.
// WeakDirect lowers only the victim's direct gain by delta_direct_db, so its
// SIR and SNR both drop by that amount. P = 1.
NetworkConfig build_scenario(const ScenarioSpec& spec);

} // namespace mimoic
