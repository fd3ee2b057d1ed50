#include "mimoic/network.hpp"

#include <cmath>
#include <utility>

#include "mimoic/errors.hpp"
#include "mimoic/rng.hpp"
#include "mimoic/units.hpp"

namespace mimoic {

void NetworkConfig::validate() const {
    if (n_links < 1)
        throw InvalidConfig("n_links must be >= 1");
    if (n_tx_ant < 1 || n_rx_ant < 1)
        throw InvalidConfig("antenna counts must be >= 1");
    if (alpha.rows() != n_links || alpha.cols() != n_links)
        throw InvalidConfig("alpha must be n_links x n_links");
    if (noise_power.size() != n_links)
        throw InvalidConfig("noise_power must have n_links entries");
    for (int j = 0; j < n_links; ++j) {
        for (int i = 0; i < n_links; ++i) {
            const double a = alpha(j, i);
            if (!std::isfinite(a) || a < 0.0)
                throw InvalidConfig("alpha entries must be finite and >= 0");
        }
        if (!(alpha(j, j) > 0.0))
            throw InvalidConfig("direct gains alpha_ii must be > 0");
        if (!std::isfinite(noise_power(j)) || !(noise_power(j) > 0.0))
            throw InvalidConfig("noise powers must be > 0");
    }
    if (!std::isfinite(tx_power) || !(tx_power > 0.0))
        throw InvalidConfig("tx_power must be > 0");
}

ChannelRealization::ChannelRealization(NetworkConfig config, std::vector<ComplexMatrix> h_bar,
                                       std::uint64_t seed)
    : config_(std::move(config)), h_bar_(std::move(h_bar)), seed_(seed) {
    config_.validate();
    const auto n = static_cast<std::size_t>(config_.n_links);
    if (h_bar_.size() != n * n)
        throw InvalidConfig("h_bar must hold n_links^2 matrices");
    for (const auto& h : h_bar_)
        if (h.rows() != config_.n_rx_ant || h.cols() != config_.n_tx_ant)
            throw InvalidConfig("h_bar matrices must be n_rx_ant x n_tx_ant");
}

void ChannelRealization::check_index(int rx, int tx) const {
    if (rx < 0 || tx < 0 || rx >= config_.n_links || tx >= config_.n_links)
        throw std::out_of_range("link index out of range");
}

const ComplexMatrix& ChannelRealization::h_bar(int rx, int tx) const {
    check_index(rx, tx);
    return h_bar_[static_cast<std::size_t>(rx * config_.n_links + tx)];
}

ComplexMatrix ChannelRealization::channel(int rx, int tx) const {
    return std::sqrt(config_.alpha(rx, tx)) * h_bar(rx, tx);
}

ChannelRealization ChannelRealization::rebind(NetworkConfig config) const {
    if (config.n_links != config_.n_links || config.n_tx_ant != config_.n_tx_ant ||
        config.n_rx_ant != config_.n_rx_ant)
        throw InvalidConfig("rebind requires identical dimensions");
    return ChannelRealization(std::move(config), h_bar_, seed_);
}

void ChannelRealization::set_h_bar(int rx, int tx, ComplexMatrix value) {
    check_index(rx, tx);
    if (value.rows() != config_.n_rx_ant || value.cols() != config_.n_tx_ant)
        throw InvalidConfig("h_bar matrices must be n_rx_ant x n_tx_ant");
    h_bar_[static_cast<std::size_t>(rx * config_.n_links + tx)] = std::move(value);
}

ChannelRealization draw_realization(const NetworkConfig& config, std::uint64_t seed) {
    config.validate();
    Xoshiro256 rng(seed);
    std::vector<ComplexMatrix> h_bar;
    h_bar.reserve(static_cast<std::size_t>(config.n_links * config.n_links));
    for (int rx = 0; rx < config.n_links; ++rx) {
        for (int tx = 0; tx < config.n_links; ++tx) {
            ComplexMatrix h(config.n_rx_ant, config.n_tx_ant);
            for (int r = 0; r < config.n_rx_ant; ++r)
                for (int c = 0; c < config.n_tx_ant; ++c)
                    h(r, c) = rng.complex_gaussian();
            h_bar.push_back(std::move(h));
        }
    }
    return ChannelRealization(config, std::move(h_bar), seed);
}

ComplexMatrix effective_channel(const ChannelRealization& r, int rx, int tx) {
    return r.channel(rx, tx);
}

std::string_view to_string(ScenarioFamily family) {
    switch (family) {
    case ScenarioFamily::Symmetric: return "symmetric";
    case ScenarioFamily::AsymNoise: return "asym_noise";
    case ScenarioFamily::AsymSir: return "asym_sir";
    case ScenarioFamily::WeakDirect: return "weak_direct";
    }
    return "unknown";
}

ScenarioFamily parse_family(std::string_view text) {
    for (auto f : {ScenarioFamily::Symmetric, ScenarioFamily::AsymNoise, ScenarioFamily::AsymSir,
                   ScenarioFamily::WeakDirect})
        if (to_string(f) == text)
            return f;
    throw InvalidConfig("unknown scenario family '" + std::string(text) + "'");
}

void ScenarioSpec::validate() const {
    if (n_links < 1)
        throw InvalidConfig("n_links must be >= 1");
    if (n_tx_ant < 1)
        throw InvalidConfig("n_tx_ant must be >= 1");
    if (n_rx_ant < 1)
        throw InvalidConfig("n_rx_ant must be >= 1");
    if (!std::isfinite(snr_db))
        throw InvalidConfig("snr_db must be finite");
    if (static_cast<int>(sir_db.size()) != n_links)
        throw InvalidConfig("sir_db must have n_links entries");
    for (double s : sir_db)
        if (!std::isfinite(s))
            throw InvalidConfig("sir_db entries must be finite");
    if (!std::isfinite(delta_noise_db) || delta_noise_db < 0.0)
        throw InvalidConfig("delta_noise_db must be finite and >= 0");
    if (!std::isfinite(delta_direct_db) || delta_direct_db < 0.0)
        throw InvalidConfig("delta_direct_db must be finite and >= 0");
    if (victim_link < 0 || victim_link >= n_links)
        throw InvalidConfig("victim_link out of range");

    const bool noise_family = family == ScenarioFamily::AsymNoise || family == ScenarioFamily::AsymSir;
    if (!noise_family && delta_noise_db != 0.0)
        throw InvalidConfig("delta_noise_db is only valid for asym_noise/asym_sir");
    if (family != ScenarioFamily::WeakDirect && delta_direct_db != 0.0)
        throw InvalidConfig("delta_direct_db is only valid for weak_direct");
}

NetworkConfig build_scenario(const ScenarioSpec& spec) {
    spec.validate();
    const int n = spec.n_links;
    NetworkConfig cfg;
    cfg.n_links = n;
    cfg.n_tx_ant = spec.n_tx_ant;
    cfg.n_rx_ant = spec.n_rx_ant;
    cfg.tx_power = 1.0;
    cfg.alpha = RealMatrix::Zero(n, n);
    cfg.noise_power = RealVector::Zero(n);

    const double gamma = db_to_linear(spec.snr_db);
    for (int i = 0; i < n; ++i) {
        // Only the direct channel weakens: cross gains and noise keep their
        // nominal levels, so the victim loses delta_direct_db of SIR and SNR.
        cfg.alpha(i, i) = 1.0;
        if (spec.family == ScenarioFamily::WeakDirect && i == spec.victim_link)
            cfg.alpha(i, i) = db_to_linear(-spec.delta_direct_db);
        if (n > 1) {
            const double cross = 1.0 / ((n - 1) * db_to_linear(spec.sir_db[static_cast<std::size_t>(i)]));
            for (int j = 0; j < n; ++j)
                if (j != i)
                    cfg.alpha(i, j) = cross;
        }
        double noise = cfg.tx_power / gamma;
        if (i == spec.victim_link)
            noise *= db_to_linear(spec.delta_noise_db);
        cfg.noise_power(i) = noise;
    }
    cfg.validate();
    return cfg;
}

} // namespace mimoic
