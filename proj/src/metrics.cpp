#include "mimoic/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace mimoic {

double sinr(const ChannelRealization& r, const BeamformerProfile& profile, int link) {
    const auto& cfg = r.config();
    const auto& v = profile.rx[static_cast<std::size_t>(link)];
    const double signal =
        std::norm(v.dot(r.channel(link, link) * profile.tx[static_cast<std::size_t>(link)])) * cfg.tx_power;
    double interference = 0.0;
    for (int j = 0; j < cfg.n_links; ++j)
        if (j != link)
            interference += std::norm(v.dot(r.channel(link, j) * profile.tx[static_cast<std::size_t>(j)])) * cfg.tx_power;
    return signal / (interference + cfg.noise_power(link));
}

LinkRates link_rates(const ChannelRealization& r, const BeamformerProfile& profile) {
    LinkRates out;
    out.per_link.resize(r.n_links());
    for (int i = 0; i < r.n_links(); ++i) {
        out.per_link(i) = std::log2(1.0 + sinr(r, profile, i));
        out.sum += out.per_link(i);
    }
    return out;
}

double sum_rate(const ChannelRealization& r, const BeamformerProfile& profile) {
    return link_rates(r, profile).sum;
}

double total_leakage(const ChannelRealization& r, const BeamformerProfile& profile) {
    const auto& cfg = r.config();
    double leak = 0.0;
    for (int i = 0; i < cfg.n_links; ++i)
        for (int j = 0; j < cfg.n_links; ++j)
            if (j != i)
                leak += std::norm(profile.rx[static_cast<std::size_t>(i)].dot(
                            r.channel(i, j) * profile.tx[static_cast<std::size_t>(j)])) *
                        cfg.tx_power;
    return leak;
}

double slope_bits_per_decade(const std::vector<SweepPoint>& sweep) {
    if (sweep.size() < 2)
        throw std::invalid_argument("slope needs at least two sweep points");
    double mx = 0.0, my = 0.0;
    for (const auto& p : sweep) {
        mx += p.snr_db;
        my += p.mean_sum_rate;
    }
    mx /= static_cast<double>(sweep.size());
    my /= static_cast<double>(sweep.size());
    double sxx = 0.0, sxy = 0.0;
    for (const auto& p : sweep) {
        sxx += (p.snr_db - mx) * (p.snr_db - mx);
        sxy += (p.snr_db - mx) * (p.mean_sum_rate - my);
    }
    if (sxx == 0.0)
        throw std::invalid_argument("slope needs distinct SNR values");
    return 10.0 * sxy / sxx;
}

double multiplexing_gain(const std::vector<SweepPoint>& sweep) {
    return slope_bits_per_decade(sweep) / std::log2(10.0);
}

} // namespace mimoic
