#pragma once

#include <utility>
#include <vector>

#include "mimoic/equilibria.hpp"

namespace mimoic {

struct LinkRates {
    RealVector per_link; // bits per channel use
    double sum = 0.0;
};

struct SweepPoint {
    double snr_db = 0.0;
    double mean_sum_rate = 0.0;
};

double sinr(const ChannelRealization& r, const BeamformerProfile& profile, int link);

LinkRates link_rates(const ChannelRealization& r, const BeamformerProfile& profile);

double sum_rate(const ChannelRealization& r, const BeamformerProfile& profile);

// sum_i sum_{j != i} |v_i^H H_ij w_j|^2 P
double total_leakage(const ChannelRealization& r, const BeamformerProfile& profile);

// Least-squares slope of sum rate against SNR, in bits per 10 dB.
double slope_bits_per_decade(const std::vector<SweepPoint>& sweep);

// Slope divided by log2(10): the number of interference-free streams.
double multiplexing_gain(const std::vector<SweepPoint>& sweep);

} // namespace mimoic
