#pragma once

#include <vector>

#include "mimoic/network.hpp"
#include "mimoic/numerics.hpp"

namespace mimoic {

// Unit-norm transmit vectors w_i (dim n_tx_ant) and receive vectors v_i
// (dim n_rx_ant), one per link.
struct BeamformerProfile {
    std::vector<ComplexVector> tx;
    std::vector<ComplexVector> rx;

    int n_links() const noexcept { return static_cast<int>(tx.size()); }
};

// Throws PreconditionViolation when sizes or norms are off.
void validate_profile(const ChannelRealization& r, const BeamformerProfile& profile);

// Entry (j, i) weighs the altruistic matrix of Tx i towards Rx j. The
// diagonal is unused and kept at zero.
struct LambdaMatrix {
    RealMatrix values;

    double operator()(int victim, int tx) const { return values(victim, tx); }
    static LambdaMatrix uniform(int n_links, double value);
};

// Selects the direct gain in the heuristic lambda denominator
// sigma_j^2 / (P alpha). `Own` uses alpha_ii (the formula as printed),
// `Victim` uses alpha_jj.
enum class LambdaDirectGain { Own, Victim };

// sum_{j != i} P H_ij w_j w_j^H H_ij^H + sigma_i^2 I
ComplexMatrix interference_covariance(const ChannelRealization& r, const BeamformerProfile& profile, int link);

// C_Ri^{-1} H_ii w_i, normalized and phase-canonical.
ComplexVector max_sinr_receiver(const ChannelRealization& r, const BeamformerProfile& profile, int link);

// E_i = H_ii^H v_i v_i^H H_ii
ComplexMatrix egoistic_matrix(const ChannelRealization& r, const BeamformerProfile& profile, int link);

// A_ji = H_ji^H v_j v_j^H H_ji
ComplexMatrix altruistic_matrix(const ChannelRealization& r, const BeamformerProfile& profile, int victim, int tx);

// sum_{j != i} A_ji
ComplexMatrix caused_interference_matrix(const ChannelRealization& r, const BeamformerProfile& profile, int tx);

ComplexVector egoistic_response(const ChannelRealization& r, const BeamformerProfile& profile, int link);
ComplexVector altruistic_response(const ChannelRealization& r, const BeamformerProfile& profile, int link);

// Pricing weights that make the dominant eigenvector of the balanced matrix a
// stationary point of the sum rate for the current profile.
LambdaMatrix optimal_lambda(const ChannelRealization& r, const BeamformerProfile& profile);

// Statistics-only weights built from alpha, sigma^2 and P.
LambdaMatrix heuristic_lambda(const NetworkConfig& config, LambdaDirectGain gain = LambdaDirectGain::Own);

// E_i + sum_{j != i} lambda_ji A_ji
ComplexMatrix balanced_matrix(const ChannelRealization& r, const BeamformerProfile& profile, int link,
                              const LambdaMatrix& lambdas);

ComplexVector balanced_response(const ChannelRealization& r, const BeamformerProfile& profile, int link,
                                const LambdaMatrix& lambdas);

} // namespace mimoic
