#include "mimoic/equilibria.hpp"

#include <cmath>

#include "mimoic/errors.hpp"

namespace mimoic {

namespace {

constexpr double kDegenerateNorm = 1e-14;
constexpr double kUnitNormTol = 1e-10;

// S_jk = |v_j^H H_jk w_k|^2 P
RealMatrix received_powers(const ChannelRealization& r, const BeamformerProfile& p) {
    const int n = r.n_links();
    const double power = r.config().tx_power;
    RealMatrix s(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            s(j, k) = std::norm(p.rx[static_cast<std::size_t>(j)].dot(r.channel(j, k) * p.tx[static_cast<std::size_t>(k)])) * power;
    return s;
}

} // namespace

void validate_profile(const ChannelRealization& r, const BeamformerProfile& profile) {
    const auto& cfg = r.config();
    const auto n = static_cast<std::size_t>(cfg.n_links);
    if (profile.tx.size() != n || profile.rx.size() != n)
        throw PreconditionViolation("profile must hold one tx and one rx vector per link");
    for (std::size_t i = 0; i < n; ++i) {
        if (profile.tx[i].size() != cfg.n_tx_ant || profile.rx[i].size() != cfg.n_rx_ant)
            throw PreconditionViolation("beamformer dimension mismatch");
        if (std::abs(profile.tx[i].norm() - 1.0) > kUnitNormTol ||
            std::abs(profile.rx[i].norm() - 1.0) > kUnitNormTol)
            throw PreconditionViolation("beamformers must have unit norm");
    }
}

LambdaMatrix LambdaMatrix::uniform(int n_links, double value) {
    LambdaMatrix out{RealMatrix::Constant(n_links, n_links, value)};
    out.values.diagonal().setZero();
    return out;
}

ComplexMatrix interference_covariance(const ChannelRealization& r, const BeamformerProfile& profile, int link) {
    const auto& cfg = r.config();
    ComplexMatrix c = ComplexMatrix::Identity(cfg.n_rx_ant, cfg.n_rx_ant) * cfg.noise_power(link);
    for (int j = 0; j < cfg.n_links; ++j) {
        if (j == link)
            continue;
        const ComplexVector u = r.channel(link, j) * profile.tx[static_cast<std::size_t>(j)];
        c += numerics::outer(u) * cfg.tx_power;
    }
    return c;
}

ComplexVector max_sinr_receiver(const ChannelRealization& r, const BeamformerProfile& profile, int link) {
    const ComplexVector signal = r.channel(link, link) * profile.tx[static_cast<std::size_t>(link)];
    if (signal.norm() < kDegenerateNorm)
        throw DegenerateDirection("direct channel of link " + std::to_string(link) + " vanishes");
    const ComplexVector v = numerics::solve_hpd(interference_covariance(r, profile, link), signal);
    return numerics::canonical_phase(v / v.norm());
}

ComplexMatrix egoistic_matrix(const ChannelRealization& r, const BeamformerProfile& profile, int link) {
    return numerics::outer(r.channel(link, link).adjoint() * profile.rx[static_cast<std::size_t>(link)]);
}

ComplexMatrix altruistic_matrix(const ChannelRealization& r, const BeamformerProfile& profile, int victim, int tx) {
    return numerics::outer(r.channel(victim, tx).adjoint() * profile.rx[static_cast<std::size_t>(victim)]);
}

ComplexMatrix caused_interference_matrix(const ChannelRealization& r, const BeamformerProfile& profile, int tx) {
    const int nt = r.config().n_tx_ant;
    ComplexMatrix sum = ComplexMatrix::Zero(nt, nt);
    for (int j = 0; j < r.n_links(); ++j)
        if (j != tx)
            sum += altruistic_matrix(r, profile, j, tx);
    return sum;
}

ComplexVector egoistic_response(const ChannelRealization& r, const BeamformerProfile& profile, int link) {
    const ComplexVector g = r.channel(link, link).adjoint() * profile.rx[static_cast<std::size_t>(link)];
    if (g.norm() < kDegenerateNorm)
        throw DegenerateDirection("H_ii^H v_i vanishes for link " + std::to_string(link));
    return numerics::dominant_eigvec(numerics::outer(g));
}

ComplexVector altruistic_response(const ChannelRealization& r, const BeamformerProfile& profile, int link) {
    return numerics::least_eigvec(caused_interference_matrix(r, profile, link));
}

LambdaMatrix optimal_lambda(const ChannelRealization& r, const BeamformerProfile& profile) {
    const int n = r.n_links();
    const RealVector& noise = r.config().noise_power;
    const RealMatrix s = received_powers(r, profile);
    const RealVector total = s.rowwise().sum() + noise;

    LambdaMatrix out{RealMatrix::Zero(n, n)};
    for (int j = 0; j < n; ++j) {
        const double interference_plus_noise = total(j) - s(j, j);
        for (int i = 0; i < n; ++i) {
            if (i == j)
                continue;
            out.values(j, i) = -(s(j, j) / total(j)) * (total(i) / interference_plus_noise);
        }
    }
    return out;
}

LambdaMatrix heuristic_lambda(const NetworkConfig& config, LambdaDirectGain gain) {
    config.validate();
    const int n = config.n_links;
    const double p = config.tx_power;
    LambdaMatrix out{RealMatrix::Zero(n, n)};
    for (int j = 0; j < n; ++j) {
        const double gamma_j = config.snr(j);
        for (int i = 0; i < n; ++i) {
            if (i == j)
                continue;
            const double gamma_i = config.snr(i);
            const double alpha = gain == LambdaDirectGain::Own ? config.alpha(i, i) : config.alpha(j, j);
            const double noise_ratio = config.noise_power(j) / (p * alpha);
            out.values(j, i) = -(1.0 / (1.0 + 1.0 / gamma_j)) * ((1.0 + 1.0 / gamma_i) / noise_ratio);
        }
    }
    return out;
}

ComplexMatrix balanced_matrix(const ChannelRealization& r, const BeamformerProfile& profile, int link,
                              const LambdaMatrix& lambdas) {
    ComplexMatrix m = egoistic_matrix(r, profile, link);
    for (int j = 0; j < r.n_links(); ++j)
        if (j != link && lambdas(j, link) != 0.0)
            m += lambdas(j, link) * altruistic_matrix(r, profile, j, link);
    return m;
}

ComplexVector balanced_response(const ChannelRealization& r, const BeamformerProfile& profile, int link,
                                const LambdaMatrix& lambdas) {
    return numerics::dominant_eigvec(balanced_matrix(r, profile, link, lambdas));
}

} // namespace mimoic
