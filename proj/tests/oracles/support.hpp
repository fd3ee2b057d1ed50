#pragma once

// Shared helpers for the unit and acceptance suites.

#include <cmath>
#include <cstdint>
#include <vector>

#include "mimoic/algorithms.hpp"
#include "mimoic/equilibria.hpp"
#include "mimoic/metrics.hpp"
#include "mimoic/network.hpp"
#include "mimoic/rng.hpp"

#include "jacobi_oracle.hpp"

namespace testsupport {

using namespace mimoic;

inline ComplexMatrix random_complex(Xoshiro256& rng, Eigen::Index rows, Eigen::Index cols) {
    ComplexMatrix m(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c)
        for (Eigen::Index r = 0; r < rows; ++r)
            m(r, c) = rng.complex_gaussian();
    return m;
}

inline ComplexMatrix random_hermitian(Xoshiro256& rng, Eigen::Index n) {
    const ComplexMatrix g = random_complex(rng, n, n);
    ComplexMatrix h = (g + g.adjoint()) * 0.5;
    for (Eigen::Index i = 0; i < n; ++i)
        h(i, i) = h(i, i).real();
    return h;
}

inline oracle::JacobiResult jacobi(const ComplexMatrix& m) {
    const auto n = static_cast<std::size_t>(m.rows());
    std::vector<oracle::cplx> a(n * n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            a[r * n + c] = m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    return oracle::jacobi_eig(std::move(a), n);
}

inline ComplexVector to_vector(const std::vector<oracle::cplx>& v) {
    ComplexVector out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i)
        out(static_cast<Eigen::Index>(i)) = v[i];
    return out;
}

inline NetworkConfig simple_config(int n_links, int nt, int nr, double noise = 0.1, double cross = 0.5) {
    NetworkConfig c;
    c.n_links = n_links;
    c.n_tx_ant = nt;
    c.n_rx_ant = nr;
    c.alpha = RealMatrix::Constant(n_links, n_links, cross);
    c.alpha.diagonal().setOnes();
    c.noise_power = RealVector::Constant(n_links, noise);
    c.tx_power = 1.0;
    return c;
}

inline BeamformerProfile random_profile(const ChannelRealization& r, std::uint64_t seed) {
    Xoshiro256 rng(seed);
    BeamformerProfile p;
    for (int i = 0; i < r.n_links(); ++i) {
        p.tx.push_back(random_unit_vector(rng, r.config().n_tx_ant));
        p.rx.push_back(random_unit_vector(rng, r.config().n_rx_ant));
    }
    return p;
}

// SINR straight from the scalar definition, no covariance matrices.
inline double direct_sinr(const ChannelRealization& r, const BeamformerProfile& p, int i) {
    const auto& cfg = r.config();
    const auto ui = static_cast<std::size_t>(i);
    double signal = 0.0;
    double interference = 0.0;
    for (int j = 0; j < cfg.n_links; ++j) {
        Complex acc(0.0, 0.0);
        const ComplexMatrix h = r.channel(i, j);
        for (Eigen::Index a = 0; a < h.rows(); ++a)
            for (Eigen::Index b = 0; b < h.cols(); ++b)
                acc += std::conj(p.rx[ui](a)) * h(a, b) * p.tx[static_cast<std::size_t>(j)](b);
        (j == i ? signal : interference) += std::norm(acc) * cfg.tx_power;
    }
    return signal / (interference + cfg.noise_power(i));
}

// Sum rate with every receiver replaced by its Max-SINR receiver.
inline double sum_rate_mmse(const ChannelRealization& r, BeamformerProfile p) {
    const BeamformerProfile frozen = p;
    for (int i = 0; i < r.n_links(); ++i)
        p.rx[static_cast<std::size_t>(i)] = max_sinr_receiver(r, frozen, i);
    return sum_rate(r, p);
}

// Central-difference gradient of the Max-SINR-receiver sum rate with respect
// to w_i, projected onto the tangent space of the unit sphere (horizontal to
// the phase orbit). Returns its Euclidean norm in R^{2 N_t}.
inline double tangent_gradient_norm(const ChannelRealization& r, const BeamformerProfile& p, int link,
                                    double step = 1e-6) {
    const auto ui = static_cast<std::size_t>(link);
    const ComplexVector w = p.tx[ui];
    const Eigen::Index n = w.size();
    // Real orthonormal basis of the tangent space: directions d with
    // Re(w^H d) = 0 and Im(w^H d) = 0.
    std::vector<ComplexVector> basis;
    for (Eigen::Index k = 0; k < n && static_cast<Eigen::Index>(basis.size()) < 2 * n - 2; ++k) {
        for (const Complex unit : {Complex(1.0, 0.0), Complex(0.0, 1.0)}) {
            ComplexVector d = ComplexVector::Zero(n);
            d(k) = unit;
            d -= w * w.dot(d);
            for (const auto& b : basis)
                d -= b * Complex(b.dot(d).real(), 0.0);
            for (const auto& b : basis)
                d -= b * Complex(b.dot(d).real(), 0.0);
            const double nd = d.norm();
            if (nd > 1e-6 && static_cast<Eigen::Index>(basis.size()) < 2 * n - 2)
                basis.push_back(d / nd);
        }
    }
    double g2 = 0.0;
    for (const auto& d : basis) {
        BeamformerProfile plus = p, minus = p;
        plus.tx[ui] = (w + step * d).normalized();
        minus.tx[ui] = (w - step * d).normalized();
        const double g = (sum_rate_mmse(r, plus) - sum_rate_mmse(r, minus)) / (2.0 * step);
        g2 += g * g;
    }
    return std::sqrt(g2);
}

// Instance whose cross channels are projected so that the random profile
// (w, v) is exactly interference aligned: H_ij <- H_ij - v_i v_i^H H_ij w_j w_j^H.
struct AlignedInstance {
    ChannelRealization realization;
    BeamformerProfile profile;
};

inline AlignedInstance aligned_instance(const NetworkConfig& cfg, std::uint64_t seed) {
    ChannelRealization r = draw_realization(cfg, seed);
    BeamformerProfile p = random_profile(r, derive_seed(seed, 77));
    for (int i = 0; i < cfg.n_links; ++i)
        for (int j = 0; j < cfg.n_links; ++j) {
            if (i == j)
                continue;
            const auto& v = p.rx[static_cast<std::size_t>(i)];
            const auto& w = p.tx[static_cast<std::size_t>(j)];
            ComplexMatrix h = r.h_bar(i, j);
            h -= v * (v.adjoint() * h * w) * w.adjoint();
            r.set_h_bar(i, j, h);
        }
    return {std::move(r), std::move(p)};
}

} // namespace testsupport
