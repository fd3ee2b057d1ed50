#include "mimoic/algorithms.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "mimoic/errors.hpp"
#include "mimoic/metrics.hpp"
#include "mimoic/rng.hpp"

namespace mimoic {

namespace {

constexpr double kDegenerateNorm = 1e-14;
constexpr double kIaPrecondition = 1e-8;

using Step = std::function<BeamformerProfile(const BeamformerProfile&)>;

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

double chordal(const ComplexVector& a, const ComplexVector& b) {
    return std::sqrt(std::max(0.0, 1.0 - std::norm(a.dot(b))));
}

double max_delta(const BeamformerProfile& a, const BeamformerProfile& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.tx.size(); ++i) {
        d = std::max(d, chordal(a.tx[i], b.tx[i]));
        d = std::max(d, chordal(a.rx[i], b.rx[i]));
    }
    return d;
}

void update_receivers(const ChannelRealization& r, const BeamformerProfile& from, BeamformerProfile& to) {
    for (int i = 0; i < r.n_links(); ++i)
        to.rx[idx(i)] = max_sinr_receiver(r, from, i);
}

// Unit vector in the least eigenspace of q. A tied (multi-dimensional)
// eigenspace is resolved towards the direction g, the desired-signal
// direction, and falls back to the canonical basis when g is orthogonal.
ComplexVector least_direction(const ComplexMatrix& q, const ComplexVector& g) {
    const ComplexMatrix basis = numerics::extremal_eigenspace(q, numerics::Extremal::Smallest);
    if (basis.cols() == 1)
        return basis.col(0);
    const ComplexVector proj = basis * (basis.adjoint() * g);
    const double norm = proj.norm();
    if (norm < kDegenerateNorm)
        return basis.col(0);
    return numerics::canonical_phase(proj / norm);
}

RunResult iterate(const ChannelRealization& r, const RunSettings& settings, const BeamformerProfile& initial,
                  const Step& step) {
    RunResult out;
    out.initial = initial;
    out.profile = initial;
    double prev = sum_rate(r, initial);
    for (int t = 1; t <= settings.max_iters; ++t) {
        BeamformerProfile next = step(out.profile);
        IterationRecord rec;
        rec.sum_rate = sum_rate(r, next);
        rec.leakage = total_leakage(r, next);
        rec.max_beamformer_delta = max_delta(out.profile, next);
        out.trace.push_back(rec);
        out.profile = std::move(next);
        out.iterations = t;
        if (std::abs(rec.sum_rate - prev) < settings.tol_sumrate) {
            out.converged = true;
            break;
        }
        prev = rec.sum_rate;
    }
    out.sum_rate = sum_rate(r, out.profile);
    return out;
}

Step make_step(AlgorithmId id, const ChannelRealization& r, const RunSettings& settings) {
    switch (id) {
    case AlgorithmId::DBA: {
        LambdaMatrix lambdas = heuristic_lambda(r.config(), settings.lambda_gain);
        return [&r, lambdas](const BeamformerProfile& p) { return dba_step(r, p, lambdas); };
    }
    case AlgorithmId::EGO_ONLY: {
        LambdaMatrix zero = LambdaMatrix::uniform(r.n_links(), 0.0);
        return [&r, zero](const BeamformerProfile& p) { return dba_step(r, p, zero); };
    }
    case AlgorithmId::SRMAX:
        return [&r](const BeamformerProfile& p) { return srmax_step(r, p); };
    case AlgorithmId::MAXSINR:
        return [&r](const BeamformerProfile& p) { return maxsinr_step(r, p); };
    case AlgorithmId::ALTMIN:
        return [&r](const BeamformerProfile& p) { return altmin_step(r, p); };
    case AlgorithmId::ALT_ONLY:
        return [&r](const BeamformerProfile& p) { return alt_only_step(r, p); };
    }
    throw std::logic_error("unknown algorithm");
}

RunResult run_with_restarts(AlgorithmId id, const ChannelRealization& r, const RunSettings& settings,
                            const BeamformerProfile* initial) {
    settings.validate();
    const Step step = make_step(id, r, settings);
    RunResult best;
    bool have = false;
    for (int k = 0; k < settings.restarts; ++k) {
        BeamformerProfile start;
        if (k == 0 && initial != nullptr) {
            validate_profile(r, *initial);
            start = *initial;
        } else if (k == 0) {
            start = initial_profile(r, settings.init_mode, settings.seed);
        } else {
            start = initial_profile(r, InitMode::SeededRandom, derive_seed(settings.seed, static_cast<std::uint64_t>(k)));
        }
        RunResult result = iterate(r, settings, start, step);
        if (!have || result.sum_rate > best.sum_rate) {
            best = std::move(result);
            have = true;
        }
    }
    return best;
}

} // namespace

std::string_view to_string(AlgorithmId id) {
    switch (id) {
    case AlgorithmId::DBA: return "DBA";
    case AlgorithmId::SRMAX: return "SRMAX";
    case AlgorithmId::MAXSINR: return "MAXSINR";
    case AlgorithmId::ALTMIN: return "ALTMIN";
    case AlgorithmId::EGO_ONLY: return "EGO_ONLY";
    case AlgorithmId::ALT_ONLY: return "ALT_ONLY";
    }
    return "UNKNOWN";
}

AlgorithmId parse_algorithm(std::string_view text) {
    for (auto id : {AlgorithmId::DBA, AlgorithmId::SRMAX, AlgorithmId::MAXSINR, AlgorithmId::ALTMIN,
                    AlgorithmId::EGO_ONLY, AlgorithmId::ALT_ONLY})
        if (to_string(id) == text)
            return id;
    throw InvalidConfig("unknown algorithm '" + std::string(text) + "'");
}

std::string_view to_string(InitMode mode) {
    return mode == InitMode::FixedBasis ? "fixed_basis" : "seeded_random";
}

InitMode parse_init_mode(std::string_view text) {
    if (text == "fixed_basis")
        return InitMode::FixedBasis;
    if (text == "seeded_random")
        return InitMode::SeededRandom;
    throw InvalidConfig("unknown init_mode '" + std::string(text) + "'");
}

void RunSettings::validate() const {
    if (max_iters < 1)
        throw InvalidConfig("max_iters must be >= 1");
    if (!(tol_sumrate > 0.0) || !std::isfinite(tol_sumrate))
        throw InvalidConfig("tol_sumrate must be > 0");
    if (restarts < 1)
        throw InvalidConfig("restarts must be >= 1");
}

BeamformerProfile initial_profile(const ChannelRealization& r, InitMode mode, std::uint64_t seed) {
    const auto& cfg = r.config();
    BeamformerProfile p;
    p.tx.reserve(idx(cfg.n_links));
    if (mode == InitMode::FixedBasis) {
        for (int i = 0; i < cfg.n_links; ++i)
            p.tx.push_back(ComplexVector::Unit(cfg.n_tx_ant, 0));
    } else {
        Xoshiro256 rng(seed);
        for (int i = 0; i < cfg.n_links; ++i)
            p.tx.push_back(numerics::canonical_phase(random_unit_vector(rng, cfg.n_tx_ant)));
    }
    p.rx.assign(idx(cfg.n_links), ComplexVector::Unit(cfg.n_rx_ant, 0));
    update_receivers(r, p, p);
    return p;
}

RunResult run_algorithm(AlgorithmId id, const ChannelRealization& r, const RunSettings& settings) {
    return run_with_restarts(id, r, settings, nullptr);
}

RunResult run_algorithm(AlgorithmId id, const ChannelRealization& r, const RunSettings& settings,
                        const BeamformerProfile& initial) {
    return run_with_restarts(id, r, settings, &initial);
}

RunResult run_dba(const ChannelRealization& r, const RunSettings& settings) {
    return run_algorithm(AlgorithmId::DBA, r, settings);
}

RunResult run_srmax(const ChannelRealization& r, const RunSettings& settings) {
    return run_algorithm(AlgorithmId::SRMAX, r, settings);
}

RunResult run_maxsinr(const ChannelRealization& r, const RunSettings& settings) {
    return run_algorithm(AlgorithmId::MAXSINR, r, settings);
}

RunResult run_altmin(const ChannelRealization& r, const RunSettings& settings) {
    return run_algorithm(AlgorithmId::ALTMIN, r, settings);
}

BeamformerProfile dba_step(const ChannelRealization& r, const BeamformerProfile& profile, const LambdaMatrix& lambdas) {
    BeamformerProfile next = profile;
    update_receivers(r, profile, next);
    const BeamformerProfile frozen = next;
    for (int i = 0; i < r.n_links(); ++i)
        next.tx[idx(i)] = balanced_response(r, frozen, i, lambdas);
    return next;
}

BeamformerProfile srmax_step(const ChannelRealization& r, const BeamformerProfile& profile) {
    const LambdaMatrix lambdas = optimal_lambda(r, profile);
    BeamformerProfile next = profile;
    for (int i = 0; i < r.n_links(); ++i)
        next.tx[idx(i)] = balanced_response(r, profile, i, lambdas);
    const BeamformerProfile frozen = next;
    update_receivers(r, frozen, next);
    return next;
}

BeamformerProfile maxsinr_step(const ChannelRealization& r, const BeamformerProfile& profile) {
    const auto& cfg = r.config();
    BeamformerProfile next = profile;
    update_receivers(r, profile, next);
    for (int i = 0; i < cfg.n_links; ++i) {
        // Reciprocal network: Tx i listens through its own noise level.
        ComplexMatrix c = ComplexMatrix::Identity(cfg.n_tx_ant, cfg.n_tx_ant) * cfg.noise_power(i);
        for (int j = 0; j < cfg.n_links; ++j)
            if (j != i)
                c += numerics::outer(r.channel(j, i).adjoint() * next.rx[idx(j)]) * cfg.tx_power;
        const ComplexVector g = r.channel(i, i).adjoint() * next.rx[idx(i)];
        if (g.norm() < kDegenerateNorm)
            throw DegenerateDirection("H_ii^H v_i vanishes for link " + std::to_string(i));
        const ComplexVector w = numerics::solve_hpd(c, g);
        next.tx[idx(i)] = numerics::canonical_phase(w / w.norm());
    }
    return next;
}

BeamformerProfile altmin_step(const ChannelRealization& r, const BeamformerProfile& profile) {
    const auto& cfg = r.config();
    BeamformerProfile next = profile;
    for (int i = 0; i < cfg.n_links; ++i) {
        ComplexMatrix q = ComplexMatrix::Zero(cfg.n_rx_ant, cfg.n_rx_ant);
        for (int k = 0; k < cfg.n_links; ++k)
            if (k != i)
                q += numerics::outer(r.channel(i, k) * profile.tx[idx(k)]);
        next.rx[idx(i)] = least_direction(q, r.channel(i, i) * profile.tx[idx(i)]);
    }
    for (int i = 0; i < cfg.n_links; ++i) {
        ComplexMatrix q = ComplexMatrix::Zero(cfg.n_tx_ant, cfg.n_tx_ant);
        for (int k = 0; k < cfg.n_links; ++k)
            if (k != i)
                q += numerics::outer(r.channel(k, i).adjoint() * next.rx[idx(k)]);
        next.tx[idx(i)] = least_direction(q, r.channel(i, i).adjoint() * next.rx[idx(i)]);
    }
    for (int i = 0; i < cfg.n_links; ++i)
        if (std::abs(next.rx[idx(i)].dot(r.channel(i, i) * next.tx[idx(i)])) < kDegenerateNorm)
            throw DegenerateDirection("alt-min left link " + std::to_string(i) + " with zero direct gain");
    return next;
}

BeamformerProfile alt_only_step(const ChannelRealization& r, const BeamformerProfile& profile) {
    BeamformerProfile next = profile;
    update_receivers(r, profile, next);
    const BeamformerProfile frozen = next;
    for (int i = 0; i < r.n_links(); ++i)
        next.tx[idx(i)] = altruistic_response(r, frozen, i);
    return next;
}

double ia_residual(const ChannelRealization& r, const BeamformerProfile& profile) {
    const auto& cfg = r.config();
    double worst = 0.0;
    for (int i = 0; i < cfg.n_links; ++i)
        for (int j = 0; j < cfg.n_links; ++j)
            if (j != i)
                worst = std::max(worst, std::norm(profile.rx[idx(i)].dot(r.channel(i, j) * profile.tx[idx(j)])) *
                                            cfg.tx_power);
    return worst;
}

double ia_stability_probe(const ChannelRealization& r, const BeamformerProfile& profile_in_ia,
                          double lambda_magnitude) {
    validate_profile(r, profile_in_ia);
    if (!(lambda_magnitude >= 0.0))
        throw PreconditionViolation("lambda magnitude must be >= 0");
    if (ia_residual(r, profile_in_ia) > kIaPrecondition)
        throw PreconditionViolation("profile is not interference-aligned");
    const auto lambdas = LambdaMatrix::uniform(r.n_links(), -lambda_magnitude);
    return ia_residual(r, dba_step(r, profile_in_ia, lambdas));
}

OracleResult brute_force_sumrate(const ChannelRealization& r, int grid_density) {
    const auto& cfg = r.config();
    if (cfg.n_tx_ant != 2)
        throw PreconditionViolation("brute-force oracle requires n_tx_ant == 2");
    if (cfg.n_links > 3)
        throw PreconditionViolation("brute-force oracle requires n_links <= 3");
    if (grid_density < 2)
        throw PreconditionViolation("grid_density must be >= 2");

    const int n = cfg.n_links;
    const int nr = cfg.n_rx_ant;
    const double p = cfg.tx_power;
    const int g = grid_density;
    const int points = g * g;

    std::vector<ComplexVector> grid;
    grid.reserve(idx(points));
    for (int a = 0; a < g; ++a) {
        const double theta = (std::numbers::pi / 2.0) * a / (g - 1);
        for (int b = 0; b < g; ++b) {
            const double phi = 2.0 * std::numbers::pi * b / g;
            ComplexVector w(2);
            w << std::cos(theta), std::sin(theta) * std::polar(1.0, phi);
            grid.push_back(w);
        }
    }

    // received[(i * n + j) * points + k] = H_ij w_k
    std::vector<ComplexVector> received(idx(n * n * points));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const ComplexMatrix h = r.channel(i, j);
            for (int k = 0; k < points; ++k)
                received[idx((i * n + j) * points + k)] = h * grid[idx(k)];
        }
    auto at = [&](int i, int j, int k) -> const ComplexVector& { return received[idx((i * n + j) * points + k)]; };

    // Max-SINR SINR = P s^H C^{-1} s with C = sigma^2 I + P U U^H, evaluated by
    // Woodbury: (||s||^2 - b^H G^{-1} b) / sigma^2, G = sigma^2/P I + U^H U.
    auto link_sinr = [&](int i, const std::array<int, 3>& choice) {
        const double noise = cfg.noise_power(i);
        const ComplexVector& s = at(i, i, choice[idx(i)]);
        std::array<const ComplexVector*, 2> u{};
        int m = 0;
        for (int j = 0; j < n; ++j)
            if (j != i)
                u[idx(m++)] = &at(i, j, choice[idx(j)]);
        double quad = s.squaredNorm();
        if (m == 1) {
            const Complex b = u[0]->dot(s);
            quad -= std::norm(b) / (noise / p + u[0]->squaredNorm());
        } else if (m == 2) {
            const Complex b0 = u[0]->dot(s), b1 = u[1]->dot(s);
            const double g00 = noise / p + u[0]->squaredNorm();
            const double g11 = noise / p + u[1]->squaredNorm();
            const Complex g01 = u[0]->dot(*u[1]);
            const double det = g00 * g11 - std::norm(g01);
            // b^H G^{-1} b with G^{-1} = [g11 -g01; -conj(g01) g00] / det
            const double form = (g11 * std::norm(b0) + g00 * std::norm(b1) -
                                 2.0 * (std::conj(b0) * g01 * b1).real()) / det;
            quad -= form;
        }
        return p * std::max(quad, 0.0) / noise;
    };

    std::array<int, 3> choice{0, 0, 0};
    std::array<int, 3> best_choice{0, 0, 0};
    double best = -1.0;
    long long total = 1;
    for (int i = 0; i < n; ++i)
        total *= points;
    for (long long combo = 0; combo < total; ++combo) {
        long long rest = combo;
        for (int i = 0; i < n; ++i) {
            choice[idx(i)] = static_cast<int>(rest % points);
            rest /= points;
        }
        double rate = 0.0;
        for (int i = 0; i < n; ++i)
            rate += std::log2(1.0 + link_sinr(i, choice));
        if (rate > best) {
            best = rate;
            best_choice = choice;
        }
    }

    OracleResult out;
    for (int i = 0; i < n; ++i)
        out.profile.tx.push_back(grid[idx(best_choice[idx(i)])]);
    out.profile.rx.assign(idx(n), ComplexVector::Unit(nr, 0));
    update_receivers(r, out.profile, out.profile);
    out.sum_rate = sum_rate(r, out.profile);
    return out;
}

} // namespace mimoic
