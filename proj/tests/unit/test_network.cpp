#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "mimoic/errors.hpp"
#include "mimoic/network.hpp"
#include "mimoic/rng.hpp"
#include "mimoic/units.hpp"

#include "../oracles/support.hpp"

using namespace mimoic;

TEST_CASE("splitmix64 reference value") {
    std::uint64_t state = 0;
    CHECK(splitmix64(state) == 0xe220a8397b1dcdafULL);
}

TEST_CASE("xoshiro is reproducible and seed-sensitive") {
    Xoshiro256 a(42), b(42), c(43);
    bool differs = false;
    for (int i = 0; i < 100; ++i) {
        const auto x = a();
        CHECK(x == b());
        differs |= x != c();
    }
    CHECK(differs);
}

TEST_CASE("uniform lies in [0, 1)") {
    Xoshiro256 rng(1);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("complex gaussian moments") {
    Xoshiro256 rng(2);
    const int n = 200000;
    double p2 = 0.0, re2 = 0.0, reim = 0.0;
    Complex mean(0.0, 0.0);
    for (int i = 0; i < n; ++i) {
        const Complex z = rng.complex_gaussian();
        p2 += std::norm(z);
        re2 += z.real() * z.real();
        reim += z.real() * z.imag();
        mean += z;
    }
    CHECK(p2 / n == doctest::Approx(1.0).epsilon(0.01));
    CHECK(re2 / n == doctest::Approx(0.5).epsilon(0.02));
    CHECK(std::abs(reim / n) < 0.01);
    CHECK(std::abs(mean / static_cast<double>(n)) < 0.01);
}

TEST_CASE("derive_seed is injective on small streams") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t base = 0; base < 20; ++base)
        for (std::uint64_t s = 0; s < 50; ++s)
            seen.insert(derive_seed(base, s));
    CHECK(seen.size() == 1000);
}

TEST_CASE("draw_realization is a pure function of (config, seed)") {
    const auto cfg = testsupport::simple_config(3, 2, 2);
    const auto a = draw_realization(cfg, 7);
    const auto b = draw_realization(cfg, 7);
    const auto c = draw_realization(cfg, 8);
    bool differs = false;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            CHECK(a.h_bar(i, j) == b.h_bar(i, j));
            differs |= a.h_bar(i, j) != c.h_bar(i, j);
        }
    CHECK(differs);
    CHECK(a.seed() == 7);
}

TEST_CASE("h_bar entries have unit second moment") {
    const auto cfg = testsupport::simple_config(1, 2, 2);
    double acc = 0.0;
    const int draws = 100000;
    for (int s = 0; s < draws; ++s)
        acc += std::norm(draw_realization(cfg, static_cast<std::uint64_t>(s)).h_bar(0, 0)(1, 0));
    CHECK(std::abs(acc / draws - 1.0) <= 0.02);
}

TEST_CASE("effective_channel scaling") {
    auto cfg = testsupport::simple_config(2, 2, 2);
    cfg.alpha(0, 1) = 0.0;
    cfg.alpha(1, 0) = 4.0;
    const auto r = draw_realization(cfg, 3);
    CHECK(effective_channel(r, 0, 1).norm() == 0.0);
    CHECK(effective_channel(r, 0, 0) == r.h_bar(0, 0));
    CHECK(effective_channel(r, 1, 0) == 2.0 * r.h_bar(1, 0));
    CHECK_THROWS_AS(effective_channel(r, 2, 0), std::out_of_range);
}

TEST_CASE("rebind keeps the fading and swaps the statistics") {
    const auto cfg = testsupport::simple_config(2, 2, 2, 0.1);
    const auto r = draw_realization(cfg, 3);
    const auto q = r.rebind(testsupport::simple_config(2, 2, 2, 0.01));
    CHECK(q.h_bar(1, 0) == r.h_bar(1, 0));
    CHECK(q.config().noise_power(0) == 0.01);
    CHECK_THROWS_AS(r.rebind(testsupport::simple_config(2, 3, 2)), InvalidConfig);
}

TEST_CASE("config validation") {
    auto cfg = testsupport::simple_config(2, 2, 2);
    cfg.alpha(0, 0) = 0.0;
    CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
    cfg = testsupport::simple_config(2, 2, 2);
    cfg.noise_power(1) = 0.0;
    CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
    cfg = testsupport::simple_config(2, 2, 2);
    cfg.alpha(1, 0) = -1.0;
    CHECK_THROWS_AS(draw_realization(cfg, 1), InvalidConfig);
}

TEST_CASE("symmetric scenario: SIR 0 dB, SNR 10 dB") {
    ScenarioSpec spec;
    spec.snr_db = 10.0;
    const auto cfg = build_scenario(spec);
    for (int i = 0; i < 3; ++i) {
        CHECK(cfg.alpha(i, i) == 1.0);
        CHECK(cfg.noise_power(i) == doctest::Approx(0.1).epsilon(1e-14));
        for (int j = 0; j < 3; ++j)
            if (j != i)
                CHECK(cfg.alpha(i, j) == doctest::Approx(0.5).epsilon(1e-14));
    }
    CHECK(cfg.tx_power == 1.0);
}

TEST_CASE("asym_noise raises the victim's noise by 20 dB") {
    ScenarioSpec spec;
    spec.family = ScenarioFamily::AsymNoise;
    spec.delta_noise_db = 20.0;
    spec.victim_link = 2;
    const auto cfg = build_scenario(spec);
    CHECK(cfg.noise_power(2) == doctest::Approx(100.0 * cfg.noise_power(0)).epsilon(1e-12));
    CHECK(cfg.noise_power(1) == cfg.noise_power(0));
}

TEST_CASE("weak_direct lowers the victim's direct gain by 30 dB") {
    ScenarioSpec spec;
    spec.family = ScenarioFamily::WeakDirect;
    spec.delta_direct_db = 30.0;
    spec.victim_link = 0;
    const auto cfg = build_scenario(spec);
    CHECK(cfg.alpha(0, 0) == doctest::Approx(1e-3 * cfg.alpha(1, 1)).epsilon(1e-12));
    // interference into the victim and its noise keep their nominal levels
    CHECK(cfg.alpha(0, 1) == cfg.alpha(1, 0));
    CHECK(cfg.noise_power(0) == cfg.noise_power(1));
}

TEST_CASE("property: generated SIR and SNR match the request") {
    Xoshiro256 rng(5);
    const ScenarioFamily families[] = {ScenarioFamily::Symmetric, ScenarioFamily::AsymNoise, ScenarioFamily::AsymSir,
                                       ScenarioFamily::WeakDirect};
    for (int trial = 0; trial < 200; ++trial) {
        ScenarioSpec spec;
        spec.family = families[trial % 4];
        spec.n_links = 2 + trial % 3;
        spec.snr_db = -10.0 + 50.0 * rng.uniform();
        spec.sir_db.clear();
        for (int i = 0; i < spec.n_links; ++i)
            spec.sir_db.push_back(-10.0 + 30.0 * rng.uniform());
        spec.victim_link = trial % spec.n_links;
        if (spec.family == ScenarioFamily::AsymNoise || spec.family == ScenarioFamily::AsymSir)
            spec.delta_noise_db = 30.0 * rng.uniform();
        if (spec.family == ScenarioFamily::WeakDirect)
            spec.delta_direct_db = 30.0 * rng.uniform();
        const auto cfg = build_scenario(spec);
        for (int i = 0; i < spec.n_links; ++i) {
            double cross = 0.0;
            for (int j = 0; j < spec.n_links; ++j)
                if (j != i)
                    cross += cfg.alpha(i, j);
            const double sir = cfg.alpha(i, i) / cross;
            double want_sir = db_to_linear(spec.sir_db[static_cast<std::size_t>(i)]);
            if (i == spec.victim_link)
                want_sir /= db_to_linear(spec.delta_direct_db);
            CHECK(std::abs(sir - want_sir) <= 1e-12 * want_sir);

            double want_snr = db_to_linear(spec.snr_db);
            if (i == spec.victim_link) {
                want_snr /= db_to_linear(spec.delta_noise_db);
                want_snr /= db_to_linear(spec.delta_direct_db);
            }
            CHECK(std::abs(cfg.snr(i) - want_snr) <= 1e-12 * want_snr);
        }
    }
}

TEST_CASE("scenario validation") {
    ScenarioSpec spec;
    spec.delta_noise_db = 3.0; // symmetric has no offsets
    CHECK_THROWS_AS(spec.validate(), InvalidConfig);
    spec = ScenarioSpec{};
    spec.family = ScenarioFamily::AsymNoise;
    spec.delta_direct_db = 3.0;
    CHECK_THROWS_AS(build_scenario(spec), InvalidConfig);
    spec = ScenarioSpec{};
    spec.sir_db = {0.0, 0.0};
    CHECK_THROWS_AS(build_scenario(spec), InvalidConfig);
    spec = ScenarioSpec{};
    spec.victim_link = 3;
    CHECK_THROWS_AS(build_scenario(spec), InvalidConfig);
    CHECK(parse_family("weak_direct") == ScenarioFamily::WeakDirect);
    CHECK(to_string(ScenarioFamily::AsymSir) == "asym_sir");
    CHECK_THROWS_AS(parse_family("asym"), InvalidConfig);
}
