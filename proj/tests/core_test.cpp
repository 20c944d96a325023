// Copyright 2026 The csatn Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>

#include "csatn/channel/special_functions.hpp"
#include "csatn/core/config.hpp"
#include "csatn/core/config_io.hpp"

namespace csatn {
namespace {

TEST(SrConstants, DefaultTriple)
{
    const SrConstants k = derive_sr_constants({0.158, 1.0, 0.1});
    // Independent evaluation: beta = 1/(2c), and for q = 1 kappa = beta - delta
    // = 1/(2c + omega).
    EXPECT_NEAR(k.beta, 1.0 / 0.316, 1e-12);
    EXPECT_NEAR(k.kappa, 1.0 / 0.416, 1e-12);
    EXPECT_NEAR(k.beta - k.delta, 1.0 / 0.416, 1e-12);
    EXPECT_NEAR(k.delta, 0.1 / (0.316 * 0.416), 1e-12);
    EXPECT_NEAR(k.beta, 3.16456, 1e-5);
    EXPECT_NEAR(k.kappa, 2.40385, 1e-5);
}

TEST(SrConstants, NoLineOfSightCollapsesToExponential)
{
    const SrConstants k = derive_sr_constants({0.2, 3.0, 0.0});
    EXPECT_EQ(k.delta, 0.0);
    EXPECT_NEAR(k.kappa, k.beta, 1e-15);
}

TEST(SrConstants, RatePositiveAcrossParameters)
{
    for (double c : {0.01, 0.126, 0.158, 0.5, 2.0}) {
        for (double q : {0.3, 0.5, 1.0, 2.0, 10.0, 40.0}) {
            for (double omega : {0.0, 0.1, 0.835, 5.0, 100.0}) {
                const SrConstants k = derive_sr_constants({c, q, omega});
                EXPECT_GT(k.rate(), 0.0) << c << ' ' << q << ' ' << omega;
                EXPECT_NEAR(k.rate(), q / (2.0 * c * q + omega), 1e-12 * k.beta);
            }
        }
    }
}

TEST(SrConstants, BitIdenticalRederivation)
{
    const SrParams p{0.126, 10.0, 0.835};
    const SrConstants a = derive_sr_constants(p);
    const SrConstants b = derive_sr_constants(p);
    EXPECT_EQ(a.kappa, b.kappa);
    EXPECT_EQ(a.delta, b.delta);
    EXPECT_EQ(a.beta, b.beta);
}

TEST(SrConstants, InvalidParamsRejected)
{
    EXPECT_THROW(derive_sr_constants({0.0, 1.0, 0.1}), DomainError);
    EXPECT_THROW(derive_sr_constants({0.1, 0.0, 0.1}), DomainError);
    EXPECT_THROW(derive_sr_constants({0.1, 1.0, -0.1}), DomainError);
}

TEST(Pochhammer, VanishesForIntegerShape)
{
    for (int q = 1; q <= 3; ++q) {
        for (int k = q; k <= q + 5; ++k) {
            EXPECT_EQ(pochhammer(1.0 - q, k), 0.0) << "q=" << q << " k=" << k;
        }
    }
    EXPECT_EQ(pochhammer(0.3, 0), 1.0);
    EXPECT_NEAR(pochhammer(0.5, 3), 0.5 * 1.5 * 2.5, 1e-15);
}

TEST(Validate, DefaultsClean)
{
    const ScenarioConfig cfg;
    EXPECT_TRUE(validate(cfg).empty());
    EXPECT_EQ(cfg.n_0(), 28353);
    EXPECT_DOUBLE_EQ(cfg.r_c(), 10000.0);
    EXPECT_NEAR(cfg.g_t_main, db_to_linear(10.0), 1e-12);
    EXPECT_NEAR(cfg.g_t_side, db_to_linear(-10.0), 1e-12);
}

TEST(Validate, CoverageRadiusMismatchIsWarning)
{
    ScenarioConfig cfg;
    cfg.r_a = 600.0;
    const auto v = validate(cfg);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0].field, "r_a");
    EXPECT_EQ(v[0].severity, Severity::warning);
    EXPECT_FALSE(has_errors(v));
}

TEST(Validate, ZeroTerminalDensity)
{
    ScenarioConfig cfg;
    cfg.lambda_t = 0.0;
    const auto v = validate(cfg);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0].field, "lambda_t");
    EXPECT_TRUE(has_errors(v));
}

TEST(Validate, ReportsEveryBrokenField)
{
    ScenarioConfig cfg;
    cfg.h_a = -1.0;
    cfg.theta = 7.0;
    cfg.n_ta = 0;
    cfg.sr.q = 0.0;
    const auto v = validate(cfg);
    EXPECT_EQ(v.size(), 4u);
    for (const auto& x : v) {
        EXPECT_FALSE(to_string(x).empty());
    }
}

TEST(ConfigHash, SensitiveToEveryField)
{
    const ScenarioConfig base;
    const std::uint64_t h0 = config_hash(base);
    EXPECT_EQ(config_hash_hex(base).size(), 16u);
    for (const char* f : {"h_a", "d_0", "r_u", "r_a", "d_min", "p_t", "p_a", "p_m", "g_t_main",
                          "g_t_side", "g_r", "theta", "lambda_t", "lambda_1", "n_ta", "sr.c",
                          "sr.q", "sr.omega", "alpha_1", "alpha_2", "k_rate", "noise_t",
                          "noise_a"}) {
        ScenarioConfig c = base;
        set_field(c, f, get_field(c, f) + 1.0);
        EXPECT_NE(config_hash(c), h0) << f;
    }
}

TEST(ConfigIo, UnitsConvertedOnIngest)
{
    const ScenarioConfig cfg = config_from_string(R"({
        "h_a": "0.05 km", "d_0": "400 km", "p_t": "20 dBW", "p_m": "50 dBm",
        "g_t_main": "10 dB", "g_t_side": "-10 dB", "theta": "30 deg",
        "lambda_t": "100 km^-2", "sr": {"c": 0.126, "q": 10, "omega": 0.835}, "n_ta": 2})");
    EXPECT_NEAR(cfg.h_a, 50.0, 1e-12);
    EXPECT_NEAR(cfg.d_0, 4e5, 1e-9);
    EXPECT_NEAR(cfg.p_t, 100.0, 1e-12);
    EXPECT_NEAR(cfg.p_m, 100.0, 1e-12);
    EXPECT_NEAR(cfg.g_t_main, 10.0, 1e-12);
    EXPECT_NEAR(cfg.g_t_side, 0.1, 1e-12);
    EXPECT_NEAR(cfg.theta, pi / 6.0, 1e-12);
    EXPECT_NEAR(cfg.lambda_t, 1e-4, 1e-18);
    EXPECT_EQ(cfg.sr.q, 10.0);
    EXPECT_EQ(cfg.n_ta, 2);
}

TEST(ConfigIo, UnknownKeysAndBadUnitsRejected)
{
    EXPECT_THROW(config_from_string(R"({"hA": 50})"), ConfigError);
    EXPECT_THROW(config_from_string(R"({"sr": {"k": 1}})"), ConfigError);
    EXPECT_THROW(config_from_string(R"({"h_a": "50 dB"})"), ConfigError);
    EXPECT_THROW(config_from_string(R"({"n_ta": 2.5})"), ConfigError);
    EXPECT_THROW(config_from_string("{not json"), ConfigError);
    EXPECT_THROW(load_config("/nonexistent/cfg.json"), ConfigError);
}

TEST(ConfigIo, RoundTrip)
{
    ScenarioConfig cfg;
    cfg.theta = 0.7;
    cfg.sr = {0.126, 10.0, 0.835};
    cfg.n_ta = 5;
    const ScenarioConfig back = config_from_json(config_to_json(cfg));
    EXPECT_EQ(config_hash(back), config_hash(cfg));
}

} // namespace
} // namespace csatn
