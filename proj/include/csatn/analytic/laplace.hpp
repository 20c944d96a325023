// Copyright 2026 The csatn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>

#include "csatn/analytic/quadrature.hpp"
#include "csatn/channel/fading.hpp"
#include "csatn/channel/special_functions.hpp"
#include "csatn/core/config.hpp"
#include "csatn/spatial/distance_law.hpp"
#include "csatn/spatial/lens.hpp"
#include "csatn/spatial/point_process.hpp"

namespace csatn {

/// E[exp(-s P_T |h|^2 (h_a^2 + r^2)^(-alpha_1/2))] for one terrestrial
/// interferer at ground distance r from the AN projection.
inline double ta_interferer_mgf(double s, double r, const ScenarioConfig& cfg)
{
    const double path = std::pow(cfg.h_a * cfg.h_a + r * r, -0.5 * cfg.alpha_1);
    return nakagami_power_mgf_term(s * cfg.p_t * path, cfg.n_ta);
}

/// Mean of ta_interferer_mgf over an interferer placed uniformly in the lens.
inline double ta_interferer_mean_mgf(double s, const DistanceLaw& law, const ScenarioConfig& cfg,
                                     const QuadratureSpec& spec = {})
{
    if (s == 0.0) {
        return 1.0;
    }
    return law.expect([&](double r) { return ta_interferer_mgf(s, r, cfg); }, spec);
}

/// Laplace transform of the terrestrial interference at an AN whose
/// projection is m0 from the user-disk center. Each of the n_0 - 1 other
/// users lands in the lens with probability P_I and then contributes the
/// lens-averaged MGF J, so the binomial sum over the interferer count is
/// (1 - P_I + P_I J)^(n_0 - 1). With include_zero_term off, the
/// no-interferer term (1 - P_I)^(n_0 - 1) is left out.
inline double laplace_it(double s, double m0, const ScenarioConfig& cfg, bool include_zero_term = true,
                         const QuadratureSpec& spec = {})
{
    if (!(s >= 0.0)) {
        throw DomainError("laplace_it requires s >= 0");
    }
    const DistanceLaw law(m0, cfg);
    const double p_i = interferer_success_prob(m0, cfg);
    const double j = ta_interferer_mean_mgf(s, law, cfg, spec);
    const double n = static_cast<double>(cfg.n_0() - 1);
    const double full = std::exp(n * std::log1p(-p_i * (1.0 - j)));
    if (include_zero_term) {
        return full;
    }
    return full - std::exp(n * std::log1p(-p_i));
}

/// Same transform evaluated term by term over the interferer count in log
/// space, stopping once terms fall 1e-15 below the running maximum past the
/// mode. Slower than laplace_it; kept as an independent route.
inline double laplace_it_binomial_sum(double s, double m0, const ScenarioConfig& cfg,
                                      bool include_zero_term = true, const QuadratureSpec& spec = {})
{
    if (!(s >= 0.0)) {
        throw DomainError("laplace_it requires s >= 0");
    }
    const DistanceLaw law(m0, cfg);
    const double p_i = interferer_success_prob(m0, cfg);
    const double j = ta_interferer_mean_mgf(s, law, cfg, spec);
    const std::int64_t n_max = cfg.n_0() - 1;
    if (p_i == 0.0 || n_max == 0) {
        return include_zero_term ? 1.0 : 0.0;
    }
    const double log_p = std::log(p_i);
    const double log_q = std::log1p(-p_i);
    const double log_j = j > 0.0 ? std::log(j) : -INFINITY;
    // The summand is proportional to a Binomial(n_max, p') mass.
    const double p_eff = p_i * j / (1.0 - p_i + p_i * j);
    const double mode = static_cast<double>(n_max) * p_eff;
    CompensatedSum sum;
    double max_term = 0.0;
    for (std::int64_t k = include_zero_term ? 0 : 1; k <= n_max; ++k) {
        const double kd = static_cast<double>(k);
        const double lt = ln_binomial(static_cast<double>(n_max), kd)
                          + (k > 0 ? kd * (log_p + log_j) : 0.0) + static_cast<double>(n_max - k) * log_q;
        const double t = std::exp(lt);
        sum += t;
        max_term = std::max(max_term, t);
        if (kd > mode + 1.0 && t < 1e-15 * max_term) {
            break;
        }
    }
    return sum.value();
}

/// Laplace transform of the aerial interference at the satellite. The other
/// ANs are treated as a Poisson field of intensity lambda_A over the
/// deployment disk, all at distance d_0, each in the receiver mainlobe with
/// probability theta / (2 pi).
inline double laplace_ia(double s_prime, const ScenarioConfig& cfg)
{
    if (!(s_prime >= 0.0)) {
        throw DomainError("laplace_ia requires s' >= 0");
    }
    if (s_prime == 0.0) {
        return 1.0;
    }
    const double base = s_prime * cfg.p_a * std::pow(cfg.d_0, -cfg.alpha_2) * cfg.g_r;
    const double t1 = base * cfg.g_t_main;
    const double t2 = base * cfg.g_t_side;
    const double w = cfg.theta / two_pi;
    const double m2 = w * sr_mgf(t1, cfg.sr) + (1.0 - w) * sr_mgf(t2, cfg.sr);
    const double r_c = cfg.r_c();
    const double mean_count = mhcpp_density(cfg.lambda_1, cfg.d_min) * pi * r_c * r_c;
    return std::exp(mean_count * (m2 - 1.0));
}

} // namespace csatn
