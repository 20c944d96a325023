// Copyright 2026 The csatn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "csatn/analytic/laplace.hpp"
#include "csatn/analytic/quadrature.hpp"
#include "csatn/channel/fading.hpp"
#include "csatn/channel/special_functions.hpp"
#include "csatn/core/config.hpp"
#include "csatn/core/link.hpp"
#include "csatn/core/units.hpp"
#include "csatn/spatial/distance_law.hpp"

namespace csatn {

struct AnalyticOptions {
    /// Keep the no-interferer term of the terrestrial interference transform.
    bool include_zero_term = true;
    QuadratureSpec quad{};
};

namespace detail {

// Alzer-expanded success probability of the terrestrial link for a target
// at distance r_m, averaged over the interference at an AN with projection m0.
inline double ta_success_given(double t_h1, double r_m, double m0, const ScenarioConfig& cfg,
                               const AnalyticOptions& opt)
{
    const int n_ta = cfg.n_ta;
    const double eta = NakagamiPower(n_ta).alzer_eta();
    const double base = eta * t_h1 * std::pow(cfg.h_a * cfg.h_a + r_m * r_m, 0.5 * cfg.alpha_1) / cfg.p_t;
    double sum = 0.0;
    for (int n = 1; n <= n_ta; ++n) {
        const double s = n * base;
        const double sign = (n % 2 == 1) ? 1.0 : -1.0;
        sum += sign * binomial(n_ta, n) * laplace_it(s, m0, cfg, opt.include_zero_term, opt.quad)
               * std::exp(-s * cfg.noise_t);
    }
    return sum;
}

// Success probability averaged over the target distance for one m0.
inline double ta_success_at(double t_h1, double m0, const ScenarioConfig& cfg, const AnalyticOptions& opt)
{
    const DistanceLaw law(m0, cfg);
    return law.expect([&](double r_m) { return ta_success_given(t_h1, r_m, m0, cfg, opt); }, opt.quad);
}

} // namespace detail

/// Terrestrial-to-AN coverage before clamping. Averages over the AN
/// projection distance m0 (split where the lens changes shape) and the target
/// distance r_m. For m0 <= r_u - r_a nothing depends on m0, so that stretch
/// is evaluated once and weighted by its probability.
inline double coverage_ta_raw(double t_h1, const ScenarioConfig& cfg, const AnalyticOptions& opt = {})
{
    if (!(t_h1 > 0.0)) {
        throw DomainError("coverage_ta requires a threshold > 0");
    }
    const double r_u = cfg.r_u;
    const double r_a = cfg.r_a;
    const double inner_edge = r_u - r_a;
    CompensatedSum total;
    total += detail::ta_success_at(t_h1, 0.0, cfg, opt) * projection_distance_cdf(inner_edge, r_u, r_a);
    auto outer = [&](double m0) {
        return detail::ta_success_at(t_h1, m0, cfg, opt) * projection_distance_pdf(m0, r_u, r_a);
    };
    total += integrate_value(outer, inner_edge, r_u, opt.quad);
    total += integrate_value(outer, r_u, r_u + r_a, opt.quad);
    return total.value();
}

inline double coverage_ta(double t_h1, const ScenarioConfig& cfg, const AnalyticOptions& opt = {})
{
    return std::clamp(coverage_ta_raw(t_h1, cfg, opt), 0.0, 1.0);
}

/// Coefficient of the incomplete-gamma term k in the shadowed-Rician CDF,
/// Psi(k) k! / (beta - delta)^(k+1).
inline double sr_cdf_coefficient(int k, const SrConstants& c, double q)
{
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    const double ratio = c.delta / c.rate();
    return sign * c.kappa / c.rate() * std::pow(ratio, k) * pochhammer(1.0 - q, k) / factorial(k);
}

namespace detail {

inline constexpr int max_sr_terms = 64;

// Number of incomplete-gamma terms used by coverage_as. Exact for integer q,
// otherwise truncated at a 1e-12 tail.
inline int sr_series_terms(const ScenarioConfig& cfg)
{
    const SrConstants c = cfg.sr_constants();
    if (c.delta == 0.0) {
        return 1;
    }
    if (cfg.sr.q == std::floor(cfg.sr.q)) {
        return static_cast<int>(cfg.sr.q);
    }
    const double ratio = c.delta / c.rate();
    if (!(ratio < 1.0)) {
        throw SeriesError("shadowed-Rician coverage series diverges: delta / (beta - delta) = "
                          + std::to_string(ratio) + " >= 1");
    }
    const double a0 = std::abs(sr_cdf_coefficient(0, c, cfg.sr.q));
    for (int k = 1; k < max_sr_terms; ++k) {
        // Once k + 1 >= q / 2 the coefficient magnitudes shrink by at least
        // `ratio` per step, so the tail beyond k is below a_k ratio / (1 - ratio).
        const double ak = std::abs(sr_cdf_coefficient(k, c, cfg.sr.q));
        if (2.0 * (k + 1) >= cfg.sr.q && ak * ratio / (1.0 - ratio) < 1e-12 * a0) {
            return k + 1;
        }
    }
    throw SeriesError("shadowed-Rician coverage series needs more than "
                      + std::to_string(max_sr_terms) + " terms");
}

} // namespace detail

/// AN-to-satellite coverage before clamping. The regularized incomplete gamma
/// in each CDF term is replaced by its Alzer form (1 - exp(-zeta_k y))^(k+1),
/// which expands into transforms of the aerial interference.
inline double coverage_as_raw(double t_h2, const ScenarioConfig& cfg)
{
    if (!(t_h2 > 0.0)) {
        throw DomainError("coverage_as requires a threshold > 0");
    }
    const SrConstants c = cfg.sr_constants();
    const int terms = detail::sr_series_terms(cfg);
    const double scale = c.rate() * t_h2 * std::pow(cfg.d_0, cfg.alpha_2) / (cfg.p_m * cfg.g_t_main * cfg.g_r);
    CompensatedSum cdf;
    for (int k = 0; k < terms; ++k) {
        const double a_k = sr_cdf_coefficient(k, c, cfg.sr.q);
        if (a_k == 0.0) {
            continue;
        }
        const double zeta = std::exp(-std::lgamma(k + 2.0) / (k + 1.0));
        CompensatedSum inner;
        for (int t = 0; t <= k + 1; ++t) {
            const double sign = (t % 2 == 0) ? 1.0 : -1.0;
            const double s = t * zeta * scale;
            inner += sign * binomial(k + 1, t) * laplace_ia(s, cfg) * std::exp(-s * cfg.noise_a);
        }
        cdf += a_k * inner.value();
    }
    return 1.0 - cdf.value();
}

inline double coverage_as(double t_h2, const ScenarioConfig& cfg)
{
    return std::clamp(coverage_as_raw(t_h2, cfg), 0.0, 1.0);
}

/// Both hops covered, treating them as independent.
inline double coverage_joint(double t_h1, double t_h2, const ScenarioConfig& cfg, const AnalyticOptions& opt = {})
{
    return coverage_ta(t_h1, cfg, opt) * coverage_as(t_h2, cfg);
}

/// Coverage of `link` at a linear threshold; joint uses it for both hops.
inline double coverage(Link link, double threshold, const ScenarioConfig& cfg, const AnalyticOptions& opt = {})
{
    switch (link) {
    case Link::ta: return coverage_ta(threshold, cfg, opt);
    case Link::as: return coverage_as(threshold, cfg);
    case Link::joint: return coverage_joint(threshold, threshold, cfg, opt);
    }
    throw DomainError("unknown link");
}

enum class Method { analytic, monte_carlo };

inline const char* to_string(Method m) { return m == Method::analytic ? "ANALYTIC" : "MONTE_CARLO"; }

struct CoverageCurve {
    std::vector<double> threshold_db;
    std::vector<double> value;
    Method method = Method::analytic;
    std::string config_hash;

    bool is_nonincreasing(double tol = 1e-9) const
    {
        for (std::size_t i = 1; i < value.size(); ++i) {
            if (value[i] > value[i - 1] + tol) {
                return false;
            }
        }
        return true;
    }
};

inline CoverageCurve coverage_curve(Link link, const std::vector<double>& threshold_db, const ScenarioConfig& cfg,
                                    const AnalyticOptions& opt = {})
{
    CoverageCurve c;
    c.threshold_db = threshold_db;
    c.method = Method::analytic;
    c.config_hash = config_hash_hex(cfg);
    for (double t : threshold_db) {
        c.value.push_back(coverage(link, db_to_linear(t), cfg, opt));
    }
    return c;
}

inline void write_csv(std::ostream& out, const CoverageCurve& c)
{
    out << "threshold_db,value,method,config_hash\n";
    char buf[160];
    for (std::size_t i = 0; i < c.value.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.6g,%.10g,%s,%s\n", c.threshold_db[i], c.value[i], to_string(c.method),
                      c.config_hash.c_str());
        out << buf;
    }
}

} // namespace csatn
