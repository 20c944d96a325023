// Copyright 2026 The csatn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <string>

#include "csatn/analytic/coverage.hpp"
#include "csatn/analytic/quadrature.hpp"
#include "csatn/core/config.hpp"
#include "csatn/core/error.hpp"
#include "csatn/core/link.hpp"

namespace csatn {

struct RateResult {
    /// Average ergodic rate in bit/s/Hz, already divided by k_rate.
    double rate = 0.0;
    /// Upper limit of the layer-cake integral in bits.
    double t_max = 0.0;
};

namespace detail {

// Integrand cutoff for the layer-cake upper limit. Stricter than needed for
// plotting so that the truncated tail stays below the quadrature tolerance.
inline constexpr double rate_tail_cutoff = 1e-9;

// Smallest power of two t with f(t) < cutoff; f must be nonincreasing.
template <class F>
double layer_cake_limit(F& f)
{
    for (double t = 1.0; t <= 4096.0; t *= 2.0) {
        if (f(t) < rate_tail_cutoff) {
            return t;
        }
    }
    throw QuadratureError("coverage does not decay; rate integral has no finite upper limit", 4096.0, INFINITY,
                          INFINITY);
}

template <class F>
RateResult layer_cake(F&& cov_at_bits, double k_rate, const QuadratureSpec& spec)
{
    RateResult r;
    r.t_max = layer_cake_limit(cov_at_bits);
    r.rate = integrate_value(cov_at_bits, 0.0, r.t_max, spec) / k_rate;
    return r;
}

} // namespace detail

/// Terrestrial-link rate, (1/K) times the integral over t > 0 of the coverage
/// at threshold 2^t - 1. The no-interferer term is always left out here: a
/// lone target has infinite SINR and would make the integral diverge.
inline RateResult rate_ta_detail(const ScenarioConfig& cfg, const AnalyticOptions& opt = {})
{
    AnalyticOptions o = opt;
    o.include_zero_term = false;
    auto f = [&](double t) { return coverage_ta_raw(std::expm1(t * std::log(2.0)), cfg, o); };
    return detail::layer_cake(f, cfg.k_rate, opt.quad);
}

inline double rate_ta(const ScenarioConfig& cfg, const AnalyticOptions& opt = {})
{
    return rate_ta_detail(cfg, opt).rate;
}

inline RateResult rate_as_detail(const ScenarioConfig& cfg, const QuadratureSpec& spec = {})
{
    auto f = [&](double t) { return coverage_as_raw(std::expm1(t * std::log(2.0)), cfg); };
    return detail::layer_cake(f, cfg.k_rate, spec);
}

inline double rate_as(const ScenarioConfig& cfg, const QuadratureSpec& spec = {})
{
    return rate_as_detail(cfg, spec).rate;
}

inline double rate(Link link, const ScenarioConfig& cfg, const AnalyticOptions& opt = {})
{
    switch (link) {
    case Link::ta: return rate_ta(cfg, opt);
    case Link::as: return rate_as(cfg, opt.quad);
    case Link::joint: break;
    }
    throw DomainError("rate is defined per hop; use TA or AS");
}

struct ThresholdSearch {
    double lo_db = -80.0;
    double hi_db = 60.0;
    double tol_db = 0.01;
};

/// Threshold (dB) at which the analytic coverage of `link` equals `target`,
/// by bisection on the nonincreasing coverage curve.
inline double find_threshold(Link link, double target, const ScenarioConfig& cfg, const AnalyticOptions& opt = {},
                             const ThresholdSearch& range = {})
{
    if (!(target > 0.0 && target < 1.0)) {
        throw DomainError("find_threshold: target coverage must lie in (0, 1)");
    }
    auto cov = [&](double db) { return coverage(link, db_to_linear(db), cfg, opt); };
    double lo = range.lo_db;
    double hi = range.hi_db;
    const double c_lo = cov(lo);
    const double c_hi = cov(hi);
    if (!(c_lo >= target && c_hi <= target)) {
        throw DomainError("find_threshold: target " + std::to_string(target) + " is outside the coverage range ["
                          + std::to_string(c_hi) + ", " + std::to_string(c_lo) + "] over ["
                          + std::to_string(lo) + ", " + std::to_string(hi) + "] dB");
    }
    while (hi - lo > range.tol_db) {
        const double mid = 0.5 * (lo + hi);
        if (cov(mid) >= target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace csatn
