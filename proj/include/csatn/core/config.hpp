// Copyright 2026 The csatn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "csatn/core/error.hpp"
#include "csatn/core/units.hpp"

namespace csatn {

/// Shadowed-Rician channel description. `c` is half the mean scattered power,
/// `q` the Nakagami parameter of the line-of-sight amplitude and `omega` the
/// mean line-of-sight power.
struct SrParams {
    double c = 0.158;
    double q = 1.0;
    double omega = 0.1;
};

/// Constants of the shadowed-Rician power density
/// f(x) = kappa * exp(-beta x) * 1F1(q; 1; delta x).
struct SrConstants {
    double kappa = 0.0;
    double delta = 0.0;
    double beta = 0.0;

    /// Exponential rate left after the Kummer transform.
    double rate() const noexcept { return beta - delta; }
};

inline SrConstants derive_sr_constants(const SrParams& sr)
{
    if (!(sr.c > 0.0) || !(sr.q > 0.0) || !(sr.omega >= 0.0)) {
        throw DomainError("shadowed-Rician parameters require c > 0, q > 0, omega >= 0");
    }
    const double two_c = 2.0 * sr.c;
    const double two_cq = two_c * sr.q;
    SrConstants k;
    // kappa = (2cq)^q / (2c (2cq + omega)^q), evaluated in log space for large q.
    k.kappa = std::exp(sr.q * std::log(two_cq) - sr.q * std::log(two_cq + sr.omega)) / two_c;
    k.delta = sr.omega / (two_c * (two_cq + sr.omega));
    k.beta = 1.0 / two_c;
    if (!(k.beta > k.delta)) {
        throw SeriesError("shadowed-Rician constants give beta <= delta; the Kummer series diverges");
    }
    return k;
}

/// Scenario parameters. Lengths in meters, densities in m^-2, powers in
/// watts, gains linear, angles in radians. Defaults reproduce the reference
/// deployment (AN height 50 m, 400 km to the satellite, 9.5 km user disk,
/// 1 km hard-core distance) with a pi/6 mainlobe, which has no reference
/// value and is user supplied.
struct ScenarioConfig {
    double h_a = 50.0;
    double d_0 = 4.0e5;
    double r_u = 9500.0;
    double r_a = 500.0;
    double d_min = 1000.0;
    double p_t = 100.0;
    double p_a = 100.0;
    double p_m = 100.0;
    double g_t_main = 10.0;
    double g_t_side = 0.1;
    double g_r = 1.0;
    double theta = pi / 6.0;
    double lambda_t = 1.0e-4;
    double lambda_1 = 5.0e-7;
    int n_ta = 3;
    SrParams sr{};
    double alpha_1 = 2.0;
    double alpha_2 = 2.0;
    double k_rate = 1.0;
    double noise_t = 0.0;
    double noise_a = 0.0;

    /// Radius of the AN deployment disk, always r_a + r_u.
    double r_c() const noexcept { return r_a + r_u; }

    /// Number of terminals in the user disk.
    std::int64_t n_0() const noexcept
    {
        return std::llround(lambda_t * pi * r_u * r_u);
    }

    SrConstants sr_constants() const { return derive_sr_constants(sr); }
};

enum class Severity { warning, error };

struct Violation {
    std::string field;
    std::string rule;
    Severity severity = Severity::error;
};

inline bool has_errors(const std::vector<Violation>& violations)
{
    for (const auto& v : violations) {
        if (v.severity == Severity::error) {
            return true;
        }
    }
    return false;
}

/// Checks every invariant of `cfg`. Never throws; an empty list means the
/// configuration is usable as is.
inline std::vector<Violation> validate(const ScenarioConfig& cfg)
{
    std::vector<Violation> out;
    auto error = [&out](std::string field, std::string rule) {
        out.push_back({std::move(field), std::move(rule), Severity::error});
    };

    const std::pair<const char*, double> lengths[] = {
        {"h_a", cfg.h_a}, {"d_0", cfg.d_0}, {"r_u", cfg.r_u}, {"r_a", cfg.r_a}, {"d_min", cfg.d_min}};
    for (const auto& [name, value] : lengths) {
        if (!(std::isfinite(value) && value > 0.0)) {
            error(name, "length must be finite and > 0");
        }
    }
    const std::pair<const char*, double> positive[] = {{"p_t", cfg.p_t},
                                                       {"p_a", cfg.p_a},
                                                       {"p_m", cfg.p_m},
                                                       {"g_t_main", cfg.g_t_main},
                                                       {"g_t_side", cfg.g_t_side},
                                                       {"g_r", cfg.g_r},
                                                       {"alpha_1", cfg.alpha_1},
                                                       {"alpha_2", cfg.alpha_2},
                                                       {"k_rate", cfg.k_rate}};
    for (const auto& [name, value] : positive) {
        if (!(std::isfinite(value) && value > 0.0)) {
            error(name, "must be finite and > 0");
        }
    }
    const std::pair<const char*, double> nonnegative[] = {{"lambda_t", cfg.lambda_t},
                                                          {"lambda_1", cfg.lambda_1},
                                                          {"noise_t", cfg.noise_t},
                                                          {"noise_a", cfg.noise_a}};
    for (const auto& [name, value] : nonnegative) {
        if (!(std::isfinite(value) && value >= 0.0)) {
            error(name, "must be finite and >= 0");
        }
    }

    if (!(cfg.theta > 0.0 && cfg.theta <= two_pi)) {
        error("theta", "mainlobe width must satisfy 0 < theta <= 2 pi");
    }
    if (cfg.n_ta < 1) {
        error("n_ta", "Nakagami parameter must be an integer >= 1");
    }
    if (!(cfg.sr.c > 0.0)) {
        error("sr.c", "must be > 0");
    }
    if (!(cfg.sr.q > 0.0)) {
        error("sr.q", "must be > 0");
    }
    if (!(cfg.sr.omega >= 0.0)) {
        error("sr.omega", "must be >= 0");
    }
    if (cfg.r_u > 0.0 && cfg.r_a > 0.0 && !(cfg.r_u > cfg.r_a)) {
        error("r_u", "user disk must be larger than the AN coverage disk (r_u > r_a)");
    }
    if (std::isfinite(cfg.lambda_t) && std::isfinite(cfg.r_u) && cfg.n_0() < 1) {
        error("lambda_t", "n_0 = round(lambda_t * pi * r_u^2) must be >= 1");
    }
    if (cfg.r_a > 0.0 && cfg.d_min > 0.0
        && std::abs(cfg.r_a - 0.5 * cfg.d_min) > 1e-9 * cfg.d_min) {
        out.push_back({"r_a", "association policy expects r_a = d_min / 2", Severity::warning});
    }
    return out;
}

inline std::string to_string(const Violation& v)
{
    return std::string(v.severity == Severity::error ? "error" : "warning") + ": " + v.field + ": "
           + v.rule;
}

/// Stable 64-bit FNV-1a fingerprint over the exact bit patterns of every
/// field. Two configs share a hash iff all fields are bitwise equal.
inline std::uint64_t config_hash(const ScenarioConfig& cfg)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix_bytes = [&h](const void* data, std::size_t n) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < n; ++i) {
            h ^= p[i];
            h *= 0x100000001b3ULL;
        }
    };
    auto mix = [&](double v) {
        if (v == 0.0) {
            v = 0.0; // fold -0.0
        }
        mix_bytes(&v, sizeof v);
    };
    for (double v : {cfg.h_a, cfg.d_0, cfg.r_u, cfg.r_a, cfg.d_min, cfg.p_t, cfg.p_a, cfg.p_m,
                     cfg.g_t_main, cfg.g_t_side, cfg.g_r, cfg.theta, cfg.lambda_t, cfg.lambda_1}) {
        mix(v);
    }
    const std::int64_t n_ta = cfg.n_ta;
    mix_bytes(&n_ta, sizeof n_ta);
    for (double v : {cfg.sr.c, cfg.sr.q, cfg.sr.omega, cfg.alpha_1, cfg.alpha_2, cfg.k_rate,
                     cfg.noise_t, cfg.noise_a}) {
        mix(v);
    }
    return h;
}

inline std::string config_hash_hex(const ScenarioConfig& cfg)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(config_hash(cfg)));
    return buf;
}

} // namespace csatn
