// Copyright 2026 The csatn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "csatn/channel/fading.hpp"
#include "csatn/core/config.hpp"
#include "csatn/core/error.hpp"
#include "csatn/core/units.hpp"
#include "csatn/spatial/geometry.hpp"
#include "csatn/spatial/lens.hpp"
#include "csatn/spatial/point_process.hpp"

namespace csatn {

/// How a realization is conditioned on the users around the target AN.
enum class Conditioning {
    /// A target user is always placed in the lens and each of the other
    /// n_0 - 1 users lands there with probability P_I. No resampling.
    planted_target,
    /// n_0 users, the realization is redrawn until the lens holds at least one.
    at_least_one_user,
    /// As above, but the lens must hold the target and at least one interferer.
    at_least_one_interferer,
};

enum class UserSampling {
    /// Draw the lens count from a binomial and place the users by rejection
    /// from the coverage disk.
    lens_local,
    /// Materialize all n_0 users on the user disk and keep those in the lens.
    full_scenario,
};

inline const char* to_string(Conditioning c)
{
    switch (c) {
    case Conditioning::planted_target: return "planted";
    case Conditioning::at_least_one_user: return "at-least-one-user";
    case Conditioning::at_least_one_interferer: return "at-least-one-interferer";
    }
    return "?";
}

inline Conditioning parse_conditioning(const std::string& s)
{
    if (s == "planted") return Conditioning::planted_target;
    if (s == "at-least-one-user") return Conditioning::at_least_one_user;
    if (s == "at-least-one-interferer") return Conditioning::at_least_one_interferer;
    throw ConfigError("unknown conditioning '" + s + "'");
}

struct SimOptions {
    Conditioning conditioning = Conditioning::at_least_one_user;
    UserSampling users = UserSampling::lens_local;
    MhcppOptions mhcpp{};
    /// Redraws allowed per realization before giving up.
    int max_resamples = 100000;
};

/// One snapshot of the network. The user disk and the AN deployment disk are
/// both centered at the origin.
struct Realization {
    PointSet2D an_positions;
    std::size_t target_an = 0;
    double m0 = 0.0;
    double target_distance = 0.0;
    std::vector<double> interferer_distances;
    double target_ta_fade = 0.0;
    std::vector<double> interferer_ta_fades;
    double target_as_fade = 0.0;
    /// One entry per AN other than the target, in an_positions order.
    std::vector<double> other_an_as_fades;
    std::vector<double> other_an_gains;
    /// Redraws spent on conditioning.
    int resamples = 0;
};

namespace detail {

template <class Rng>
Point2 sample_in_lens(const Point2& an, const ScenarioConfig& cfg, Rng& rng)
{
    const Disk cov(an, cfg.r_a);
    const double r_u2 = cfg.r_u * cfg.r_u;
    for (int i = 0; i < 100000000; ++i) {
        const Point2 p = sample_uniform_in_disk(cov, rng);
        if (p.x * p.x + p.y * p.y <= r_u2) {
            return p;
        }
    }
    throw ResampleError("lens rejection sampler found no point inside the user disk");
}

} // namespace detail

/// Draws one realization. Throws ResampleError when the conditioning cannot
/// be met within opt.max_resamples redraws.
template <class Rng>
Realization realize(const ScenarioConfig& cfg, Rng& rng, const SimOptions& opt = {})
{
    if (opt.users == UserSampling::full_scenario && opt.conditioning == Conditioning::planted_target) {
        throw ConfigError("planted-target conditioning requires lens-local user sampling");
    }
    const Disk deploy({0.0, 0.0}, cfg.r_c());
    const Disk user_disk({0.0, 0.0}, cfg.r_u);
    const std::int64_t n_0 = cfg.n_0();
    const std::size_t min_users = opt.conditioning == Conditioning::at_least_one_interferer ? 2 : 1;
    Realization out;
    std::vector<double> lens_distances;
    std::string failing = "AN process is empty";
    for (int attempt = 0;; ++attempt) {
        if (attempt > opt.max_resamples) {
            throw ResampleError("realize: gave up after " + std::to_string(opt.max_resamples)
                                + " redraws; last failing condition: " + failing);
        }
        out.resamples = attempt;
        out.an_positions = sample_mhcpp2(cfg.lambda_1, cfg.d_min, deploy, rng, opt.mhcpp);
        if (out.an_positions.empty()) {
            failing = "AN process is empty";
            continue;
        }
        std::uniform_int_distribution<std::size_t> pick(0, out.an_positions.size() - 1);
        out.target_an = pick(rng);
        const Point2 a = out.an_positions.points[out.target_an];
        out.m0 = std::hypot(a.x, a.y);
        if (!(out.m0 < cfg.r_u + cfg.r_a)) {
            failing = "target AN lens is empty";
            continue;
        }
        lens_distances.clear();
        if (opt.users == UserSampling::full_scenario) {
            const PointSet2D users = sample_bpp(n_0, user_disk, rng);
            const double r_a2 = cfg.r_a * cfg.r_a;
            for (const auto& p : users.points) {
                const double d2 = distance_sq(p, a);
                if (d2 <= r_a2) {
                    lens_distances.push_back(std::sqrt(d2));
                }
            }
        } else {
            const double p_i = interferer_success_prob(out.m0, cfg);
            const bool planted = opt.conditioning == Conditioning::planted_target;
            std::binomial_distribution<std::int64_t> count(planted ? n_0 - 1 : n_0, p_i);
            const std::int64_t n = count(rng) + (planted ? 1 : 0);
            for (std::int64_t i = 0; i < n; ++i) {
                lens_distances.push_back(distance(detail::sample_in_lens(a, cfg, rng), a));
            }
        }
        if (lens_distances.size() < min_users) {
            failing = min_users == 1 ? "no user in the target lens" : "no interferer in the target lens";
            continue;
        }
        break;
    }
    // Lens users are exchangeable, so any fixed choice of target is uniform.
    std::uniform_int_distribution<std::size_t> pick_user(0, lens_distances.size() - 1);
    const std::size_t t = pick_user(rng);
    out.target_distance = lens_distances[t];
    out.interferer_distances.clear();
    for (std::size_t i = 0; i < lens_distances.size(); ++i) {
        if (i != t) {
            out.interferer_distances.push_back(lens_distances[i]);
        }
    }

    const NakagamiPower ta(cfg.n_ta);
    out.target_ta_fade = ta.sample(rng);
    out.interferer_ta_fades.resize(out.interferer_distances.size());
    for (auto& f : out.interferer_ta_fades) {
        f = ta.sample(rng);
    }
    const SrPower as(cfg.sr);
    std::bernoulli_distribution mainlobe(cfg.theta / two_pi);
    out.target_as_fade = as.sample(rng);
    const std::size_t others = out.an_positions.size() - 1;
    out.other_an_as_fades.resize(others);
    out.other_an_gains.resize(others);
    for (std::size_t i = 0; i < others; ++i) {
        out.other_an_as_fades[i] = as.sample(rng);
        out.other_an_gains[i] = (mainlobe(rng) ? cfg.g_t_main : cfg.g_t_side) * cfg.g_r;
    }
    return out;
}

/// SINR of the terrestrial hop; +inf with no interferers and no noise.
inline double sinr_ta(const Realization& r, const ScenarioConfig& cfg)
{
    auto rx = [&](double fade, double dist) {
        return cfg.p_t * fade * std::pow(cfg.h_a * cfg.h_a + dist * dist, -0.5 * cfg.alpha_1);
    };
    const double signal = rx(r.target_ta_fade, r.target_distance);
    double interference = cfg.noise_t;
    for (std::size_t i = 0; i < r.interferer_distances.size(); ++i) {
        interference += rx(r.interferer_ta_fades[i], r.interferer_distances[i]);
    }
    if (interference == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return signal / interference;
}

/// SINR of the satellite hop; every AN is d_0 from the satellite.
inline double sinr_as(const Realization& r, const ScenarioConfig& cfg)
{
    const double path = std::pow(cfg.d_0, -cfg.alpha_2);
    const double signal = cfg.p_m * cfg.g_t_main * cfg.g_r * r.target_as_fade * path;
    double interference = cfg.noise_a;
    for (std::size_t i = 0; i < r.other_an_as_fades.size(); ++i) {
        interference += cfg.p_a * r.other_an_gains[i] * r.other_an_as_fades[i] * path;
    }
    if (interference == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return signal / interference;
}

} // namespace csatn
