// Copyright 2026 The csatn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>
#include <vector>

#include "csatn/analytic/quadrature.hpp"
#include "csatn/core/config.hpp"
#include "csatn/core/error.hpp"
#include "csatn/core/link.hpp"
#include "csatn/core/units.hpp"
#include "csatn/montecarlo/realization.hpp"
#include "csatn/montecarlo/rng.hpp"

namespace csatn {

struct RunSample {
    double sinr_ta = 0.0;
    double sinr_as = 0.0;
};

struct EstimateWithCI {
    double value = 0.0;
    /// Half-width of the 95% normal-approximation interval. Zero when it is
    /// undefined (fewer than two usable runs).
    double half_width = 0.0;
    std::int64_t runs = 0;
    std::uint64_t seed = 0;
    /// Runs left out of a rate average because their SINR was infinite.
    std::int64_t excluded = 0;
};

/// Draws `runs` realizations and records both SINRs. Run i always uses the
/// stream stream_seed(seed, i), and results are stored by run index, so the
/// output does not depend on `workers`.
inline std::vector<RunSample> simulate(const ScenarioConfig& cfg, std::int64_t runs, std::uint64_t seed,
                                       const SimOptions& opt = {}, unsigned workers = 1)
{
    if (runs < 1) {
        throw DomainError("simulate: runs must be >= 1");
    }
    std::vector<RunSample> out(static_cast<std::size_t>(runs));
    std::atomic<std::int64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    constexpr std::int64_t chunk = 64;
    auto work = [&]() {
        try {
            for (;;) {
                const std::int64_t begin = next.fetch_add(chunk);
                if (begin >= runs) {
                    return;
                }
                const std::int64_t end = std::min(begin + chunk, runs);
                for (std::int64_t i = begin; i < end; ++i) {
                    RunRng rng = make_run_rng(seed, static_cast<std::uint64_t>(i));
                    const Realization r = realize(cfg, rng, opt);
                    out[static_cast<std::size_t>(i)] = {sinr_ta(r, cfg), sinr_as(r, cfg)};
                }
            }
        } catch (...) {
            const std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) {
                failure = std::current_exception();
            }
            next.store(runs);
        }
    };
    workers = std::max(1u, workers);
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return out;
}

inline double sinr_of(const RunSample& s, Link link)
{
    switch (link) {
    case Link::ta: return s.sinr_ta;
    case Link::as: return s.sinr_as;
    case Link::joint: return std::min(s.sinr_ta, s.sinr_as);
    }
    return 0.0;
}

inline bool covered(const RunSample& s, Link link, double threshold)
{
    return sinr_of(s, link) >= threshold;
}

/// Fraction of runs with SINR >= threshold (both hops for joint).
inline EstimateWithCI coverage_from_samples(const std::vector<RunSample>& samples, Link link, double threshold,
                                            std::uint64_t seed = 0)
{
    std::int64_t hits = 0;
    for (const auto& s : samples) {
        hits += covered(s, link, threshold) ? 1 : 0;
    }
    EstimateWithCI e;
    e.runs = static_cast<std::int64_t>(samples.size());
    e.seed = seed;
    e.value = e.runs > 0 ? static_cast<double>(hits) / static_cast<double>(e.runs) : 0.0;
    if (e.runs > 1) {
        e.half_width = 1.96 * std::sqrt(e.value * (1.0 - e.value) / static_cast<double>(e.runs));
    }
    return e;
}

/// Mean of log2(1 + SINR) / k_rate over runs with finite SINR.
inline EstimateWithCI rate_from_samples(const std::vector<RunSample>& samples, Link link, double k_rate,
                                        std::uint64_t seed = 0)
{
    if (link == Link::joint) {
        throw DomainError("rate is defined per hop; use TA or AS");
    }
    CompensatedSum sum;
    std::int64_t n = 0;
    std::int64_t excluded = 0;
    for (const auto& s : samples) {
        const double g = sinr_of(s, link);
        if (std::isinf(g)) {
            ++excluded;
            continue;
        }
        sum += std::log2(1.0 + g) / k_rate;
        ++n;
    }
    EstimateWithCI e;
    e.runs = static_cast<std::int64_t>(samples.size());
    e.seed = seed;
    e.excluded = excluded;
    if (n == 0) {
        return e;
    }
    e.value = sum.value() / static_cast<double>(n);
    if (n > 1) {
        CompensatedSum sq;
        for (const auto& s : samples) {
            const double g = sinr_of(s, link);
            if (!std::isinf(g)) {
                const double d = std::log2(1.0 + g) / k_rate - e.value;
                sq += d * d;
            }
        }
        e.half_width = 1.96 * std::sqrt(sq.value() / static_cast<double>(n - 1) / static_cast<double>(n));
    }
    return e;
}

inline EstimateWithCI estimate_coverage(Link link, double threshold, const ScenarioConfig& cfg, std::int64_t runs,
                                        std::uint64_t master_seed, const SimOptions& opt = {}, unsigned workers = 1)
{
    return coverage_from_samples(simulate(cfg, runs, master_seed, opt, workers), link, threshold, master_seed);
}

inline EstimateWithCI estimate_rate(Link link, const ScenarioConfig& cfg, std::int64_t runs, std::uint64_t master_seed,
                                    const SimOptions& opt = {}, unsigned workers = 1)
{
    return rate_from_samples(simulate(cfg, runs, master_seed, opt, workers), link, cfg.k_rate, master_seed);
}

/// Per-run dump: run_id, link, sinr_db, covered_flag at `threshold_db`.
inline void write_sinr_csv(std::ostream& out, const std::vector<RunSample>& samples, double threshold_db)
{
    out << "run_id,link,sinr_db,covered_flag\n";
    const double thr = db_to_linear(threshold_db);
    char buf[128];
    for (std::size_t i = 0; i < samples.size(); ++i) {
        for (Link l : {Link::ta, Link::as}) {
            const double g = sinr_of(samples[i], l);
            std::snprintf(buf, sizeof buf, "%zu,%s,%.10g,%d\n", i, to_string(l),
                          std::isinf(g) ? INFINITY : linear_to_db(g), covered(samples[i], l, thr) ? 1 : 0);
            out << buf;
        }
    }
}

} // namespace csatn
