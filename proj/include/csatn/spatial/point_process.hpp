// Copyright 2026 The csatn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <unordered_map>
#include <vector>

#include "csatn/core/error.hpp"
#include "csatn/core/units.hpp"
#include "csatn/spatial/geometry.hpp"

namespace csatn {

template <class Rng>
Point2 sample_uniform_in_disk(const Disk& d, Rng& rng)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double rad = d.radius * std::sqrt(u(rng));
    const double ang = two_pi * u(rng);
    return {d.center.x + rad * std::cos(ang), d.center.y + rad * std::sin(ang)};
}

/// n points i.i.d. uniform on `region`.
template <class Rng>
PointSet2D sample_bpp(std::int64_t n, const Disk& region, Rng& rng)
{
    if (n < 0) {
        throw DomainError("sample_bpp: n must be >= 0");
    }
    PointSet2D out;
    out.region = region;
    out.tag = ProcessTag::bpp;
    out.points.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
        out.points.push_back(sample_uniform_in_disk(region, rng));
    }
    return out;
}

/// Homogeneous Poisson process of intensity `lambda` restricted to `region`.
template <class Rng>
PointSet2D sample_ppp(double lambda, const Disk& region, Rng& rng)
{
    if (!(lambda >= 0.0)) {
        throw DomainError("sample_ppp: lambda must be >= 0");
    }
    std::int64_t n = 0;
    if (lambda > 0.0) {
        std::poisson_distribution<std::int64_t> count(lambda * region.area());
        n = count(rng);
    }
    PointSet2D out = sample_bpp(n, region, rng);
    out.tag = ProcessTag::ppp;
    return out;
}

namespace detail {

// Uniform grid with cell side `cell` for fixed-radius neighbor queries.
class NeighborGrid {
public:
    NeighborGrid(const std::vector<Point2>& pts, double cell) : pts_(pts), cell_(cell)
    {
        for (std::size_t i = 0; i < pts.size(); ++i) {
            cells_[key(cell_index(pts[i].x), cell_index(pts[i].y))].push_back(i);
        }
    }

    // Calls fn(j) for every j != i with |p_j - p_i| < radius, radius <= cell.
    template <class Fn>
    void for_each_neighbor(std::size_t i, double radius, Fn&& fn) const
    {
        const std::int64_t cx = cell_index(pts_[i].x);
        const std::int64_t cy = cell_index(pts_[i].y);
        const double r2 = radius * radius;
        for (std::int64_t dx = -1; dx <= 1; ++dx) {
            for (std::int64_t dy = -1; dy <= 1; ++dy) {
                const auto it = cells_.find(key(cx + dx, cy + dy));
                if (it == cells_.end()) {
                    continue;
                }
                for (std::size_t j : it->second) {
                    if (j != i && distance_sq(pts_[i], pts_[j]) < r2) {
                        fn(j);
                    }
                }
            }
        }
    }

private:
    std::int64_t cell_index(double v) const { return static_cast<std::int64_t>(std::floor(v / cell_)); }
    static std::int64_t key(std::int64_t cx, std::int64_t cy) { return cx * 4294967311LL + cy; }

    const std::vector<Point2>& pts_;
    double cell_;
    std::unordered_map<std::int64_t, std::vector<std::size_t>> cells_;
};

} // namespace detail

/// Type-II Matérn thinning: keeps candidate i iff no other candidate closer
/// than d_min carries a strictly smaller mark.
inline std::vector<bool> thin_type2(const std::vector<Point2>& pts, const std::vector<double>& marks,
                                    double d_min)
{
    if (marks.size() != pts.size()) {
        throw DomainError("thin_type2: one mark per point required");
    }
    if (!(d_min > 0.0)) {
        throw DomainError("thin_type2: d_min must be > 0");
    }
    std::vector<bool> keep(pts.size(), true);
    const detail::NeighborGrid grid(pts, d_min);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        grid.for_each_neighbor(i, d_min, [&](std::size_t j) {
            if (marks[j] < marks[i]) {
                keep[i] = false;
            }
        });
    }
    return keep;
}

/// Type-I Matérn thinning: keeps candidate i iff it has no neighbor closer
/// than d_min at all.
inline std::vector<bool> thin_type1(const std::vector<Point2>& pts, double d_min)
{
    if (!(d_min > 0.0)) {
        throw DomainError("thin_type1: d_min must be > 0");
    }
    std::vector<bool> keep(pts.size(), true);
    const detail::NeighborGrid grid(pts, d_min);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        grid.for_each_neighbor(i, d_min, [&](std::size_t) { keep[i] = false; });
    }
    return keep;
}

struct MhcppOptions {
    /// Generate candidates on the region grown by d_min and keep only the
    /// retained points inside the region. This removes the boundary excess
    /// of the plain construction, so the result is the stationary process
    /// seen through the window.
    bool guard_zone = false;
};

/// Type-II Matérn hard-core process: a Poisson candidate set of intensity
/// lambda_1 thinned with independent Uniform(0, 1) marks. Retained points
/// keep their marks.
template <class Rng>
PointSet2D sample_mhcpp2(double lambda_1, double d_min, const Disk& region, Rng& rng,
                         const MhcppOptions& opt = {})
{
    if (!(d_min > 0.0)) {
        throw DomainError("sample_mhcpp2: d_min must be > 0");
    }
    const Disk cand_region = opt.guard_zone ? Disk(region.center, region.radius + d_min) : region;
    PointSet2D cand = sample_ppp(lambda_1, cand_region, rng);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> marks(cand.size());
    for (auto& m : marks) {
        m = u(rng);
    }
    const std::vector<bool> keep = thin_type2(cand.points, marks, d_min);
    PointSet2D out;
    out.region = region;
    out.tag = ProcessTag::mhcpp2;
    for (std::size_t i = 0; i < cand.size(); ++i) {
        if (keep[i] && (!opt.guard_zone || region.contains(cand.points[i]))) {
            out.points.push_back(cand.points[i]);
            out.marks.push_back(marks[i]);
        }
    }
    return out;
}

/// Intensity of the stationary type-II Matérn process,
/// (1 - exp(-pi d_min^2 lambda_1)) / (pi d_min^2).
inline double mhcpp_density(double lambda_1, double d_min)
{
    if (!(d_min > 0.0)) {
        throw DomainError("mhcpp_density: d_min must be > 0");
    }
    if (!(lambda_1 >= 0.0)) {
        throw DomainError("mhcpp_density: lambda_1 must be >= 0");
    }
    const double a = pi * d_min * d_min;
    return -std::expm1(-a * lambda_1) / a;
}

} // namespace csatn
