// Copyright 2026 The csatn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>

#include "csatn/core/config.hpp"
#include "csatn/core/units.hpp"

namespace csatn {

namespace detail {

// Squared doubled area of the triangle with sides (d, r1, r2), written as a
// product so that it stays accurate when the triangle degenerates.
inline double heron_product(double d, double r1, double r2) noexcept
{
    const double p = (d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (-d + r1 + r2);
    return std::max(p, 0.0);
}

// Angle at the center of the circle of radius `r1` subtended by half of the
// common chord with a circle of radius `r2` whose center is `d` away.
// atan2 of (sqrt(Heron), law-of-cosines numerator) avoids acos(1 + eps).
inline double half_chord_angle(double d, double r1, double r2) noexcept
{
    return std::atan2(std::sqrt(heron_product(d, r1, r2)), d * d + r1 * r1 - r2 * r2);
}

// theta - sin(2 theta) / 2, the circular segment area over r^2. A Taylor
// series replaces the direct form for thin segments where the two terms
// cancel.
inline double segment_factor(double theta) noexcept
{
    const double x = 2.0 * theta;
    if (x < 0.2) {
        const double x2 = x * x;
        return 0.5 * x * x2 * (1.0 / 6.0 - x2 * (1.0 / 120.0 - x2 * (1.0 / 5040.0 - x2 / 362880.0)));
    }
    return theta - 0.5 * std::sin(x);
}

} // namespace detail

/// Area of the intersection of two disks with radii r1, r2 and centers d
/// apart. Covers containment and disjoint placements without branching on
/// them.
inline double circle_intersection_area(double d, double r1, double r2) noexcept
{
    const double t1 = detail::half_chord_angle(d, r1, r2);
    const double t2 = detail::half_chord_angle(d, r2, r1);
    return r1 * r1 * detail::segment_factor(t1) + r2 * r2 * detail::segment_factor(t2);
}

/// Area of the intersection of a disk of radius r_a with a disk of radius
/// r_u whose centers are m0 apart. Assumes r_u >= r_a.
inline double lens_area(double m0, double r_u, double r_a)
{
    if (m0 <= r_u - r_a) {
        return pi * r_a * r_a;
    }
    if (m0 >= r_u + r_a) {
        return 0.0;
    }
    return std::clamp(circle_intersection_area(m0, r_u, r_a), 0.0, pi * r_a * r_a);
}

/// Probability that one user, uniform on the user disk, falls inside the AN
/// coverage disk whose center is m0 from the user-disk center.
inline double interferer_success_prob(double m0, double r_u, double r_a)
{
    if (!(m0 >= 0.0) || !(m0 < r_u + r_a)) {
        throw DomainError("interferer_success_prob: m0 must lie in [0, r_u + r_a)");
    }
    if (m0 <= r_u - r_a) {
        return (r_a * r_a) / (r_u * r_u);
    }
    return lens_area(m0, r_u, r_a) / (pi * r_u * r_u);
}

inline double interferer_success_prob(double m0, const ScenarioConfig& cfg)
{
    return interferer_success_prob(m0, cfg.r_u, cfg.r_a);
}

} // namespace csatn
