// Copyright 2026 The csatn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "csatn/core/error.hpp"
#include "csatn/core/units.hpp"

namespace csatn {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2&, const Point2&) = default;
};

inline double distance(const Point2& a, const Point2& b) noexcept { return std::hypot(a.x - b.x, a.y - b.y); }

inline double distance_sq(const Point2& a, const Point2& b) noexcept
{
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

struct Disk {
    Point2 center{};
    double radius = 1.0;

    Disk() = default;
    Disk(Point2 c, double r) : center(c), radius(r)
    {
        if (!(r > 0.0)) {
            throw DomainError("disk radius must be > 0");
        }
    }

    double area() const noexcept { return pi * radius * radius; }
    bool contains(const Point2& p) const noexcept { return distance_sq(p, center) <= radius * radius; }
};

enum class ProcessTag { bpp, ppp, mhcpp2 };

inline const char* to_string(ProcessTag t)
{
    switch (t) {
    case ProcessTag::bpp: return "BPP";
    case ProcessTag::ppp: return "PPP";
    case ProcessTag::mhcpp2: return "MHCPP2";
    }
    return "?";
}

/// Finite planar point pattern together with the disk that produced it.
/// `marks` is either empty or parallel to `points` (thinning scores).
struct PointSet2D {
    std::vector<Point2> points;
    std::vector<double> marks;
    Disk region;
    ProcessTag tag = ProcessTag::bpp;

    std::size_t size() const noexcept { return points.size(); }
    bool empty() const noexcept { return points.empty(); }
};

/// Smallest pairwise distance, +inf for fewer than two points.
inline double min_pairwise_distance(const std::vector<Point2>& pts)
{
    double best = INFINITY;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            best = std::min(best, distance_sq(pts[i], pts[j]));
        }
    }
    return std::sqrt(best);
}

/// Writes `x_m,y_m,mark` rows; the mark column is empty for unmarked sets.
inline void write_csv(std::ostream& out, const PointSet2D& set)
{
    out << "x_m,y_m,mark\n";
    char buf[128];
    for (std::size_t i = 0; i < set.points.size(); ++i) {
        if (set.marks.empty()) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,\n", set.points[i].x, set.points[i].y);
        } else {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", set.points[i].x, set.points[i].y,
                          set.marks[i]);
        }
        out << buf;
    }
}

} // namespace csatn
