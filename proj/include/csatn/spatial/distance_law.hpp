// Copyright 2026 The csatn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "csatn/analytic/quadrature.hpp"
#include "csatn/core/config.hpp"
#include "csatn/core/error.hpp"
#include "csatn/spatial/lens.hpp"

namespace csatn {

/// Placement of the AN coverage disk relative to the user disk.
enum class LensCase {
    /// Coverage disk inside the user disk, m0 <= r_u - r_a.
    fully_inside,
    /// Overlapping, AN projection inside the user disk, m0 <= r_u.
    partial_center_in,
    /// Overlapping, AN projection outside the user disk, m0 < r_u + r_a.
    partial_center_out,
};

inline const char* to_string(LensCase c)
{
    switch (c) {
    case LensCase::fully_inside: return "FULLY_INSIDE";
    case LensCase::partial_center_in: return "PARTIAL_CENTER_IN";
    case LensCase::partial_center_out: return "PARTIAL_CENTER_OUT";
    }
    return "?";
}

/// Interval of the distance support on which the density is smooth.
/// `sqrt_edge_lo` marks a square-root singularity in the derivative at `lo`.
struct SupportPiece {
    double lo;
    double hi;
    bool sqrt_edge_lo;
};

/// Distribution of the distance from the AN projection to a user drawn
/// uniformly from the lens (coverage disk intersected with the user disk),
/// for an AN projection m0 away from the user-disk center.
class DistanceLaw {
public:
    /// Relative support width below which expect() treats the law as a
    /// point mass.
    static constexpr double degenerate_width = 1e-6;

    DistanceLaw(double m0, double r_u, double r_a) : m0_(m0), r_u_(r_u), r_a_(r_a)
    {
        if (!(r_a > 0.0) || !(r_u > r_a)) {
            throw DomainError("distance law requires 0 < r_a < r_u");
        }
        if (!(m0 >= 0.0) || !(m0 < r_u + r_a)) {
            throw DomainError("distance law requires 0 <= m0 < r_u + r_a");
        }
        if (m0 <= r_u - r_a) {
            case_ = LensCase::fully_inside;
            pieces_.push_back({0.0, r_a, false});
        } else if (m0 <= r_u) {
            case_ = LensCase::partial_center_in;
            if (r_u - m0 > 0.0) {
                pieces_.push_back({0.0, r_u - m0, false});
            }
            pieces_.push_back({r_u - m0, r_a, true});
        } else {
            case_ = LensCase::partial_center_out;
            pieces_.push_back({m0 - r_u, r_a, true});
        }
        gamma_ = lens_area(m0, r_u, r_a);
    }

    DistanceLaw(double m0, const ScenarioConfig& cfg) : DistanceLaw(m0, cfg.r_u, cfg.r_a) {}

    double m0() const noexcept { return m0_; }
    double r_u() const noexcept { return r_u_; }
    double r_a() const noexcept { return r_a_; }
    LensCase lens_case() const noexcept { return case_; }
    double r_min() const noexcept { return pieces_.front().lo; }
    double r_max() const noexcept { return pieces_.back().hi; }
    const std::vector<SupportPiece>& pieces() const noexcept { return pieces_; }
    /// Lens area.
    double gamma() const noexcept { return gamma_; }

    /// Density 2 r phi(r) / gamma where 2 phi(r) is the angle of the circle of
    /// radius r around the AN projection that lies inside the user disk.
    double pdf(double r) const noexcept
    {
        if (!(r > r_min()) || r > r_max()) {
            return 0.0;
        }
        if (case_ == LensCase::fully_inside) {
            return 2.0 * r / (r_a_ * r_a_);
        }
        const double phi = detail::half_chord_angle(m0_, r, r_u_);
        return 2.0 * r * phi / gamma_;
    }

    /// Area of the part of the lens within r of the AN projection, over gamma.
    double cdf(double r) const noexcept
    {
        if (!(r > r_min())) {
            return 0.0;
        }
        if (r >= r_max()) {
            return 1.0;
        }
        if (case_ == LensCase::fully_inside) {
            return (r * r) / (r_a_ * r_a_);
        }
        return std::clamp(circle_intersection_area(m0_, r_u_, r) / gamma_, 0.0, 1.0);
    }

    /// E[g(R)] under this law, integrating piece by piece.
    template <class G>
    double expect(G&& g, const QuadratureSpec& spec = {}) const
    {
        // As m0 -> r_u + r_a the lens shrinks to a sliver whose area is lost
        // to rounding; the law is then a point mass for any smooth g.
        if (r_max() - r_min() <= degenerate_width * r_max()) {
            return g(0.5 * (r_min() + r_max()));
        }
        CompensatedSum sum;
        for (const auto& p : pieces_) {
            if (!(p.hi > p.lo)) {
                continue;
            }
            auto integrand = [&](double r) { return g(r) * pdf(r); };
            sum += p.sqrt_edge_lo ? integrate_sqrt_lo(integrand, p.lo, p.hi, spec)
                                  : integrate_value(integrand, p.lo, p.hi, spec);
        }
        return sum.value();
    }

private:
    double m0_;
    double r_u_;
    double r_a_;
    LensCase case_ = LensCase::fully_inside;
    std::vector<SupportPiece> pieces_;
    double gamma_ = 0.0;
};

inline double distance_pdf(double r, const DistanceLaw& law) noexcept { return law.pdf(r); }
inline double distance_cdf(double r, const DistanceLaw& law) noexcept { return law.cdf(r); }

/// Density of the distance between a uniformly placed AN in the deployment
/// disk of radius r_u + r_a and its center.
inline double projection_distance_pdf(double m0, double r_u, double r_a) noexcept
{
    const double r_c = r_u + r_a;
    if (!(m0 >= 0.0) || m0 > r_c) {
        return 0.0;
    }
    return 2.0 * m0 / (r_c * r_c);
}

inline double projection_distance_cdf(double m0, double r_u, double r_a) noexcept
{
    const double r_c = r_u + r_a;
    if (!(m0 > 0.0)) {
        return 0.0;
    }
    if (m0 >= r_c) {
        return 1.0;
    }
    return (m0 * m0) / (r_c * r_c);
}

} // namespace csatn
