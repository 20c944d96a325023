// Copyright 2026 The csatn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "csatn/core/error.hpp"

namespace csatn {

struct QuadratureSpec {
    double abs_tol = 1e-8;
    double rel_tol = 1e-6;
    /// Maximum number of bisections applied to any one panel.
    int max_depth = 40;
    /// Hard cap on the number of live panels.
    int max_panels = 4000;
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    int evaluations = 0;
};

/// Neumaier-compensated accumulator.
class CompensatedSum {
public:
    void add(double x) noexcept
    {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            c_ += (sum_ - t) + x;
        } else {
            c_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    CompensatedSum& operator+=(double x) noexcept
    {
        add(x);
        return *this;
    }
    double value() const noexcept { return sum_ + c_; }

private:
    double sum_ = 0.0;
    double c_ = 0.0;
};

namespace detail {

struct Panel {
    double lo;
    double hi;
    double value;
    double error;
    int depth;

    bool operator<(const Panel& other) const noexcept { return error < other.error; }
};

// 15-point Kronrod extension of the 7-point Gauss rule.
inline constexpr double gk15_x[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double gk15_wk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double gk15_wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

// One Gauss-Kronrod panel with the QUADPACK error heuristic.
template <class F>
Panel gk15(F& f, double lo, double hi, int depth)
{
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = f(center);
    double resk = fc * gk15_wk[7];
    double resg = fc * gk15_wg[3];
    double resabs = std::abs(resk);
    double fv1[7];
    double fv2[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * gk15_x[j];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        resk += gk15_wk[j] * (f1 + f2);
        resabs += gk15_wk[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1) {
            resg += gk15_wg[j / 2] * (f1 + f2);
        }
    }
    const double mean = 0.5 * resk;
    double resasc = gk15_wk[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j) {
        resasc += gk15_wk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));
    }
    const double ah = std::abs(half);
    resk *= half;
    resabs *= ah;
    resasc *= ah;
    double err = std::abs((resk - resg * half));
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) {
        err = std::max(err, 50.0 * eps * resabs);
    }
    return {lo, hi, resk, err, depth};
}

} // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) integration of f over [lo, hi].
/// Repeatedly bisects the panel with the largest error estimate until the
/// summed estimate drops below max(abs_tol, rel_tol * |I|). Throws
/// QuadratureError, naming the worst panel, when the limits are exhausted.
template <class F>
QuadratureResult integrate(F&& f, double lo, double hi, const QuadratureSpec& spec = {})
{
    if (!(spec.abs_tol > 0.0) || !(spec.rel_tol > 0.0)) {
        throw DomainError("quadrature tolerances must be > 0");
    }
    if (lo == hi) {
        return {};
    }
    std::vector<detail::Panel> heap;
    heap.reserve(64);
    heap.push_back(detail::gk15(f, lo, hi, 0));
    int evaluations = 15;
    double total = heap.front().value;
    double total_err = heap.front().error;
    for (int step = 1;; ++step) {
        if (!std::isfinite(total)) {
            const auto& worst = heap.front();
            throw QuadratureError("integrand produced a non-finite value", worst.lo, worst.hi,
                                  worst.error);
        }
        if (total_err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
            break;
        }
        std::pop_heap(heap.begin(), heap.end());
        const detail::Panel worst = heap.back();
        if (worst.depth >= spec.max_depth || static_cast<int>(heap.size()) >= spec.max_panels) {
            throw QuadratureError("adaptive quadrature did not converge; worst panel ["
                                      + std::to_string(worst.lo) + ", " + std::to_string(worst.hi) + "]",
                                  worst.lo, worst.hi, worst.error);
        }
        heap.pop_back();
        const double mid = 0.5 * (worst.lo + worst.hi);
        const detail::Panel left = detail::gk15(f, worst.lo, mid, worst.depth + 1);
        const detail::Panel right = detail::gk15(f, mid, worst.hi, worst.depth + 1);
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end());
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end());
        evaluations += 30;
        CompensatedSum v;
        CompensatedSum e;
        if (step % 16 == 0) {
            // Periodic full re-sum keeps the running totals from drifting.
            for (const auto& p : heap) {
                v += p.value;
                e += p.error;
            }
        } else {
            v += total;
            v += left.value;
            v += right.value;
            v += -worst.value;
            e += total_err;
            e += left.error;
            e += right.error;
            e += -worst.error;
        }
        total = v.value();
        total_err = e.value();
    }
    return {total, total_err, evaluations};
}

template <class F>
double integrate_value(F&& f, double lo, double hi, const QuadratureSpec& spec = {})
{
    return integrate(std::forward<F>(f), lo, hi, spec).value;
}

/// Integrates f over [lo, hi] when f has a square-root edge at `lo`, using
/// r = lo + (hi - lo) u^2 to make the integrand smooth in u.
template <class F>
double integrate_sqrt_lo(F&& f, double lo, double hi, const QuadratureSpec& spec = {})
{
    const double w = hi - lo;
    return integrate_value([&](double u) { return f(lo + w * u * u) * 2.0 * w * u; }, 0.0, 1.0, spec);
}

/// Same as integrate_sqrt_lo for a square-root edge at `hi`.
template <class F>
double integrate_sqrt_hi(F&& f, double lo, double hi, const QuadratureSpec& spec = {})
{
    const double w = hi - lo;
    return integrate_value([&](double u) { return f(hi - w * u * u) * 2.0 * w * u; }, 0.0, 1.0, spec);
}

} // namespace csatn
