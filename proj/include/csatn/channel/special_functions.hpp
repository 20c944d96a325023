// Copyright 2026 The csatn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "csatn/analytic/quadrature.hpp"
#include "csatn/core/error.hpp"

namespace csatn {

/// Rising factorial (x)_n = x (x+1) ... (x+n-1), with (x)_0 = 1. Returns an
/// exact zero once any factor is zero, so (1-q)_k vanishes for integer q
/// and k >= q.
inline double pochhammer(double x, int n)
{
    if (n < 0) {
        throw DomainError("pochhammer: n must be >= 0");
    }
    double p = 1.0;
    for (int i = 0; i < n; ++i) {
        const double f = x + i;
        if (f == 0.0) {
            return 0.0;
        }
        p *= f;
    }
    return p;
}

inline double ln_gamma(double x)
{
    if (x <= 0.0 && x == std::floor(x)) {
        throw DomainError("ln_gamma: pole at non-positive integer");
    }
    return std::lgamma(x);
}

inline double ln_binomial(double n, double k)
{
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

/// Binomial coefficient for small arguments, computed by exact product.
inline double binomial(int n, int k)
{
    if (k < 0 || k > n) {
        return 0.0;
    }
    k = std::min(k, n - k);
    double c = 1.0;
    for (int i = 1; i <= k; ++i) {
        c = c * (n - k + i) / i;
    }
    return std::round(c);
}

inline double factorial(int n)
{
    double f = 1.0;
    for (int i = 2; i <= n; ++i) {
        f *= i;
    }
    return f;
}

namespace detail {

inline constexpr int max_series_terms = 100000;

// Series for the regularized lower incomplete gamma, valid for x < a + 1.
inline double gamma_p_series(double a, double x)
{
    double ap = a;
    double term = 1.0 / a;
    CompensatedSum sum;
    sum += term;
    for (int n = 0; n < max_series_terms; ++n) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum.value()) * 1e-17) {
            return sum.value() * std::exp(-x + a * std::log(x) - std::lgamma(a));
        }
    }
    throw SeriesError("lower incomplete gamma series did not converge");
}

// Continued fraction for the regularized upper incomplete gamma, x >= a + 1.
inline double gamma_q_fraction(double a, double x)
{
    constexpr double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < max_series_terms; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) {
            return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
        }
    }
    throw SeriesError("upper incomplete gamma continued fraction did not converge");
}

} // namespace detail

/// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).
inline double gamma_p(double a, double x)
{
    if (!(a > 0.0)) {
        throw DomainError("incomplete gamma requires a > 0");
    }
    if (x < 0.0) {
        throw DomainError("incomplete gamma requires x >= 0");
    }
    if (x == 0.0) {
        return 0.0;
    }
    if (std::isinf(x)) {
        return 1.0;
    }
    if (x < a + 1.0) {
        return detail::gamma_p_series(a, x);
    }
    return 1.0 - detail::gamma_q_fraction(a, x);
}

/// Lower incomplete gamma function, integral of t^(a-1) e^(-t) over [0, x].
inline double lower_inc_gamma(double a, double x)
{
    if (!(a > 0.0)) {
        throw DomainError("lower_inc_gamma requires a > 0");
    }
    if (x < 0.0) {
        throw DomainError("lower_inc_gamma requires x >= 0");
    }
    if (x == 0.0) {
        return 0.0;
    }
    if (x < a + 1.0) {
        return detail::gamma_p_series(a, x) * std::exp(std::lgamma(a));
    }
    return (1.0 - detail::gamma_q_fraction(a, x)) * std::exp(std::lgamma(a));
}

/// Confluent hypergeometric function 1F1(a; b; z) by direct power series,
/// stopping once the terms decay and the bounded tail falls below 1e-14 of
/// the running sum. Negative z is mapped through Kummer's
/// transformation 1F1(a;b;z) = e^z 1F1(b-a;b;-z).
inline double hyp1f1(double a, double b, double z)
{
    if (b <= 0.0 && b == std::floor(b)) {
        throw DomainError("hyp1f1: b must not be a non-positive integer");
    }
    if (a == b) {
        return std::exp(z);
    }
    if (z == 0.0 || a == 0.0) {
        return 1.0;
    }
    if (z < 0.0) {
        const double inner = hyp1f1(b - a, b, -z);
        const double out = std::exp(z) * inner;
        if (!std::isfinite(out)) {
            throw OverflowError("hyp1f1 result is not representable");
        }
        return out;
    }
    CompensatedSum sum;
    double term = 1.0;
    sum += term;
    for (int k = 0; k < detail::max_series_terms; ++k) {
        const double ratio = (a + k) / (b + k) * z / (k + 1.0);
        term *= ratio;
        sum += term;
        if (!std::isfinite(sum.value())) {
            throw OverflowError("hyp1f1 overflowed for z = " + std::to_string(z));
        }
        if (term == 0.0) {
            break;
        }
        // Once the terms decay geometrically the tail is bounded by
        // term * ratio / (1 - ratio).
        const double r = std::abs(ratio);
        if (r < 1.0 && std::abs(term) * r / (1.0 - r) < 1e-14 * std::abs(sum.value())) {
            break;
        }
        if (k + 1 == detail::max_series_terms) {
            throw SeriesError("hyp1f1 series did not converge");
        }
    }
    return sum.value();
}

} // namespace csatn
