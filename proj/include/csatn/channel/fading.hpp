// Copyright 2026 The csatn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "csatn/channel/special_functions.hpp"
#include "csatn/core/config.hpp"

namespace csatn {

/// Power gain |h|^2 of a Nakagami-m link normalized to unit mean: a Gamma
/// variable with shape n_ta and scale 1/n_ta.
class NakagamiPower {
public:
    explicit NakagamiPower(int n_ta) : n_ta_(n_ta)
    {
        if (n_ta < 1) {
            throw DomainError("Nakagami parameter must be >= 1");
        }
    }

    int shape() const noexcept { return n_ta_; }

    template <class Rng>
    double sample(Rng& rng) const
    {
        std::gamma_distribution<double> g(n_ta_, 1.0 / n_ta_);
        return g(rng);
    }

    /// E[exp(-t |h|^2)] = (1 + t / n_ta)^(-n_ta).
    double mgf(double t) const
    {
        if (t < 0.0) {
            throw DomainError("Nakagami MGF term requires t >= 0");
        }
        return std::pow(1.0 + t / n_ta_, -static_cast<double>(n_ta_));
    }

    /// Alzer constant eta = n (n!)^(-1/n) of the Gamma CDF bound
    /// P(|h|^2 < x) ~ (1 - exp(-eta x))^n.
    double alzer_eta() const { return n_ta_ * std::pow(factorial(n_ta_), -1.0 / n_ta_); }

private:
    int n_ta_;
};

inline double nakagami_power_mgf_term(double s_eff, int n_ta) { return NakagamiPower(n_ta).mgf(s_eff); }

/// MGF of the shadowed-Rician power, E[exp(-x |h|^2)].
inline double sr_mgf(double x, const SrParams& sr)
{
    if (x < 0.0) {
        throw DomainError("shadowed-Rician MGF requires x >= 0");
    }
    if (x == 0.0) {
        return 1.0;
    }
    const double two_c = 2.0 * sr.c;
    const double two_cq = two_c * sr.q;
    const double u = 1.0 + two_c * x;
    const double log_m = sr.q * std::log(two_cq) + (sr.q - 1.0) * std::log(u)
                         - sr.q * std::log((two_cq + sr.omega) * u - sr.omega);
    return std::exp(log_m);
}

/// Shadowed-Rician fading power |h|^2: a line-of-sight component whose power
/// is Gamma(q, omega/q) distributed plus a circular complex Gaussian scatter
/// component with variance c per axis.
class SrPower {
public:
    explicit SrPower(const SrParams& sr) : sr_(sr), k_(derive_sr_constants(sr)) {}

    const SrParams& params() const noexcept { return sr_; }
    const SrConstants& constants() const noexcept { return k_; }

    double mean() const noexcept { return 2.0 * sr_.c + sr_.omega; }

    /// kappa exp(-beta x) 1F1(q; 1; delta x).
    double pdf(double x) const
    {
        if (x < 0.0) {
            return 0.0;
        }
        if (k_.delta == 0.0) {
            return k_.kappa * std::exp(-k_.beta * x);
        }
        return k_.kappa * std::exp(-k_.beta * x + std::log(hyp1f1(sr_.q, 1.0, k_.delta * x)));
    }

    /// Psi(k) = (-1)^k kappa delta^k (1-q)_k / (k!)^2, the coefficients of
    /// f(x) = sum_k Psi(k) x^k exp(-(beta - delta) x).
    double psi(int k) const
    {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        const double kf = factorial(k);
        return sign * k_.kappa * std::pow(k_.delta, k) * pochhammer(1.0 - sr_.q, k) / (kf * kf);
    }

    /// True when the Kummer series has finitely many nonzero terms.
    bool finite_series() const noexcept { return sr_.q == std::floor(sr_.q) || k_.delta == 0.0; }

    /// Last nonzero index of the series for integer q.
    int series_last_index() const noexcept
    {
        return k_.delta == 0.0 ? 0 : static_cast<int>(sr_.q) - 1;
    }

    /// Series form truncated after k_max. Pass k_max < 0 to truncate
    /// automatically: exactly at q - 1 for integer q, otherwise once the next
    /// term is below 1e-12 of the running sum.
    double series_pdf(double x, int k_max = -1) const
    {
        if (x < 0.0) {
            return 0.0;
        }
        const double decay = std::exp(-k_.rate() * x);
        CompensatedSum sum;
        if (k_max >= 0 || finite_series()) {
            const int last = k_max >= 0 ? k_max : series_last_index();
            double xp = 1.0;
            for (int k = 0; k <= last; ++k) {
                sum += psi(k) * xp;
                xp *= x;
            }
            return sum.value() * decay;
        }
        // Coefficient recurrence: Psi(k+1)/Psi(k) = -delta (1-q+k) / (k+1)^2.
        double term = k_.kappa;
        sum += term;
        for (int k = 0; k < 10000; ++k) {
            term *= -k_.delta * (1.0 - sr_.q + k) / ((k + 1.0) * (k + 1.0)) * x;
            sum += term;
            if (std::abs(term) < 1e-12 * std::abs(sum.value()) && k > k_.delta * x) {
                return sum.value() * decay;
            }
        }
        throw SeriesError("shadowed-Rician series density did not converge");
    }

    /// CDF as sum_k Psi(k) / (beta-delta)^(k+1) * lower_gamma(k+1, (beta-delta) x).
    double cdf(double x) const
    {
        if (x <= 0.0) {
            return 0.0;
        }
        if (std::isinf(x)) {
            return 1.0;
        }
        const double rate = k_.rate();
        const double y = rate * x;
        const int last = finite_series() ? series_last_index() : 100000;
        CompensatedSum sum;
        for (int k = 0; k <= last; ++k) {
            // psi(k) k! / rate^(k+1) * P(k+1, y), grouped to avoid overflow.
            const double sign = (k % 2 == 0) ? 1.0 : -1.0;
            const double coeff = sign * k_.kappa / rate * std::pow(k_.delta / rate, k)
                                  * pochhammer(1.0 - sr_.q, k) / factorial(k);
            const double term = coeff * gamma_p(k + 1.0, y);
            sum += term;
            if (!finite_series() && k > y + 10.0 && std::abs(term) < 1e-15 * std::abs(sum.value())) {
                break;
            }
        }
        return std::clamp(sum.value(), 0.0, 1.0);
    }

    double mgf(double x) const { return sr_mgf(x, sr_); }

    template <class Rng>
    double sample(Rng& rng) const
    {
        std::normal_distribution<double> scatter(0.0, std::sqrt(sr_.c));
        const double zr = scatter(rng);
        const double zi = scatter(rng);
        if (sr_.omega == 0.0) {
            return zr * zr + zi * zi;
        }
        std::gamma_distribution<double> los_power(sr_.q, sr_.omega / sr_.q);
        std::uniform_real_distribution<double> phase(0.0, two_pi);
        const double amp = std::sqrt(los_power(rng));
        const double ph = phase(rng);
        const double re = amp * std::cos(ph) + zr;
        const double im = amp * std::sin(ph) + zi;
        return re * re + im * im;
    }

private:
    SrParams sr_;
    SrConstants k_;
};

} // namespace csatn
