// Copyright 2026 The csatn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace csatn {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain where a formula is defined.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Invalid or unparsable scenario configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A truncated series failed to converge, or its constants make it divergent.
class SeriesError : public Error {
public:
    using Error::Error;
};

/// A result left the representable floating point range.
class OverflowError : public Error {
public:
    using Error::Error;
};

/// Adaptive quadrature could not meet its tolerance. Carries the subinterval
/// with the largest remaining error estimate.
class QuadratureError : public Error {
public:
    QuadratureError(const std::string& what, double lo, double hi, double error_estimate)
        : Error(what), lo_(lo), hi_(hi), error_(error_estimate)
    {
    }

    double worst_lo() const noexcept { return lo_; }
    double worst_hi() const noexcept { return hi_; }
    double error_estimate() const noexcept { return error_; }

private:
    double lo_;
    double hi_;
    double error_;
};

/// The Monte Carlo rejection loop ran out of attempts.
class ResampleError : public Error {
public:
    using Error::Error;
};

} // namespace csatn
