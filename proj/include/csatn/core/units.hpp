// Copyright 2026 The csatn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <numbers>

namespace csatn {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

inline double dbw_to_watt(double dbw) { return db_to_linear(dbw); }
inline double dbm_to_watt(double dbm) { return db_to_linear(dbm - 30.0); }

inline constexpr double km_to_m(double km) { return km * 1000.0; }

} // namespace csatn
