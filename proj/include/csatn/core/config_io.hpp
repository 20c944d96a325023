// Copyright 2026 The csatn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "csatn/core/config.hpp"

namespace csatn {

// Configuration files are JSON objects whose keys are exactly the
// ScenarioConfig field names (the shadowed-Rician triple nests under "sr").
// A value is either a bare number in internal units, or a string
// "<number> <unit>" that is converted on ingest:
//
//   lengths    m, km
//   powers     W, dBW, dBm
//   gains      dB (or bare number for linear)
//   angles     rad, deg
//   densities  m^-2, km^-2

namespace detail {

enum class Quantity { length, power, gain, angle, density, scalar };

struct FieldInfo {
    std::string_view name;
    Quantity quantity;
};

inline constexpr std::array<FieldInfo, 20> scalar_fields{{
    {"h_a", Quantity::length},      {"d_0", Quantity::length},
    {"r_u", Quantity::length},      {"r_a", Quantity::length},
    {"d_min", Quantity::length},    {"p_t", Quantity::power},
    {"p_a", Quantity::power},       {"p_m", Quantity::power},
    {"g_t_main", Quantity::gain},   {"g_t_side", Quantity::gain},
    {"g_r", Quantity::gain},        {"theta", Quantity::angle},
    {"lambda_t", Quantity::density}, {"lambda_1", Quantity::density},
    {"alpha_1", Quantity::scalar},  {"alpha_2", Quantity::scalar},
    {"k_rate", Quantity::scalar},   {"noise_t", Quantity::power},
    {"noise_a", Quantity::power},   {"n_ta", Quantity::scalar},
}};

inline std::optional<Quantity> quantity_of(std::string_view name)
{
    for (const auto& f : scalar_fields) {
        if (f.name == name) {
            return f.quantity;
        }
    }
    return std::nullopt;
}

inline double convert_unit(double value, std::string_view unit, Quantity q, std::string_view field)
{
    auto bad = [&]() -> double {
        throw ConfigError("field '" + std::string(field) + "': unit '" + std::string(unit)
                          + "' is not valid here");
    };
    switch (q) {
    case Quantity::length:
        if (unit == "m") return value;
        if (unit == "km") return km_to_m(value);
        return bad();
    case Quantity::power:
        if (unit == "W") return value;
        if (unit == "dBW") return dbw_to_watt(value);
        if (unit == "dBm") return dbm_to_watt(value);
        return bad();
    case Quantity::gain:
        if (unit == "dB" || unit == "dBi") return db_to_linear(value);
        if (unit == "linear") return value;
        return bad();
    case Quantity::angle:
        if (unit == "rad") return value;
        if (unit == "deg") return value * pi / 180.0;
        return bad();
    case Quantity::density:
        if (unit == "m^-2") return value;
        if (unit == "km^-2") return value * 1e-6;
        return bad();
    case Quantity::scalar:
        if (unit.empty()) return value;
        return bad();
    }
    return bad();
}

inline double parse_value(const nlohmann::json& j, Quantity q, std::string_view field)
{
    if (j.is_number()) {
        return j.get<double>();
    }
    if (!j.is_string()) {
        throw ConfigError("field '" + std::string(field) + "' must be a number or a \"<value> <unit>\" string");
    }
    const std::string text = j.get<std::string>();
    std::istringstream in(text);
    double value = 0.0;
    std::string unit;
    if (!(in >> value)) {
        throw ConfigError("field '" + std::string(field) + "': cannot parse '" + text + "'");
    }
    in >> unit;
    std::string rest;
    if (in >> rest) {
        throw ConfigError("field '" + std::string(field) + "': trailing text in '" + text + "'");
    }
    return convert_unit(value, unit, q, field);
}

} // namespace detail

/// Sets a named field from a value already in internal units. Accepts the
/// config field names plus "sr.c", "sr.q", "sr.omega".
inline void set_field(ScenarioConfig& cfg, std::string_view name, double v)
{
    if (name == "h_a") cfg.h_a = v;
    else if (name == "d_0") cfg.d_0 = v;
    else if (name == "r_u") cfg.r_u = v;
    else if (name == "r_a") cfg.r_a = v;
    else if (name == "d_min") cfg.d_min = v;
    else if (name == "p_t") cfg.p_t = v;
    else if (name == "p_a") cfg.p_a = v;
    else if (name == "p_m") cfg.p_m = v;
    else if (name == "g_t_main") cfg.g_t_main = v;
    else if (name == "g_t_side") cfg.g_t_side = v;
    else if (name == "g_r") cfg.g_r = v;
    else if (name == "theta") cfg.theta = v;
    else if (name == "lambda_t") cfg.lambda_t = v;
    else if (name == "lambda_1") cfg.lambda_1 = v;
    else if (name == "n_ta") {
        if (v != std::floor(v)) {
            throw ConfigError("field 'n_ta' must be an integer");
        }
        cfg.n_ta = static_cast<int>(v);
    }
    else if (name == "sr.c") cfg.sr.c = v;
    else if (name == "sr.q") cfg.sr.q = v;
    else if (name == "sr.omega") cfg.sr.omega = v;
    else if (name == "alpha_1") cfg.alpha_1 = v;
    else if (name == "alpha_2") cfg.alpha_2 = v;
    else if (name == "k_rate") cfg.k_rate = v;
    else if (name == "noise_t") cfg.noise_t = v;
    else if (name == "noise_a") cfg.noise_a = v;
    else throw ConfigError("unknown configuration field '" + std::string(name) + "'");
}

inline double get_field(const ScenarioConfig& cfg, std::string_view name)
{
    if (name == "h_a") return cfg.h_a;
    if (name == "d_0") return cfg.d_0;
    if (name == "r_u") return cfg.r_u;
    if (name == "r_a") return cfg.r_a;
    if (name == "d_min") return cfg.d_min;
    if (name == "p_t") return cfg.p_t;
    if (name == "p_a") return cfg.p_a;
    if (name == "p_m") return cfg.p_m;
    if (name == "g_t_main") return cfg.g_t_main;
    if (name == "g_t_side") return cfg.g_t_side;
    if (name == "g_r") return cfg.g_r;
    if (name == "theta") return cfg.theta;
    if (name == "lambda_t") return cfg.lambda_t;
    if (name == "lambda_1") return cfg.lambda_1;
    if (name == "n_ta") return cfg.n_ta;
    if (name == "sr.c") return cfg.sr.c;
    if (name == "sr.q") return cfg.sr.q;
    if (name == "sr.omega") return cfg.sr.omega;
    if (name == "alpha_1") return cfg.alpha_1;
    if (name == "alpha_2") return cfg.alpha_2;
    if (name == "k_rate") return cfg.k_rate;
    if (name == "noise_t") return cfg.noise_t;
    if (name == "noise_a") return cfg.noise_a;
    throw ConfigError("unknown configuration field '" + std::string(name) + "'");
}

/// Builds a config from a JSON object. Fields that are absent keep their
/// defaults; unknown keys are rejected.
inline ScenarioConfig config_from_json(const nlohmann::json& j)
{
    if (!j.is_object()) {
        throw ConfigError("configuration must be a JSON object");
    }
    ScenarioConfig cfg;
    for (const auto& [key, value] : j.items()) {
        if (key == "sr") {
            if (!value.is_object()) {
                throw ConfigError("field 'sr' must be an object with keys c, q, omega");
            }
            for (const auto& [sub, v] : value.items()) {
                if (sub != "c" && sub != "q" && sub != "omega") {
                    throw ConfigError("unknown configuration field 'sr." + sub + "'");
                }
                set_field(cfg, "sr." + sub, detail::parse_value(v, detail::Quantity::scalar, "sr." + sub));
            }
            continue;
        }
        const auto q = detail::quantity_of(key);
        if (!q) {
            throw ConfigError("unknown configuration field '" + key + "'");
        }
        set_field(cfg, key, detail::parse_value(value, *q, key));
    }
    return cfg;
}

inline ScenarioConfig config_from_string(const std::string& text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("configuration is not valid JSON: ") + e.what());
    }
    return config_from_json(j);
}

inline ScenarioConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open configuration file '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return config_from_string(ss.str());
}

/// Serializes in internal units; round-trips through config_from_json.
inline nlohmann::json config_to_json(const ScenarioConfig& cfg)
{
    nlohmann::json j;
    for (const auto& f : detail::scalar_fields) {
        if (f.name == "n_ta") {
            j["n_ta"] = cfg.n_ta;
        } else {
            j[std::string(f.name)] = get_field(cfg, f.name);
        }
    }
    j["sr"] = {{"c", cfg.sr.c}, {"q", cfg.sr.q}, {"omega", cfg.sr.omega}};
    return j;
}

} // namespace csatn
