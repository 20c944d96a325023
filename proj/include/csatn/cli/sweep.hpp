// Copyright 2026 The csatn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "csatn/core/config.hpp"
#include "csatn/core/config_io.hpp"
#include "csatn/core/error.hpp"
#include "csatn/core/link.hpp"
#include "csatn/core/units.hpp"
#include "csatn/montecarlo/realization.hpp"

namespace csatn::cli {

enum class ZeroTerm { on, off, both };

inline ZeroTerm parse_zero_term(std::string_view s)
{
    if (s == "on") return ZeroTerm::on;
    if (s == "off") return ZeroTerm::off;
    if (s == "both") return ZeroTerm::both;
    throw ConfigError("--zero-term expects on, off or both");
}

enum class Quantity { coverage, rate };

/// A family of curves: one curve per value of `param`. Coverage curves run
/// over `threshold_db`; rate curves run over `axis_values` of `axis_param`.
struct SweepSpec {
    std::string name = "custom";
    std::string param;
    std::vector<double> values;
    std::string axis_param;
    std::vector<double> axis_values;
    ScenarioConfig base{};
    std::vector<double> threshold_db{0.0};
    std::vector<Link> links{Link::ta};
    Quantity quantity = Quantity::coverage;
    std::int64_t runs = 50000;
    std::uint64_t seed = 1;
    ZeroTerm zero_term = ZeroTerm::on;
    unsigned workers = 1;
    SimOptions sim{};
    std::string out_path;
};

/// Names accepted by apply_param on top of the config fields. `r_c` moves
/// r_u so that r_a + r_u hits the value; `gain_split_db` sets the mainlobe
/// to +x dB and the sidelobe to -x dB.
inline bool is_sweepable(std::string_view name)
{
    if (name == "r_c" || name == "gain_split_db") {
        return true;
    }
    try {
        ScenarioConfig c;
        (void)get_field(c, name);
        return true;
    } catch (const ConfigError&) {
        return false;
    }
}

/// Sets `name` to `value` (internal units). r_a and d_min move together so
/// the association constraint r_a = d_min / 2 keeps holding.
inline void apply_param(ScenarioConfig& cfg, std::string_view name, double value)
{
    if (name == "r_c") {
        cfg.r_u = value - cfg.r_a;
    } else if (name == "gain_split_db") {
        cfg.g_t_main = db_to_linear(value);
        cfg.g_t_side = db_to_linear(-value);
    } else if (name == "r_a") {
        cfg.r_a = value;
        cfg.d_min = 2.0 * value;
    } else if (name == "d_min") {
        cfg.d_min = value;
        cfg.r_a = 0.5 * value;
    } else {
        set_field(cfg, name, value);
    }
}

inline void check(const SweepSpec& s)
{
    if (!s.param.empty() && !is_sweepable(s.param)) {
        throw ConfigError("unknown sweep parameter '" + s.param + "'");
    }
    if (!s.axis_param.empty() && !is_sweepable(s.axis_param)) {
        throw ConfigError("unknown axis parameter '" + s.axis_param + "'");
    }
    if (!s.param.empty() && s.values.empty()) {
        throw ConfigError("sweep '" + s.name + "' has no values");
    }
    if (s.quantity == Quantity::coverage && s.threshold_db.empty()) {
        throw ConfigError("sweep '" + s.name + "' has an empty threshold grid");
    }
    if (!s.axis_param.empty() && s.axis_values.empty()) {
        throw ConfigError("sweep '" + s.name + "' has an empty axis grid");
    }
    if (s.links.empty()) {
        throw ConfigError("sweep '" + s.name + "' requests no link");
    }
    if (s.runs < 1) {
        throw ConfigError("--runs must be >= 1");
    }
}

/// Parses "start:stop:step" (inclusive of stop up to rounding).
inline std::vector<double> parse_grid(const std::string& text)
{
    double a = 0.0;
    double b = 0.0;
    double h = 0.0;
    char c1 = 0;
    char c2 = 0;
    std::istringstream in(text);
    if (!(in >> a >> c1 >> b >> c2 >> h) || c1 != ':' || c2 != ':' || !(h > 0.0) || b < a) {
        throw ConfigError("grid must look like start:stop:step with step > 0 and stop >= start, got '" + text + "'");
    }
    std::vector<double> g;
    const auto n = static_cast<std::int64_t>(std::floor((b - a) / h + 1e-9));
    for (std::int64_t i = 0; i <= n; ++i) {
        g.push_back(a + static_cast<double>(i) * h);
    }
    return g;
}

inline std::vector<double> parse_list(const std::string& text)
{
    std::vector<double> v;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(item, &used));
            if (used != item.size()) {
                throw std::invalid_argument(item);
            }
        } catch (const std::exception&) {
            throw ConfigError("cannot parse value '" + item + "' in list '" + text + "'");
        }
    }
    if (v.empty()) {
        throw ConfigError("empty value list");
    }
    return v;
}

inline const std::vector<std::string>& preset_names()
{
    static const std::vector<std::string> names{"fig3",  "fig4",  "fig5",  "fig6",  "fig7",
                                                "fig8",  "fig9",  "fig10", "fig11", "fig12",
                                                "fig13", "fig14", "fig15"};
    return names;
}

/// Built-in sweeps shaped after the reference figures. Series values that
/// have no published number are placeholders; override them with --values.
inline SweepSpec preset(const std::string& name, const ScenarioConfig& base = {})
{
    SweepSpec s;
    s.name = name;
    s.base = base;
    const std::vector<double> ta_grid = parse_grid("-20:10:2");
    const std::vector<double> as_grid = parse_grid("-30:0:2");
    auto coverage = [&](const char* param, std::vector<double> values, Link link) {
        s.param = param;
        s.values = std::move(values);
        s.links = {link};
        s.threshold_db = link == Link::ta ? ta_grid : as_grid;
    };
    auto rate = [&](const char* param, std::vector<double> values, const char* axis, std::vector<double> axis_values,
                    Link link) {
        s.param = param;
        s.values = std::move(values);
        s.axis_param = axis;
        s.axis_values = std::move(axis_values);
        s.links = {link};
        s.quantity = Quantity::rate;
        s.threshold_db.clear();
    };
    if (name == "fig3") coverage("h_a", {30.0, 50.0, 80.0}, Link::ta);
    else if (name == "fig4") coverage("lambda_t", {0.5e-4, 1e-4, 2e-4}, Link::ta);
    else if (name == "fig5") coverage("r_a", {300.0, 500.0, 700.0}, Link::ta);
    else if (name == "fig6") coverage("r_u", {9000.0, 9500.0, 10000.0}, Link::ta);
    else if (name == "fig7") rate("lambda_t", {0.5e-4, 1e-4, 2e-4}, "r_a", {300.0, 400.0, 500.0, 600.0, 700.0}, Link::ta);
    else if (name == "fig8") rate("h_a", {30.0, 50.0, 80.0}, "r_a", {300.0, 400.0, 500.0, 600.0, 700.0}, Link::ta);
    else if (name == "fig9") coverage("p_m", {10.0, 100.0, 1000.0}, Link::as);
    else if (name == "fig10") coverage("r_c", {9500.0, 10000.0, 10500.0}, Link::as);
    else if (name == "fig11") coverage("gain_split_db", {0.0, 5.0, 10.0}, Link::as);
    else if (name == "fig12") coverage("d_min", {800.0, 1000.0, 1200.0}, Link::as);
    else if (name == "fig13") coverage("lambda_1", {3e-7, 5e-7, 7e-7}, Link::as);
    else if (name == "fig14") rate("lambda_1", {3e-7, 5e-7, 7e-7}, "p_m", {1.0, 10.0, 100.0, 1000.0, 10000.0}, Link::as);
    else if (name == "fig15") rate("d_min", {800.0, 1000.0, 1200.0}, "p_m", {1.0, 10.0, 100.0, 1000.0, 10000.0}, Link::as);
    else throw ConfigError("unknown preset '" + name + "'");
    return s;
}

} // namespace csatn::cli
