// Copyright 2026 The csatn Authors
// SPDX-License-Identifier: Apache-2.0
//
// csatn: analytic and simulated coverage / rate of the cooperative
// satellite-aerial-terrestrial uplink.
//
// Exit status: 0 on success, 1 on any invalid input (configuration errors,
// bad flags, unknown presets, unwritable outputs), 2 on numerical failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "csatn/analytic/rate.hpp"
#include "csatn/cli/runner.hpp"
#include "csatn/cli/sweep.hpp"
#include "csatn/core/config_io.hpp"

namespace {

using namespace csatn;
using namespace csatn::cli;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CommonArgs {
    std::string config_path;
    std::string grid;
    std::vector<std::string> links;
    std::string zero_term;
    bool paper_exact = false;
    std::string param;
    std::string values;
    std::string axis_param;
    std::string axis_values;
    bool rate = false;
    std::int64_t runs = 50000;
    std::uint64_t seed = 1;
    std::string conditioning = "at-least-one-user";
    bool full_scenario = false;
    unsigned workers = 1;
    std::string out;
};

void add_scenario_flags(CLI::App* sub, CommonArgs& a)
{
    sub->add_option("--config", a.config_path, "JSON scenario (defaults used for missing fields)");
    sub->add_option("--link", a.links, "TA, AS or JOINT (repeatable)");
    sub->add_option("--workers", a.workers, "worker threads")->check(CLI::PositiveNumber);
}

void add_sweep_flags(CLI::App* sub, CommonArgs& a)
{
    sub->add_option("--grid", a.grid, "threshold grid start:stop:step in dB");
    sub->add_option("--zero-term", a.zero_term, "terrestrial no-interferer term: on, off or both")
        ->check(CLI::IsMember({"on", "off", "both"}));
    sub->add_flag("--paper-exact", a.paper_exact, "drop the no-interferer term unless --zero-term says otherwise");
    sub->add_option("--param", a.param, "swept parameter");
    sub->add_option("--values", a.values, "comma separated values of --param (internal units)");
    sub->add_option("--axis-param", a.axis_param, "x-axis parameter of rate curves");
    sub->add_option("--axis-values", a.axis_values, "comma separated values of --axis-param");
    sub->add_flag("--rate", a.rate, "evaluate the ergodic rate instead of coverage");
    sub->add_option("--out", a.out, "output CSV (stdout when omitted)");
}

void add_sim_flags(CLI::App* sub, CommonArgs& a)
{
    sub->add_option("--runs", a.runs, "Monte Carlo realizations per point")->check(CLI::PositiveNumber);
    sub->add_option("--seed", a.seed, "master seed");
    sub->add_option("--conditioning", a.conditioning, "planted, at-least-one-user or at-least-one-interferer")
        ->check(CLI::IsMember({"planted", "at-least-one-user", "at-least-one-interferer"}));
    sub->add_flag("--full-scenario", a.full_scenario, "materialize every user instead of sampling the lens");
}

// Loads and validates the scenario. Warnings go to stderr; errors throw.
ScenarioConfig load_checked(const std::string& path)
{
    ScenarioConfig cfg = path.empty() ? ScenarioConfig{} : load_config(path);
    const auto violations = validate(cfg);
    for (const auto& v : violations) {
        std::cerr << to_string(v) << '\n';
    }
    if (has_errors(violations)) {
        throw InputError("configuration rejected");
    }
    return cfg;
}

// Fills everything but the preset-specific shape.
void apply_common(SweepSpec& s, const CommonArgs& a, bool grid_required)
{
    if (!a.links.empty()) {
        s.links.clear();
        for (const auto& l : a.links) {
            s.links.push_back(parse_link(l));
        }
    }
    if (!a.grid.empty()) {
        s.threshold_db = parse_grid(a.grid);
    } else if (grid_required && s.quantity == Quantity::coverage) {
        s.threshold_db = parse_grid("-20:10:2");
    }
    if (!a.zero_term.empty()) {
        s.zero_term = parse_zero_term(a.zero_term);
    } else if (a.paper_exact) {
        s.zero_term = ZeroTerm::off;
    }
    if (!a.param.empty()) {
        s.param = a.param;
        if (a.values.empty()) {
            throw InputError("--param needs --values");
        }
    }
    if (!a.values.empty()) {
        if (s.param.empty()) {
            throw InputError("--values needs --param");
        }
        s.values = parse_list(a.values);
    }
    if (!a.axis_param.empty()) {
        s.axis_param = a.axis_param;
    }
    if (!a.axis_values.empty()) {
        s.axis_values = parse_list(a.axis_values);
    }
    if (a.rate) {
        s.quantity = Quantity::rate;
    }
    s.runs = a.runs;
    s.seed = a.seed;
    s.workers = a.workers;
    s.sim.conditioning = parse_conditioning(a.conditioning);
    s.sim.users = a.full_scenario ? UserSampling::full_scenario : UserSampling::lens_local;
    s.out_path = a.out;
}

// Opens --out before any work so a bad path fails fast.
class Output {
public:
    explicit Output(const std::string& path)
        : path_(path)
    {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
            if (!*file_) {
                throw InputError("cannot write output file '" + path + "'");
            }
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }
    const std::string& path() const { return path_; }
    void close()
    {
        if (file_) {
            file_->close();
            if (!*file_) {
                throw InputError("failed writing '" + path_ + "'");
            }
        }
    }

private:
    std::string path_;
    std::unique_ptr<std::ofstream> file_;
};

std::string sibling(const std::string& path, const std::string& suffix)
{
    const auto dot = path.rfind(".csv");
    return (dot != std::string::npos && dot + 4 == path.size() ? path.substr(0, dot) : path) + suffix;
}

enum class Mode { analytic, simulate, compare };

void run(SweepSpec& spec, Mode mode, bool emit_plot)
{
    check(spec);
    Output out(spec.out_path);
    std::optional<Output> gaps;
    if (mode == Mode::compare && !spec.out_path.empty()) {
        gaps.emplace(sibling(spec.out_path, ".gaps.csv"));
    }
    std::optional<Output> plot;
    if (emit_plot && !spec.out_path.empty()) {
        plot.emplace(sibling(spec.out_path, ".gp"));
    }
    std::vector<Row> rows;
    if (mode == Mode::analytic) {
        rows = run_analytic(spec);
    } else if (mode == Mode::simulate) {
        rows = run_simulate(spec);
    } else {
        const CompareReport rep = run_compare(spec);
        rows = rep.rows;
        if (gaps) {
            write_gap_csv(gaps->stream(), rep);
            gaps->close();
        }
        write_summary(std::cerr, rep.summary);
    }
    write_rows_csv(out.stream(), rows);
    out.close();
    if (plot) {
        write_gnuplot(plot->stream(), spec, rows, spec.out_path);
        plot->close();
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Coverage and rate of a cooperative satellite-aerial-terrestrial uplink"};
    app.require_subcommand(1);

    CommonArgs a_an, a_sim, a_cmp, a_sweep, a_thr;

    auto* analytic = app.add_subcommand("analytic", "closed-form coverage or rate");
    add_scenario_flags(analytic, a_an);
    add_sweep_flags(analytic, a_an);

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo coverage or rate");
    add_scenario_flags(simulate, a_sim);
    add_sweep_flags(simulate, a_sim);
    add_sim_flags(simulate, a_sim);

    auto* compare = app.add_subcommand("compare", "analytic vs Monte Carlo with a gap table");
    add_scenario_flags(compare, a_cmp);
    add_sweep_flags(compare, a_cmp);
    add_sim_flags(compare, a_cmp);

    auto* sweep = app.add_subcommand("sweep", "built-in figure sweep");
    std::string preset_name;
    std::string sweep_mode = "analytic";
    sweep->add_option("preset", preset_name, "preset name (fig3 ... fig15)")->required();
    sweep->add_option("--mode", sweep_mode, "analytic, simulate or compare")
        ->check(CLI::IsMember({"analytic", "simulate", "compare"}));
    add_scenario_flags(sweep, a_sweep);
    add_sweep_flags(sweep, a_sweep);
    add_sim_flags(sweep, a_sweep);

    auto* thr = app.add_subcommand("find-threshold", "threshold in dB reaching a target coverage");
    double target = 0.5;
    std::string thr_link = "AS";
    thr->add_option("--config", a_thr.config_path, "JSON scenario");
    thr->add_option("--link", thr_link, "TA, AS or JOINT");
    thr->add_option("--target", target, "target coverage in (0, 1)")->required();
    thr->add_option("--zero-term", a_thr.zero_term, "on or off")->check(CLI::IsMember({"on", "off"}));
    thr->add_flag("--paper-exact", a_thr.paper_exact, "drop the no-interferer term");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        auto prepare = [](CommonArgs& a) {
            SweepSpec s;
            s.base = load_checked(a.config_path);
            apply_common(s, a, true);
            return s;
        };
        if (*analytic) {
            SweepSpec s = prepare(a_an);
            run(s, Mode::analytic, false);
        } else if (*simulate) {
            SweepSpec s = prepare(a_sim);
            run(s, Mode::simulate, false);
        } else if (*compare) {
            SweepSpec s = prepare(a_cmp);
            run(s, Mode::compare, false);
        } else if (*sweep) {
            const ScenarioConfig base = load_checked(a_sweep.config_path);
            SweepSpec s = preset(preset_name, base);
            apply_common(s, a_sweep, false);
            const Mode m = sweep_mode == "simulate" ? Mode::simulate
                           : sweep_mode == "compare" ? Mode::compare
                                                     : Mode::analytic;
            run(s, m, true);
        } else if (*thr) {
            const ScenarioConfig cfg = load_checked(a_thr.config_path);
            AnalyticOptions opt;
            opt.include_zero_term = a_thr.zero_term.empty() ? !a_thr.paper_exact : a_thr.zero_term == "on";
            const double db = find_threshold(parse_link(thr_link), target, cfg, opt);
            std::printf("%.2f\n", db);
        }
    } catch (const InputError& e) {
        std::cerr << "csatn: " << e.what() << '\n';
        return 1;
    } catch (const ConfigError& e) {
        std::cerr << "csatn: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "csatn: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
