// Copyright 2026 The csatn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <functional>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "csatn/analytic/coverage.hpp"
#include "csatn/analytic/rate.hpp"
#include "csatn/cli/sweep.hpp"
#include "csatn/core/config.hpp"
#include "csatn/core/units.hpp"
#include "csatn/montecarlo/simulator.hpp"

namespace csatn::cli {

/// One CSV line. `threshold_db` is NaN for rate rows, `swept_value` and
/// `axis_value` are NaN when the sweep has no such parameter.
struct Row {
    double swept_value = NAN;
    double threshold_db = NAN;
    Link link = Link::ta;
    std::string method;
    double value = NAN;
    double ci_halfwidth = 0.0;
    std::int64_t runs = 0;
    std::uint64_t seed = 0;
    std::string config_hash;
    double axis_value = NAN;
};

/// One comparison point between the analytic value and the simulation.
struct GapRow {
    double swept_value = NAN;
    double axis_value = NAN;
    double threshold_db = NAN;
    Link link = Link::ta;
    double analytic = NAN;
    /// Terrestrial coverage without the no-interferer term; NaN elsewhere.
    double analytic_no_zero = NAN;
    double monte_carlo = NAN;
    double ci_halfwidth = 0.0;
    double abs_gap = NAN;
    bool inside_ci = false;
    std::string config_hash;
};

struct CompareSummary {
    double max_gap = 0.0;
    double fraction_inside_ci = 0.0;
    std::size_t points = 0;
};

struct CompareReport {
    std::vector<Row> rows;
    std::vector<GapRow> gaps;
    CompareSummary summary;
};

inline CompareSummary summarize(const std::vector<GapRow>& gaps)
{
    CompareSummary s;
    s.points = gaps.size();
    std::size_t inside = 0;
    for (const auto& g : gaps) {
        s.max_gap = std::max(s.max_gap, g.abs_gap);
        inside += g.inside_ci ? 1 : 0;
    }
    s.fraction_inside_ci = gaps.empty() ? 0.0 : static_cast<double>(inside) / static_cast<double>(gaps.size());
    return s;
}

/// A fully specified scenario of the sweep.
struct SweepPoint {
    double swept_value = NAN;
    double axis_value = NAN;
    ScenarioConfig cfg;
};

inline std::vector<SweepPoint> expand(const SweepSpec& spec)
{
    check(spec);
    const std::vector<double> series = spec.param.empty() ? std::vector<double>{NAN} : spec.values;
    const std::vector<double> axis = spec.axis_param.empty() ? std::vector<double>{NAN} : spec.axis_values;
    std::vector<SweepPoint> pts;
    for (double v : series) {
        for (double a : axis) {
            SweepPoint p{v, a, spec.base};
            if (!spec.param.empty()) {
                apply_param(p.cfg, spec.param, v);
            }
            if (!spec.axis_param.empty()) {
                apply_param(p.cfg, spec.axis_param, a);
            }
            const auto violations = validate(p.cfg);
            if (has_errors(violations)) {
                std::string msg = "sweep point is not a valid configuration:";
                for (const auto& x : violations) {
                    msg += "\n  " + to_string(x);
                }
                throw ConfigError(msg);
            }
            pts.push_back(std::move(p));
        }
    }
    return pts;
}

/// Runs fn(i) for i in [0, n) on up to `workers` threads. Callers store
/// results by index, which keeps the output independent of scheduling.
inline void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& fn)
{
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex m;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            try {
                for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
                    fn(i);
                }
            } catch (...) {
                const std::lock_guard<std::mutex> lock(m);
                if (!failure) {
                    failure = std::current_exception();
                }
                next.store(n);
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

namespace detail {

struct AnalyticTask {
    std::size_t point;
    Link link;
    double threshold_db;
    bool zero_term;
    bool rate;
};

inline std::vector<AnalyticTask> analytic_tasks(const SweepSpec& spec, std::size_t points)
{
    std::vector<AnalyticTask> tasks;
    for (std::size_t p = 0; p < points; ++p) {
        for (Link link : spec.links) {
            if (spec.quantity == Quantity::rate) {
                tasks.push_back({p, link, NAN, true, true});
                continue;
            }
            for (double t : spec.threshold_db) {
                const bool ta_part = link != Link::as;
                if (!ta_part || spec.zero_term != ZeroTerm::off) {
                    tasks.push_back({p, link, t, true, false});
                }
                if (ta_part && spec.zero_term != ZeroTerm::on) {
                    tasks.push_back({p, link, t, false, false});
                }
            }
        }
    }
    return tasks;
}

} // namespace detail

/// Analytic rows in sweep order. Coverage rows are tagged "analytic", or
/// "analytic_no_zero" when the no-interferer term is left out; rate rows
/// are tagged "analytic_rate".
inline std::vector<Row> run_analytic(const SweepSpec& spec)
{
    const std::vector<SweepPoint> pts = expand(spec);
    const auto tasks = detail::analytic_tasks(spec, pts.size());
    std::vector<Row> rows(tasks.size());
    parallel_for(tasks.size(), spec.workers, [&](std::size_t i) {
        const auto& t = tasks[i];
        const SweepPoint& p = pts[t.point];
        AnalyticOptions opt;
        opt.include_zero_term = t.zero_term;
        Row r;
        r.swept_value = p.swept_value;
        r.axis_value = p.axis_value;
        r.link = t.link;
        r.config_hash = config_hash_hex(p.cfg);
        if (t.rate) {
            r.method = "analytic_rate";
            r.value = rate(t.link, p.cfg, opt);
        } else {
            r.threshold_db = t.threshold_db;
            r.method = t.zero_term ? "analytic" : "analytic_no_zero";
            r.value = coverage(t.link, db_to_linear(t.threshold_db), p.cfg, opt);
        }
        rows[i] = std::move(r);
    });
    return rows;
}

/// Simulated rows in sweep order, all points sharing the master seed.
inline std::vector<Row> run_simulate(const SweepSpec& spec)
{
    const std::vector<SweepPoint> pts = expand(spec);
    std::vector<Row> rows;
    for (const auto& p : pts) {
        const std::vector<RunSample> samples = simulate(p.cfg, spec.runs, spec.seed, spec.sim, spec.workers);
        const std::string hash = config_hash_hex(p.cfg);
        for (Link link : spec.links) {
            if (spec.quantity == Quantity::rate) {
                const EstimateWithCI e = rate_from_samples(samples, link, p.cfg.k_rate, spec.seed);
                rows.push_back({p.swept_value, NAN, link, "monte_carlo_rate", e.value, e.half_width, e.runs, e.seed,
                                hash, p.axis_value});
                continue;
            }
            for (double t : spec.threshold_db) {
                const EstimateWithCI e = coverage_from_samples(samples, link, db_to_linear(t), spec.seed);
                rows.push_back(
                    {p.swept_value, t, link, "monte_carlo", e.value, e.half_width, e.runs, e.seed, hash, p.axis_value});
            }
        }
    }
    return rows;
}

namespace detail {

inline bool same_point(const Row& a, const Row& b)
{
    auto eq = [](double x, double y) { return (std::isnan(x) && std::isnan(y)) || x == y; };
    return a.link == b.link && a.config_hash == b.config_hash && eq(a.threshold_db, b.threshold_db)
           && eq(a.swept_value, b.swept_value) && eq(a.axis_value, b.axis_value);
}

} // namespace detail

/// Analytic and simulated rows plus the gap table. The gap is taken against
/// the analytic value with the no-interferer term unless zero_term is off.
inline CompareReport run_compare(const SweepSpec& spec)
{
    CompareReport rep;
    std::vector<Row> analytic = run_analytic(spec);
    std::vector<Row> mc = run_simulate(spec);
    for (const Row& m : mc) {
        GapRow g;
        g.swept_value = m.swept_value;
        g.axis_value = m.axis_value;
        g.threshold_db = m.threshold_db;
        g.link = m.link;
        g.monte_carlo = m.value;
        g.ci_halfwidth = m.ci_halfwidth;
        g.config_hash = m.config_hash;
        for (const Row& a : analytic) {
            if (!detail::same_point(a, m)) {
                continue;
            }
            if (a.method == "analytic_no_zero") {
                g.analytic_no_zero = a.value;
            } else {
                g.analytic = a.value;
            }
        }
        const double ref = std::isnan(g.analytic) ? g.analytic_no_zero : g.analytic;
        g.abs_gap = std::abs(ref - g.monte_carlo);
        g.inside_ci = g.abs_gap <= g.ci_halfwidth;
        rep.gaps.push_back(g);
    }
    rep.rows = std::move(analytic);
    rep.rows.insert(rep.rows.end(), mc.begin(), mc.end());
    rep.summary = summarize(rep.gaps);
    return rep;
}

namespace detail {

inline std::string fmt(double v)
{
    if (std::isnan(v)) {
        return "";
    }
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

} // namespace detail

inline void write_rows_csv(std::ostream& out, const std::vector<Row>& rows)
{
    out << "swept_value,threshold_db,link,method,value,ci_halfwidth,runs,seed,config_hash,axis_value\n";
    for (const auto& r : rows) {
        out << detail::fmt(r.swept_value) << ',' << detail::fmt(r.threshold_db) << ',' << to_string(r.link) << ','
            << r.method << ',' << detail::fmt(r.value) << ',' << detail::fmt(r.ci_halfwidth) << ',' << r.runs << ','
            << r.seed << ',' << r.config_hash << ',' << detail::fmt(r.axis_value) << '\n';
    }
}

inline void write_gap_csv(std::ostream& out, const CompareReport& rep)
{
    out << "swept_value,axis_value,threshold_db,link,analytic,analytic_no_zero,monte_carlo,ci_halfwidth,abs_gap,"
           "inside_ci,config_hash\n";
    for (const auto& g : rep.gaps) {
        out << detail::fmt(g.swept_value) << ',' << detail::fmt(g.axis_value) << ',' << detail::fmt(g.threshold_db)
            << ',' << to_string(g.link) << ',' << detail::fmt(g.analytic) << ',' << detail::fmt(g.analytic_no_zero)
            << ',' << detail::fmt(g.monte_carlo) << ',' << detail::fmt(g.ci_halfwidth) << ','
            << detail::fmt(g.abs_gap) << ',' << (g.inside_ci ? 1 : 0) << ',' << g.config_hash << '\n';
    }
}

inline void write_summary(std::ostream& out, const CompareSummary& s)
{
    char buf[160];
    std::snprintf(buf, sizeof buf, "points=%zu max_gap=%.6f fraction_inside_ci=%.4f\n", s.points, s.max_gap,
                  s.fraction_inside_ci);
    out << buf;
}

/// gnuplot script drawing one curve per (series value, method) from the CSV
/// written by write_rows_csv.
inline void write_gnuplot(std::ostream& out, const SweepSpec& spec, const std::vector<Row>& rows,
                          const std::string& csv_path)
{
    const bool rate_plot = spec.quantity == Quantity::rate;
    out << "set datafile separator ','\n";
    out << "set key outside right\n";
    out << "set grid\n";
    out << "set xlabel '" << (rate_plot ? spec.axis_param : std::string("threshold (dB)")) << "'\n";
    out << "set ylabel '" << (rate_plot ? "rate (bit/s/Hz)" : "coverage probability") << "'\n";
    out << "set title '" << spec.name << "'\n";
    std::vector<std::pair<double, std::string>> curves;
    for (const auto& r : rows) {
        const std::pair<double, std::string> key{r.swept_value, std::string(to_string(r.link)) + "|" + r.method};
        bool seen = false;
        for (const auto& c : curves) {
            seen = seen || ((c.first == key.first || (std::isnan(c.first) && std::isnan(key.first))) && c.second == key.second);
        }
        if (!seen) {
            curves.push_back(key);
        }
    }
    const int xcol = rate_plot ? 10 : 2;
    out << "plot \\\n";
    for (std::size_t i = 0; i < curves.size(); ++i) {
        const auto& [v, tag] = curves[i];
        const std::string link = tag.substr(0, tag.find('|'));
        const std::string method = tag.substr(tag.find('|') + 1);
        const bool mc = method.rfind("monte_carlo", 0) == 0;
        std::string cond = "strcol(3) eq '" + link + "' && strcol(4) eq '" + method + "'";
        if (!std::isnan(v)) {
            cond += " && $1 == " + detail::fmt(v);
        }
        out << "  '" << csv_path << "' using ($0 > 0 && " << cond << " ? $" << xcol << " : 1/0):5 with "
            << (mc ? "points" : "lines") << " title '" << (spec.param.empty() ? "" : spec.param + "=" + detail::fmt(v) + " ")
            << link << ' ' << method << "'" << (i + 1 < curves.size() ? ", \\" : "") << '\n';
    }
}

} // namespace csatn::cli
