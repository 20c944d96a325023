// Copyright 2026 The csatn Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "csatn/cli/runner.hpp"
#include "csatn/cli/sweep.hpp"

namespace csatn::cli {
namespace {

TEST(Grid, ParseGridAndList)
{
    const auto g = parse_grid("-30:0:5");
    ASSERT_EQ(g.size(), 7u);
    EXPECT_DOUBLE_EQ(g.front(), -30.0);
    EXPECT_DOUBLE_EQ(g.back(), 0.0);
    EXPECT_EQ(parse_grid("0:1:0.1").size(), 11u);
    EXPECT_THROW(parse_grid("0:1"), ConfigError);
    EXPECT_THROW(parse_grid("1:0:1"), ConfigError);
    EXPECT_THROW(parse_grid("0:1:0"), ConfigError);
    EXPECT_EQ(parse_list("1,2.5,1e-4"), (std::vector<double>{1.0, 2.5, 1e-4}));
    EXPECT_THROW(parse_list("1,x"), ConfigError);
    EXPECT_THROW(parse_list(""), ConfigError);
    EXPECT_EQ(parse_zero_term("both"), ZeroTerm::both);
    EXPECT_THROW(parse_zero_term("maybe"), ConfigError);
}

TEST(Params, ApplyParam)
{
    ScenarioConfig c;
    apply_param(c, "r_c", 10500.0);
    EXPECT_DOUBLE_EQ(c.r_c(), 10500.0);
    EXPECT_DOUBLE_EQ(c.r_a, 500.0);
    apply_param(c, "gain_split_db", 10.0);
    EXPECT_NEAR(c.g_t_main, 10.0, 1e-12);
    EXPECT_NEAR(c.g_t_side, 0.1, 1e-12);
    apply_param(c, "d_min", 1200.0);
    EXPECT_DOUBLE_EQ(c.r_a, 600.0);
    apply_param(c, "r_a", 300.0);
    EXPECT_DOUBLE_EQ(c.d_min, 600.0);
    apply_param(c, "h_a", 80.0);
    EXPECT_DOUBLE_EQ(c.h_a, 80.0);
    EXPECT_TRUE(is_sweepable("lambda_1"));
    EXPECT_FALSE(is_sweepable("colour"));
}

TEST(Presets, ShapesFollowFigures)
{
    ASSERT_EQ(preset_names().size(), 13u);
    for (const auto& name : preset_names()) {
        const SweepSpec s = preset(name);
        EXPECT_NO_THROW(check(s)) << name;
        EXPECT_EQ(s.values.size(), 3u) << name;
        EXPECT_NO_THROW(expand(s)) << name;
    }
    EXPECT_EQ(preset("fig3").param, "h_a");
    EXPECT_EQ(preset("fig3").links, std::vector<Link>{Link::ta});
    EXPECT_EQ(preset("fig9").links, std::vector<Link>{Link::as});
    EXPECT_EQ(preset("fig7").quantity, Quantity::rate);
    EXPECT_EQ(preset("fig7").axis_param, "r_a");
    EXPECT_EQ(preset("fig14").axis_param, "p_m");
    EXPECT_THROW(preset("fig2"), ConfigError);
}

TEST(Sweep, InvalidPointsAndParams)
{
    SweepSpec s;
    s.param = "colour";
    s.values = {1.0};
    EXPECT_THROW(check(s), ConfigError);
    s.param = "r_u";
    s.values = {-5.0};
    EXPECT_THROW(expand(s), ConfigError);
    s.values = {9500.0};
    s.threshold_db.clear();
    EXPECT_THROW(check(s), ConfigError);
}

TEST(RunAnalytic, Fig9CurvesAreMonotone)
{
    const SweepSpec s = preset("fig9");
    const std::vector<Row> rows = run_analytic(s);
    ASSERT_EQ(rows.size(), 3u * s.threshold_db.size());
    std::map<double, std::vector<double>> curves;
    for (const auto& r : rows) {
        EXPECT_EQ(r.method, "analytic");
        EXPECT_EQ(r.link, Link::as);
        curves[r.swept_value].push_back(r.value);
    }
    ASSERT_EQ(curves.size(), 3u);
    for (const auto& [pm, v] : curves) {
        for (std::size_t i = 1; i < v.size(); ++i) {
            EXPECT_LE(v[i], v[i - 1] + 1e-12) << pm;
        }
    }
    // More satellite-link power, more coverage.
    EXPECT_LT(curves[10.0][10], curves[100.0][10]);
    EXPECT_LT(curves[100.0][10], curves[1000.0][10]);
}

TEST(RunAnalytic, ZeroTermModes)
{
    SweepSpec s;
    s.threshold_db = {0.0};
    s.links = {Link::ta, Link::as};
    s.zero_term = ZeroTerm::both;
    const auto rows = run_analytic(s);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[0].method, "analytic");
    EXPECT_EQ(rows[1].method, "analytic_no_zero");
    EXPECT_GT(rows[0].value, rows[1].value);
    EXPECT_EQ(rows[2].link, Link::as);
    s.zero_term = ZeroTerm::off;
    const auto off = run_analytic(s);
    ASSERT_EQ(off.size(), 2u);
    EXPECT_EQ(off[0].method, "analytic_no_zero");
}

SweepSpec small_compare(unsigned workers)
{
    SweepSpec s;
    s.param = "lambda_1";
    s.values = {3e-7, 7e-7};
    s.threshold_db = {-20.0, -10.0};
    s.links = {Link::as};
    s.runs = 1500;
    s.seed = 17;
    s.workers = workers;
    return s;
}

std::string csv_of(const CompareReport& rep)
{
    std::ostringstream out;
    write_rows_csv(out, rep.rows);
    write_gap_csv(out, rep);
    return out.str();
}

TEST(RunCompare, ReportAndDeterminism)
{
    const CompareReport a = run_compare(small_compare(1));
    const CompareReport b = run_compare(small_compare(3));
    EXPECT_EQ(csv_of(a), csv_of(b));
    ASSERT_EQ(a.gaps.size(), 4u);
    const CompareSummary again = summarize(a.gaps);
    EXPECT_EQ(again.max_gap, a.summary.max_gap);
    EXPECT_EQ(again.fraction_inside_ci, a.summary.fraction_inside_ci);
    for (const auto& g : a.gaps) {
        EXPECT_NEAR(g.abs_gap, std::abs(g.analytic - g.monte_carlo), 1e-15);
        EXPECT_EQ(g.inside_ci, g.abs_gap <= g.ci_halfwidth);
        EXPECT_TRUE(std::isnan(g.analytic_no_zero));
    }
    // Denser aerial layer, less coverage, in both methods.
    EXPECT_GT(a.gaps[0].analytic, a.gaps[2].analytic);
    EXPECT_GT(a.gaps[0].monte_carlo, a.gaps[2].monte_carlo);
}

TEST(Csv, RowFormat)
{
    Row r;
    r.threshold_db = -10.0;
    r.link = Link::as;
    r.method = "monte_carlo";
    r.value = 0.5;
    r.ci_halfwidth = 0.01;
    r.runs = 100;
    r.seed = 3;
    r.config_hash = "abc";
    std::ostringstream out;
    write_rows_csv(out, {r});
    EXPECT_EQ(out.str(),
              "swept_value,threshold_db,link,method,value,ci_halfwidth,runs,seed,config_hash,axis_value\n"
              ",-10,AS,monte_carlo,0.5,0.01,100,3,abc,\n");
}

TEST(Csv, GnuplotScriptListsCurves)
{
    SweepSpec s = preset("fig9");
    s.threshold_db = {-10.0};
    const auto rows = run_analytic(s);
    std::ostringstream out;
    write_gnuplot(out, s, rows, "fig9.csv");
    const std::string text = out.str();
    EXPECT_NE(text.find("set datafile separator ','"), std::string::npos);
    EXPECT_NE(text.find("p_m=10 AS analytic"), std::string::npos);
    EXPECT_NE(text.find("p_m=1000 AS analytic"), std::string::npos);
    EXPECT_NE(text.find("'fig9.csv'"), std::string::npos);
}

TEST(Parallel, ForStoresByIndexAndRethrows)
{
    std::vector<int> v(100, 0);
    parallel_for(v.size(), 4, [&](std::size_t i) { v[i] = static_cast<int>(i * i); });
    for (std::size_t i = 0; i < v.size(); ++i) {
        EXPECT_EQ(v[i], static_cast<int>(i * i));
    }
    EXPECT_THROW(parallel_for(10, 3, [](std::size_t i) {
                     if (i == 7) throw DomainError("boom");
                 }),
                 DomainError);
}

} // namespace
} // namespace csatn::cli
