// Copyright 2026 The csatn Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "csatn/spatial/distance_law.hpp"
#include "csatn/spatial/geometry.hpp"
#include "csatn/spatial/lens.hpp"
#include "csatn/spatial/point_process.hpp"
#include "oracles.hpp"

namespace csatn {
namespace {

constexpr double kRu = 9500.0;
constexpr double kRa = 500.0;

TEST(Bpp, EmptyAndMoments)
{
    std::mt19937_64 rng(1);
    const Disk unit({0.0, 0.0}, 1.0);
    EXPECT_TRUE(sample_bpp(0, unit, rng).empty());
    const PointSet2D s = sample_bpp(100000, unit, rng);
    ASSERT_EQ(s.size(), 100000u);
    double r2 = 0.0;
    int inner = 0;
    for (const auto& p : s.points) {
        const double d2 = p.x * p.x + p.y * p.y;
        EXPECT_LE(d2, 1.0);
        r2 += d2;
        inner += d2 <= 0.25 ? 1 : 0;
    }
    EXPECT_NEAR(r2 / 1e5, 0.5, 0.005);
    EXPECT_NEAR(inner / 1e5, 0.25, 0.0025);
    EXPECT_THROW(sample_bpp(-1, unit, rng), DomainError);
}

TEST(Ppp, CountMeanAndVariance)
{
    std::mt19937_64 rng(2);
    const Disk d({0.0, 0.0}, 1e4);
    EXPECT_TRUE(sample_ppp(0.0, d, rng).empty());
    std::vector<double> counts(10000);
    for (auto& c : counts) {
        const PointSet2D s = sample_ppp(5e-7, d, rng);
        EXPECT_EQ(s.tag, ProcessTag::ppp);
        c = static_cast<double>(s.size());
    }
    const auto m = oracle::moments(counts);
    const double expect = 5e-7 * pi * 1e8;
    EXPECT_NEAR(m.mean / expect, 1.0, 0.03);
    EXPECT_NEAR(m.var / m.mean, 1.0, 0.05);
}

TEST(Thinning, SingleAndPairRules)
{
    EXPECT_EQ(thin_type2({{0.0, 0.0}}, {0.9}, 10.0), std::vector<bool>{true});
    const std::vector<Point2> pair{{0.0, 0.0}, {5.0, 0.0}};
    EXPECT_EQ(thin_type2(pair, {0.7, 0.2}, 10.0), (std::vector<bool>{false, true}));
    EXPECT_EQ(thin_type2(pair, {0.1, 0.2}, 10.0), (std::vector<bool>{true, false}));
    EXPECT_EQ(thin_type2(pair, {0.1, 0.2}, 4.0), (std::vector<bool>{true, true}));
    EXPECT_EQ(thin_type1(pair, 10.0), (std::vector<bool>{false, false}));
}

TEST(Thinning, ChainKeepsOnlyLocalMinima)
{
    // Type II judges each candidate against all candidates, retained or not:
    // b loses to a, c loses to b, so only a survives even though c's only
    // smaller neighbor is itself thinned.
    const std::vector<Point2> chain{{0.0, 0.0}, {8.0, 0.0}, {16.0, 0.0}};
    EXPECT_EQ(thin_type2(chain, {0.1, 0.2, 0.3}, 10.0), (std::vector<bool>{true, false, false}));
}

TEST(Thinning, TypeTwoDominatesTypeOne)
{
    std::mt19937_64 rng(3);
    const Disk d({0.0, 0.0}, 1e4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int rep = 0; rep < 200; ++rep) {
        const PointSet2D c = sample_ppp(2e-6, d, rng);
        std::vector<double> marks(c.size());
        for (auto& m : marks) {
            m = u(rng);
        }
        const auto k1 = thin_type1(c.points, 1000.0);
        const auto k2 = thin_type2(c.points, marks, 1000.0);
        for (std::size_t i = 0; i < c.size(); ++i) {
            EXPECT_TRUE(!k1[i] || k2[i]);
        }
    }
}

TEST(Thinning, GridAgreesWithBruteForce)
{
    std::mt19937_64 rng(4);
    const Disk d({-300.0, 800.0}, 5000.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int rep = 0; rep < 50; ++rep) {
        const PointSet2D c = sample_ppp(4e-6, d, rng);
        std::vector<double> marks(c.size());
        for (auto& m : marks) {
            m = u(rng);
        }
        const auto grid = thin_type2(c.points, marks, 700.0);
        for (std::size_t i = 0; i < c.size(); ++i) {
            bool keep = true;
            for (std::size_t j = 0; j < c.size(); ++j) {
                if (j != i && distance(c.points[i], c.points[j]) < 700.0 && marks[j] < marks[i]) {
                    keep = false;
                }
            }
            EXPECT_EQ(grid[i], keep);
        }
    }
}

TEST(Mhcpp, HardCoreAndMarks)
{
    std::mt19937_64 rng(5);
    const Disk d({0.0, 0.0}, 1e4);
    for (bool guard : {false, true}) {
        for (int rep = 0; rep < 300; ++rep) {
            const PointSet2D s = sample_mhcpp2(5e-7, 1000.0, d, rng, {guard});
            EXPECT_EQ(s.tag, ProcessTag::mhcpp2);
            EXPECT_EQ(s.marks.size(), s.size());
            EXPECT_GE(min_pairwise_distance(s.points), 1000.0);
            for (const auto& p : s.points) {
                EXPECT_TRUE(d.contains(p));
            }
        }
    }
}

TEST(Mhcpp, HugeHardCoreKeepsAtMostOne)
{
    std::mt19937_64 rng(6);
    const Disk d({0.0, 0.0}, 1e4);
    for (int rep = 0; rep < 200; ++rep) {
        EXPECT_LE(sample_mhcpp2(5e-7, 2.5e4, d, rng).size(), 1u);
    }
}

TEST(MhcppDensity, LimitsAndDefault)
{
    EXPECT_EQ(mhcpp_density(0.0, 1000.0), 0.0);
    const double sat = 1.0 / (pi * 1e6);
    EXPECT_LT(std::abs(mhcpp_density(1e3, 1000.0) - sat) / sat, 1e-6);
    EXPECT_NEAR(mhcpp_density(5e-7, 1000.0), (1.0 - std::exp(-0.5 * pi)) / (pi * 1e6), 1e-20);
    EXPECT_NEAR(mhcpp_density(5e-7, 1000.0), 2.5214e-7, 1e-11);
}

TEST(Csv, PointSetColumns)
{
    PointSet2D s;
    s.points = {{1.5, -2.0}};
    std::ostringstream a;
    write_csv(a, s);
    EXPECT_EQ(a.str(), "x_m,y_m,mark\n1.5,-2,\n");
    s.marks = {0.25};
    std::ostringstream b;
    write_csv(b, s);
    EXPECT_EQ(b.str(), "x_m,y_m,mark\n1.5,-2,0.25\n");
}

TEST(LensArea, RegimesAndContinuity)
{
    EXPECT_EQ(lens_area(kRu + kRa, kRu, kRa), 0.0);
    EXPECT_DOUBLE_EQ(lens_area(3000.0, kRu, kRa), pi * kRa * kRa);
    EXPECT_DOUBLE_EQ(lens_area(kRu - kRa, kRu, kRa), pi * kRa * kRa);
    EXPECT_NEAR(lens_area(kRu - kRa + 1e-6, kRu, kRa), pi * kRa * kRa, 1e-3);
    EXPECT_NEAR(lens_area(kRu + kRa - 1e-6, kRu, kRa), 0.0, 1e-3);
    double prev = pi * kRa * kRa;
    for (double m0 = kRu - kRa; m0 <= kRu + kRa; m0 += 1.0) {
        const double a = lens_area(m0, kRu, kRa);
        EXPECT_LE(a, prev + 1e-9);
        EXPECT_GE(a, 0.0);
        prev = a;
    }
}

TEST(LensArea, RejectionOracle)
{
    std::mt19937_64 rng(8);
    const Disk cov({9500.0, 0.0}, kRa);
    const int n = 2000000;
    int inside = 0;
    for (int i = 0; i < n; ++i) {
        const Point2 p = sample_uniform_in_disk(cov, rng);
        inside += (p.x * p.x + p.y * p.y <= kRu * kRu) ? 1 : 0;
    }
    const double est = pi * kRa * kRa * inside / n;
    EXPECT_NEAR(lens_area(9500.0, kRu, kRa) / est, 1.0, 0.005);
}

TEST(InterfererProb, Values)
{
    EXPECT_NEAR(interferer_success_prob(5000.0, kRu, kRa), std::pow(500.0 / 9500.0, 2), 1e-15);
    EXPECT_NEAR(interferer_success_prob(5000.0, kRu, kRa), 2.770e-3, 1e-6);
    EXPECT_NEAR(interferer_success_prob(kRu + kRa - 1e-6, kRu, kRa), 0.0, 1e-10);
    EXPECT_NEAR(interferer_success_prob(kRu - kRa, kRu, kRa),
                interferer_success_prob(kRu - kRa + 1e-7, kRu, kRa), 1e-12);
    EXPECT_THROW(interferer_success_prob(kRu + kRa, kRu, kRa), DomainError);
    EXPECT_THROW(interferer_success_prob(-1.0, kRu, kRa), DomainError);
}

TEST(DistanceLaw, SliverLensIsPointMass)
{
    const DistanceLaw law(kRu + kRa - 1e-7, kRu, kRa);
    EXPECT_NEAR(law.expect([](double) { return 1.0; }), 1.0, 1e-12);
    EXPECT_NEAR(law.expect([](double r) { return r; }), kRa, 1e-6);
}

TEST(DistanceLaw, CasesAndSupports)
{
    const DistanceLaw a(3000.0, kRu, kRa);
    EXPECT_EQ(a.lens_case(), LensCase::fully_inside);
    EXPECT_EQ(a.r_min(), 0.0);
    EXPECT_EQ(a.r_max(), kRa);
    EXPECT_DOUBLE_EQ(a.pdf(kRa), 2.0 / kRa);
    EXPECT_DOUBLE_EQ(a.cdf(250.0), 0.25);

    const DistanceLaw b(9300.0, kRu, kRa);
    EXPECT_EQ(b.lens_case(), LensCase::partial_center_in);
    ASSERT_EQ(b.pieces().size(), 2u);
    EXPECT_DOUBLE_EQ(b.pieces()[0].hi, 200.0);
    EXPECT_NEAR(b.pdf(100.0), 2.0 * pi * 100.0 / b.gamma(), 1e-15);

    const DistanceLaw c(9700.0, kRu, kRa);
    EXPECT_EQ(c.lens_case(), LensCase::partial_center_out);
    EXPECT_DOUBLE_EQ(c.r_min(), 200.0);
    EXPECT_EQ(c.pdf(150.0), 0.0);
    EXPECT_EQ(c.cdf(150.0), 0.0);

    EXPECT_EQ(DistanceLaw(kRu - kRa, kRu, kRa).lens_case(), LensCase::fully_inside);
    EXPECT_EQ(DistanceLaw(kRu, kRu, kRa).lens_case(), LensCase::partial_center_in);
    EXPECT_THROW(DistanceLaw(kRu + kRa, kRu, kRa), DomainError);
    EXPECT_THROW(DistanceLaw(-1.0, kRu, kRa), DomainError);
}

TEST(DistanceLaw, NormalizedInEveryCase)
{
    for (double m0 : {0.0, 3000.0, 9000.0, 9000.5, 9300.0, 9500.0, 9700.0, 9990.0, 9999.9}) {
        const DistanceLaw law(m0, kRu, kRa);
        EXPECT_NEAR(law.expect([](double) { return 1.0; }), 1.0, 1e-6) << m0;
        // Independent check with a singularity-tolerant integrator.
        const double mass = oracle::tanh_sinh([&](double r) { return law.pdf(r); }, law.r_min(), law.r_max());
        EXPECT_NEAR(mass, 1.0, 1e-6) << m0;
    }
}

TEST(DistanceLaw, CdfIsIntegralOfPdf)
{
    for (double m0 : {3000.0, 9300.0, 9700.0}) {
        const DistanceLaw law(m0, kRu, kRa);
        EXPECT_EQ(law.cdf(law.r_min()), 0.0);
        EXPECT_EQ(law.cdf(law.r_max()), 1.0);
        double prev = 0.0;
        for (double r = law.r_min() + 7.0; r < law.r_max(); r += 23.0) {
            // Split at the inner kink so the oracle integrates smooth pieces.
            const double kink = kRu - m0;
            auto f = [&](double t) { return law.pdf(t); };
            const double ref = (kink > law.r_min() && kink < r)
                                   ? oracle::tanh_sinh(f, law.r_min(), kink) + oracle::tanh_sinh(f, kink, r)
                                   : oracle::tanh_sinh(f, law.r_min(), r);
            EXPECT_NEAR(law.cdf(r), ref, 1e-6) << m0 << ' ' << r;
            EXPECT_GE(law.cdf(r), prev);
            prev = law.cdf(r);
        }
    }
}

TEST(DistanceLaw, PdfIsDerivativeOfCdf)
{
    for (double m0 : {3000.0, 9300.0, 9700.0}) {
        const DistanceLaw law(m0, kRu, kRa);
        for (double r = law.r_min() + 5.0; r < law.r_max() - 5.0; r += 11.0) {
            if (std::abs(r - (kRu - m0)) < 5.0) {
                continue;
            }
            const double h = 1e-3;
            const double d = (law.cdf(r + h) - law.cdf(r - h)) / (2.0 * h);
            EXPECT_NEAR(d, law.pdf(r), 1e-4 * law.pdf(r)) << m0 << ' ' << r;
        }
    }
}

TEST(DistanceLaw, HistogramOracle)
{
    std::mt19937_64 rng(9);
    const double m0 = 9300.0;
    const DistanceLaw law(m0, kRu, kRa);
    const Disk cov({m0, 0.0}, kRa);
    std::vector<double> r;
    r.reserve(2000000);
    while (r.size() < 2000000) {
        const Point2 p = sample_uniform_in_disk(cov, rng);
        if (p.x * p.x + p.y * p.y <= kRu * kRu) {
            r.push_back(distance(p, cov.center));
        }
    }
    const int bins = 50;
    const auto h = oracle::histogram_density(r, 0.0, kRa, bins);
    double peak = 0.0;
    for (double r0 = 0.0; r0 <= kRa; r0 += 1.0) {
        peak = std::max(peak, law.pdf(r0));
    }
    for (int i = 0; i < bins; ++i) {
        const double lo = i * kRa / bins;
        const double hi = lo + kRa / bins;
        const double bin_mean = (law.cdf(hi) - law.cdf(lo)) / (hi - lo);
        EXPECT_NEAR(h[i], bin_mean, 0.02 * peak) << i;
    }
}

TEST(ProjectionLaw, Values)
{
    EXPECT_DOUBLE_EQ(projection_distance_pdf(1e4, kRu, kRa), 2.0 / 1e4);
    EXPECT_EQ(projection_distance_pdf(1e4 + 1.0, kRu, kRa), 0.0);
    const double mass = oracle::simpson([](double m) { return projection_distance_pdf(m, kRu, kRa); }, 0.0, 1e4);
    EXPECT_NEAR(mass, 1.0, 1e-12);
    EXPECT_DOUBLE_EQ(projection_distance_cdf(5e3, kRu, kRa), 0.25);
}

TEST(ProjectionLaw, GuardedMhcppRadiiFollowLaw)
{
    std::mt19937_64 rng(10);
    const Disk d({0.0, 0.0}, 1e4);
    std::vector<double> m;
    while (m.size() < 40000) {
        for (const auto& p : sample_mhcpp2(5e-7, 1000.0, d, rng, {true}).points) {
            m.push_back(std::hypot(p.x, p.y));
        }
    }
    EXPECT_LT(oracle::ks_statistic(m, [](double x) { return projection_distance_cdf(x, kRu, kRa); }), 0.01);
}

} // namespace
} // namespace csatn
