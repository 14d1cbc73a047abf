#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "demcal/doe/design.hpp"
#include "demcal/error.hpp"
#include "demcal/rsm/fdist.hpp"
#include "demcal/rsm/io.hpp"
#include "demcal/rsm/poly.hpp"
#include "demcal/rsm/quad.hpp"

using namespace demcal;
using namespace demcal::rsm;

namespace {

doe::DesignMatrix bbd(int centers = 5) {
    return doe::box_behnken({doe::FactorSpec::three_level("X", 0.23, 0.06), doe::FactorSpec::three_level("Y", 0.45, 0.15),
                             doe::FactorSpec::three_level("Z", 0.38, 0.06)},
                            centers);
}

// published surface runs in standard order, Y read as 0 on rows 5-8 and 13-17
const std::vector<double> kSurfaceRuns{46.63, 49.27, 44.21, 48.56, 44.34, 48.6, 46.56, 48.58, 47.52,
                                   44.36, 46.39, 46.89, 46.54, 45.6,  45.7, 45.54, 45.56};

const std::vector<double> kMu{0.35, 0.45, 0.55, 0.65, 0.75, 0.85};
const std::vector<double> kIncline{19.97, 24.97, 29.97, 33.43, 37.46, 39.96};
const std::vector<double> kE{0.35, 0.40, 0.45, 0.50, 0.55, 0.60, 0.65, 0.70, 0.75};
const std::vector<double> kRebound{16.2, 20.16, 22.55, 30.26, 42.44, 46.59, 58.75, 68.92, 87.35};

std::vector<double> evaluate(const QuadModel& m, const doe::DesignMatrix& d) {
    std::vector<double> y;
    for (const auto& r : d.runs) y.push_back(m({r[0], r[1], r[2]}));
    return y;
}

template <class F>
ErrorCode code_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::StageFailure;
}

}  // namespace

struct FCase {
    double f, df1, df2, p;
};

TEST(FDist, MatchesReferenceTail) {
    // upper tails from an independent statistics package
    const std::vector<FCase> cases{
        {0.1, 1, 1, 8.050177709578630e-01},     {0.5, 2, 3, 6.495190528383290e-01},
        {1, 1, 1, 5.000000000000001e-01},       {1.5, 3, 7, 2.958089192964378e-01},
        {2, 5, 10, 1.641949508997387e-01},      {3.2, 2, 4, 1.479289940828402e-01},
        {7.7086474, 1, 4, 5.000000020432620e-02}, {12.7, 1, 7, 9.173827846180132e-03},
        {0.3151, 3, 4, 8.150303179952059e-01},  {33.74, 9, 7, 6.013711604690344e-05},
        {570.37, 1, 4, 1.822966586941187e-05},  {0.01, 4, 12, 9.997707685598158e-01},
        {4, 7, 4, 9.918410875672534e-02},       {1, 10, 10, 5.000000000000001e-01},
        {2.5, 20, 30, 1.132846370347176e-02},   {0.8, 6, 2, 6.482800732749847e-01},
        {9, 2, 2, 1.000000000000000e-01},       {0.05, 1, 30, 8.245790072177894e-01},
        {104.39, 7, 4, 2.312962303879281e-04},  {5.73, 1, 7, 4.790464684231411e-02}};
    for (const auto& c : cases) EXPECT_NEAR(f_cdf(c.f, c.df1, c.df2), c.p, 1e-10) << c.f << " " << c.df1 << " " << c.df2;
}

TEST(FDist, EdgesAndMonotone) {
    EXPECT_DOUBLE_EQ(f_cdf(0.0, 3, 5), 1.0);
    EXPECT_EQ(f_cdf(std::numeric_limits<double>::infinity(), 3, 5), 0.0);
    EXPECT_NEAR(f_cdf(7.7086, 1, 4), 0.05, 5e-4);
    EXPECT_LT(f_cdf(570.37, 1, 4), 1e-4);
    double prev = 1.0;
    for (double f = 0.05; f < 50.0; f *= 1.3) {
        const double p = f_cdf(f, 4, 9);
        EXPECT_LT(p, prev);
        prev = p;
    }
    EXPECT_THROW(f_cdf(-1.0, 1, 1), Error);
    EXPECT_THROW(f_cdf(1.0, 0.5, 1), Error);
    EXPECT_THROW(f_cdf(std::nan(""), 1, 1), Error);
}

TEST(Poly, ExactLine) {
    const auto fit = fit_poly({0, 1, 2, 3}, {1, 3, 5, 7}, 1);
    ASSERT_EQ(fit.coefficients.size(), 2u);
    EXPECT_NEAR(fit.coefficients[0], 1.0, 1e-12);
    EXPECT_NEAR(fit.coefficients[1], 2.0, 1e-12);
    EXPECT_DOUBLE_EQ(fit.r_squared, 1.0);
    EXPECT_NEAR(fit(10.0), 21.0, 1e-10);
}

TEST(Poly, InclineTableLeastSquares) {
    const auto fit = fit_poly(kMu, kIncline, 2);
    EXPECT_NEAR(fit.coefficients[0], -2.86773214, 1e-6);
    EXPECT_NEAR(fit.coefficients[1], 75.35142857, 1e-6);
    EXPECT_NEAR(fit.coefficients[2], -29.25, 1e-6);
    EXPECT_NEAR(fit.r_squared, 0.99907301, 1e-7);
}

TEST(Poly, ReboundTableLeastSquares) {
    const auto fit = fit_poly(kE, kRebound, 2);
    EXPECT_NEAR(fit.coefficients[0], 37.18733333, 1e-6);
    EXPECT_NEAR(fit.coefficients[1], -168.37285714, 1e-6);
    EXPECT_NEAR(fit.coefficients[2], 310.52380952, 1e-6);
    EXPECT_NEAR(fit.r_squared, 0.99350685, 1e-7);
}

TEST(Poly, ResidualsOrthogonalToBasis) {
    const auto fit = fit_poly(kE, kRebound, 2);
    double s0 = 0.0, s1 = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < kE.size(); ++i) {
        const double r = kRebound[i] - fit(kE[i]);
        s0 += r;
        s1 += r * kE[i];
        s2 += r * kE[i] * kE[i];
    }
    EXPECT_NEAR(s0, 0.0, 1e-9);
    EXPECT_NEAR(s1, 0.0, 1e-9);
    EXPECT_NEAR(s2, 0.0, 1e-9);
}

TEST(Poly, DegenerateInputs) {
    EXPECT_EQ(code_of([] { fit_poly({1, 2}, {1, 2}, 2); }), ErrorCode::DegenerateData);
    EXPECT_EQ(code_of([] { fit_poly({1, 1, 1, 1}, {1, 2, 3, 4}, 1); }), ErrorCode::DegenerateData);
    EXPECT_THROW(fit_poly({1, 2, 3}, {1, 2, 3}, 3), Error);
    EXPECT_THROW(fit_poly({1, 2, 3}, {1, 2}, 1), Error);
}

TEST(Invert, PrintedCalibrationCurves) {
    EXPECT_NEAR(invert_quadratic(-33.71, 79.99, -3.99, 35.82, 0.35, 0.85), 0.71032, 1e-5);
    EXPECT_NEAR(invert_quadratic(328.955, -186.957, 40.9209, 20.5, 0.35, 0.75), 0.42082, 1e-5);
}

TEST(Invert, FittedReboundCurve) {
    const auto fit = fit_poly(kE, kRebound, 2);
    const double e = invert_quadratic(fit.coefficients[2], fit.coefficients[1], fit.coefficients[0], 20.5, 0.35, 0.75);
    EXPECT_NEAR(e, 0.411688, 1e-6);
}

TEST(Invert, LinearAndRoundTrip) {
    EXPECT_DOUBLE_EQ(invert_quadratic(0.0, 2.0, 1.0, 5.0, 0.0, 10.0), 2.0);
    const double c2 = 1e-9, c1 = 3.0, c0 = -2.0;
    for (double x : {0.1, 0.5, 0.9}) {
        const double y = c2 * x * x + c1 * x + c0;
        EXPECT_NEAR(invert_quadratic(c2, c1, c0, y, 0.0, 1.0), x, 1e-12);
    }
}

TEST(Invert, NoneOrTwoRoots) {
    EXPECT_EQ(code_of([] { invert_quadratic(1, 0, 0, -1, -5, 5); }), ErrorCode::NoSolution);
    EXPECT_EQ(code_of([] { invert_quadratic(1, 0, 0, 4, 3, 5); }), ErrorCode::NoSolution);
    EXPECT_EQ(code_of([] { invert_quadratic(1, 0, 0, 4, -5, 5); }), ErrorCode::AmbiguousSolution);
    EXPECT_EQ(code_of([] { invert_quadratic(0, 0, 1, 4, -5, 5); }), ErrorCode::NoSolution);
    EXPECT_DOUBLE_EQ(invert_quadratic(1, 0, 0, 0, -5, 5), 0.0);
}

TEST(Quad, RecoversExactCoefficients) {
    QuadModel truth;
    truth.coefficients = {45.0, 1.7, -0.7, 0.4, 0.3, -0.6, 0.9, 1.1, 0.3, -0.2};
    const auto d = bbd();
    const auto m = fit_quad_rsm(d, evaluate(truth, d));
    for (std::size_t t = 0; t < kQuadTerms; ++t) EXPECT_NEAR(m.coefficients[t], truth.coefficients[t], 1e-9) << kTermNames[t];
    EXPECT_EQ(m.parameter_count(), 10u);
}

TEST(Quad, NoisyRecoveryOfMainEffect) {
    QuadModel truth;
    truth.coefficients = {45.0, 1.7, -0.7, 0.4, 0.3, -0.6, 0.9, 1.1, 0.3, -0.2};
    const auto d = bbd();
    std::mt19937_64 gen(11);
    std::normal_distribution<double> noise(0.0, 0.1);
    double worst = 0.0;
    for (int rep = 0; rep < 50; ++rep) {
        auto y = evaluate(truth, d);
        for (auto& v : y) v += noise(gen);
        worst = std::max(worst, std::abs(fit_quad_rsm(d, y).coefficients[1] - 1.7));
    }
    // sd of b_A is 0.1 / sqrt(8); 50 draws stay inside 4 sd
    EXPECT_LT(worst, 4.0 * 0.1 / std::sqrt(8.0));
}

TEST(Quad, RankDeficientDesign) {
    auto d = bbd();
    d.runs.resize(9);
    EXPECT_EQ(code_of([&] { fit_quad_rsm(d, std::vector<double>(9, 1.0)); }), ErrorCode::DegenerateDesign);
    auto flat = bbd();
    for (auto& r : flat.runs) r[2] = 0.0;
    EXPECT_EQ(code_of([&] { fit_quad_rsm(flat, kSurfaceRuns); }), ErrorCode::DegenerateDesign);
}

TEST(Quad, PublishedSurfaceCoefficients) {
    const auto m = fit_quad_rsm(bbd(), kSurfaceRuns);
    const std::array<double, kQuadTerms> expect{45.788, 1.65875, -0.72375, 0.45, 0.4275, -0.56, 0.915, 1.05475, 0.32475, 0.17725};
    for (std::size_t t = 0; t < kQuadTerms; ++t) EXPECT_NEAR(m.coefficients[t], expect[t], 1e-9) << kTermNames[t];
    // the printed equation, within the rounding the printed table allows
    EXPECT_NEAR(m.coefficients[0], 45.57, 0.5);
    EXPECT_NEAR(m.coefficients[1], 1.73, 0.3);
}

TEST(Anova, ReproducesPublishedAnova) {
    const auto d = bbd();
    const auto m = fit_quad_rsm(d, kSurfaceRuns);
    const auto t = anova(m, d, kSurfaceRuns);
    EXPECT_NEAR(t.model.ss, 38.72, 0.005);
    EXPECT_EQ(t.model.df, 9);
    EXPECT_NEAR(t.model.f, 33.74, 0.005);
    EXPECT_LT(t.model.p, 1e-4);
    struct Row {
        const char* name;
        double ss, f, p;
    };
    const std::vector<Row> rows{{"A", 22.01, 172.6, 0.0},      {"B", 4.19, 32.86, 0.0007},   {"C", 1.62, 12.7, 0.0092},
                                {"AB", 0.731, 5.73, 0.0479},   {"AC", 1.25, 9.84, 0.0165},  {"BC", 3.35, 26.26, 0.0014},
                                {"A2", 4.68, 36.73, 0.0005},   {"B2", 0.4441, 3.48, 0.1043}, {"C2", 0.1323, 1.04, 0.3424}};
    for (const auto& r : rows) {
        const auto& row = t.term(r.name);
        EXPECT_NEAR(row.ss, r.ss, 0.006) << r.name;
        EXPECT_NEAR(row.f, r.f, 0.06) << r.name;
        if (r.p > 0.0) EXPECT_NEAR(row.p, r.p, 6e-5) << r.name;
        else EXPECT_LT(row.p, 1e-4);
    }
    EXPECT_NEAR(t.residual.ss, 0.8927, 5e-5);
    EXPECT_EQ(t.residual.df, 7);
    EXPECT_NEAR(t.residual.ms, 0.1275, 5e-5);
    ASSERT_TRUE(t.has_lack_of_fit);
    EXPECT_NEAR(t.lack_of_fit.ss, 0.1706, 5e-5);
    EXPECT_EQ(t.lack_of_fit.df, 3);
    EXPECT_NEAR(t.lack_of_fit.f, 0.3151, 5e-5);
    EXPECT_NEAR(t.lack_of_fit.p, 0.8151, 5e-5);
    EXPECT_NEAR(t.pure_error.ss, 0.7221, 5e-5);
    EXPECT_EQ(t.pure_error.df, 4);
    EXPECT_NEAR(t.total.ss, 39.62, 0.005);
    EXPECT_EQ(t.total.df, 16);
    EXPECT_THROW(t.term("D"), Error);
}

TEST(Anova, SumOfSquaresIdentities) {
    const auto d = bbd();
    auto y = kSurfaceRuns;
    y[3] += 0.7;
    const auto t = anova(fit_quad_rsm(d, y), d, y);
    EXPECT_NEAR(t.model.ss + t.residual.ss, t.total.ss, 1e-10);
    EXPECT_NEAR(t.lack_of_fit.ss + t.pure_error.ss, t.residual.ss, 1e-10);
    EXPECT_EQ(t.lack_of_fit.df + t.pure_error.df, t.residual.df);
    // BBD terms are orthogonal except the pure quadratics
    double linear = 0.0;
    for (const char* n : {"A", "B", "C", "AB", "AC", "BC"}) linear += t.term(n).ss;
    EXPECT_LT(linear, t.model.ss);
}

TEST(Anova, PureErrorEstimatesNoiseVariance) {
    QuadModel truth;
    truth.coefficients = {10, 1, 0, 0, 0, 0, 0, 0, 0, 0};
    const auto d = bbd();
    std::mt19937_64 gen(5);
    std::normal_distribution<double> noise(0.0, 0.3);
    double sum = 0.0;
    constexpr int kReps = 4000;
    for (int rep = 0; rep < kReps; ++rep) {
        auto y = evaluate(truth, d);
        for (auto& v : y) v += noise(gen);
        sum += anova(fit_quad_rsm(d, y), d, y).pure_error.ms;
    }
    // sd of the mean of kReps MS_pe draws is 0.09 * sqrt(2 / 4) / sqrt(kReps)
    EXPECT_NEAR(sum / kReps, 0.09, 4.0 * 0.09 * std::sqrt(0.5 / kReps));
}

TEST(Anova, ExactFitLeavesFUndefined) {
    QuadModel truth;
    truth.coefficients = {1, 2, 3, 0, 0, 0, 0, 1, 0, 0};
    const auto d = bbd();
    const auto y = evaluate(truth, d);
    const auto m = fit_quad_rsm(d, y);
    const auto t = anova(m, d, y);
    EXPECT_TRUE(std::isnan(t.model.f));
    EXPECT_TRUE(std::isnan(t.term("A").p));
    const auto fm = metrics(m, d, y);
    EXPECT_DOUBLE_EQ(fm.r_squared, 1.0);
    EXPECT_EQ(fm.cv_percent, 0.0);
}

TEST(Anova, NoReplicatesNoLackOfFit) {
    const auto d = bbd(1);
    std::vector<double> y(kSurfaceRuns.begin(), kSurfaceRuns.begin() + 13);
    const auto t = anova(fit_quad_rsm(d, y), d, y);
    EXPECT_FALSE(t.has_lack_of_fit);
    EXPECT_EQ(t.residual.df, 3);
}

TEST(Metrics, PublishedSummary) {
    const auto d = bbd();
    const auto f = metrics(fit_quad_rsm(d, kSurfaceRuns), d, kSurfaceRuns);
    EXPECT_NEAR(f.r_squared, 0.97747, 1e-5);
    EXPECT_NEAR(f.r_squared_adjusted, 0.94849, 1e-5);
    EXPECT_NEAR(f.press, 3.85825, 1e-5);
    EXPECT_NEAR(f.r_squared_predicted, 0.90261, 1e-5);
    EXPECT_NEAR(f.cv_percent, 0.76764, 1e-5);
    EXPECT_NEAR(f.adequate_precision, 17.9678, 1e-4);
}

TEST(Metrics, PressEqualsLeaveOneOut) {
    const auto d = bbd();
    const auto m = fit_quad_rsm(d, kSurfaceRuns);
    double brute = 0.0;
    for (std::size_t i = 0; i < d.runs.size(); ++i) {
        auto di = d;
        auto yi = kSurfaceRuns;
        di.runs.erase(di.runs.begin() + static_cast<std::ptrdiff_t>(i));
        yi.erase(yi.begin() + static_cast<std::ptrdiff_t>(i));
        const auto mi = fit_quad_rsm(di, yi);
        const auto& r = d.runs[i];
        const double e = kSurfaceRuns[i] - mi({r[0], r[1], r[2]});
        brute += e * e;
    }
    EXPECT_NEAR(press(m, d, kSurfaceRuns), brute, 1e-8);
}

TEST(Metrics, PressUndefinedAtFullLeverage) {
    const auto d = bbd(1);
    std::vector<double> y(kSurfaceRuns.begin(), kSurfaceRuns.begin() + 13);
    const auto m = fit_quad_rsm(d, y);
    try {
        press(m, d, y);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::PressUndefined);
        EXPECT_NE(std::string(e.what()).find("run 13"), std::string::npos);
    }
}

TEST(Reduced, KeepsSignificantTerms) {
    const auto d = bbd();
    const auto full = fit_quad_rsm(d, kSurfaceRuns);
    const auto r = reduced_model(full, anova(full, d, kSurfaceRuns), d, kSurfaceRuns);
    const std::array<bool, kQuadTerms> keep{true, true, true, true, true, true, true, true, false, false};
    EXPECT_EQ(r.active, keep);
    EXPECT_EQ(r.parameter_count(), 8u);
    EXPECT_EQ(r.coefficients[8], 0.0);
    EXPECT_EQ(r.factors.size(), 3u);
}

TEST(Optimize, CenterTargetHitsCenter) {
    const auto m = fit_quad_rsm(bbd(), kSurfaceRuns);
    const auto r = optimize_to_target(m, m({0, 0, 0}));
    ASSERT_TRUE(r.converged);
    const bool has_center = std::any_of(r.candidates.begin(), r.candidates.end(), [](const Candidate& c) {
        return std::abs(c.coded[0]) < 1e-9 && std::abs(c.coded[1]) < 1e-9 && std::abs(c.coded[2]) < 1e-9;
    });
    EXPECT_TRUE(has_center);
    for (std::size_t i = 1; i < r.candidates.size(); ++i)
        EXPECT_LE(r.candidates[i - 1].residual, r.candidates[i].residual);
}

TEST(Optimize, TargetAngleCandidates) {
    const auto m = fit_quad_rsm(bbd(), kSurfaceRuns);
    OptimizeOptions o;
    o.grid = 41;
    const auto r = optimize_to_target(m, 45.27, o);
    ASSERT_TRUE(r.converged);
    ASSERT_FALSE(r.candidates.empty());
    for (const auto& c : r.candidates) {
        EXPECT_LT(c.residual, 1e-3);
        EXPECT_NEAR(m(c.coded), 45.27, 1e-3);
        for (double v : c.coded) {
            EXPECT_GE(v, -1.0);
            EXPECT_LE(v, 1.0);
        }
        EXPECT_NEAR(c.physical[1], 0.45 + 0.15 * c.coded[1], 1e-12);
    }
}

TEST(Optimize, UnreachableTargetIsBestEffort) {
    const auto m = fit_quad_rsm(bbd(), kSurfaceRuns);
    OptimizeOptions o;
    o.grid = 21;
    const auto r = optimize_to_target(m, 80.0, o);
    EXPECT_FALSE(r.converged);
    ASSERT_EQ(r.candidates.size(), 1u);
    EXPECT_GT(r.candidates[0].residual, 20.0);
    EXPECT_THROW(optimize_to_target(m, 45.0, OptimizeOptions{{0, 0, 0}, {0, 1, 1}, 11, 1e-3}), Error);
}

TEST(Optimize, FlattestPointOnCentralSlice) {
    const auto m = fit_quad_rsm(bbd(), kSurfaceRuns);
    const auto c = flattest_on_slice(m, 45.27, 0);
    // dense brute-force scan of the level curve
    EXPECT_EQ(c.coded[0], 0.0);
    EXPECT_NEAR(c.coded[1], 0.4973256, 1e-4);
    EXPECT_NEAR(c.coded[2], -0.2785900, 1e-4);
    EXPECT_LT(c.residual, 1e-9);
    EXPECT_NEAR(c.physical[0], 0.23, 1e-12);
    EXPECT_NEAR(c.physical[1], 0.5246, 1e-4);
    EXPECT_NEAR(c.physical[2], 0.3633, 1e-4);
    const auto g = gradient(m, c.coded);
    EXPECT_NEAR(std::hypot(g[0], g[1], g[2]), 2.2782007, 1e-6);
    EXPECT_EQ(code_of([&] { flattest_on_slice(m, 80.0, 0); }), ErrorCode::NoSolution);
}

TEST(Optimize, GradientMatchesFiniteDifference) {
    const auto m = fit_quad_rsm(bbd(), kSurfaceRuns);
    const Coded x{0.3, -0.4, 0.7};
    const auto g = gradient(m, x);
    for (std::size_t d = 0; d < 3; ++d) {
        Coded p = x, q = x;
        p[d] += 1e-6;
        q[d] -= 1e-6;
        EXPECT_NEAR(g[d], (m(p) - m(q)) / 2e-6, 1e-6);
    }
}

TEST(Io, ModelJsonRoundTrip) {
    const auto d = bbd();
    const auto full = fit_quad_rsm(d, kSurfaceRuns);
    const auto r = reduced_model(full, anova(full, d, kSurfaceRuns), d, kSurfaceRuns);
    const auto j = to_json(r);
    EXPECT_NEAR(j["coefficients"]["A"].get<double>(), r.coefficients[1], 1e-15);
    const auto back = quad_model_from_json(nlohmann::json::parse(j.dump()));
    EXPECT_EQ(back.coefficients, r.coefficients);
    EXPECT_EQ(back.active, r.active);
    ASSERT_EQ(back.factors.size(), 3u);
    EXPECT_EQ(back.factors[1].name, "Y");
    EXPECT_DOUBLE_EQ(back.factors[1].step, 0.15);
    EXPECT_THROW(quad_model_from_json(nlohmann::json::parse(R"({"coefficients": {"1": 2}})")), Error);
}

TEST(Io, AnovaCsv) {
    const auto d = bbd();
    const auto t = anova(fit_quad_rsm(d, kSurfaceRuns), d, kSurfaceRuns);
    const auto file = std::filesystem::temp_directory_path() / "demcal_test_rsm" / "anova.csv";
    write_anova_csv(file, t);
    std::ifstream in(file);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "source,sum_of_squares,df,mean_square,f_value,p_value");
    std::vector<std::string> sources;
    while (std::getline(in, line)) sources.push_back(line.substr(0, line.find(',')));
    const std::vector<std::string> expect{"Model", "A", "B", "C", "AB", "AC", "BC", "A2", "B2", "C2",
                                          "Residual", "Lack of Fit", "Pure Error", "Cor Total"};
    EXPECT_EQ(sources, expect);
    std::filesystem::remove_all(file.parent_path());
}

TEST(Io, MetricsJsonNullsNonFinite) {
    FitMetrics m;
    m.adequate_precision = std::numeric_limits<double>::infinity();
    EXPECT_TRUE(to_json(m)["adequate_precision"].is_null());
    const auto p = to_json(fit_poly(kMu, kIncline, 2));
    EXPECT_EQ(p["degree"].get<int>(), 2);
    EXPECT_EQ(p["coefficients"].size(), 3u);
}
