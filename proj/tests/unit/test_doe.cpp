#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include "demcal/doe/design.hpp"
#include "demcal/doe/screening.hpp"
#include "demcal/error.hpp"

using namespace demcal;
using namespace demcal::doe;

namespace {

std::vector<FactorSpec> screening_factors(std::size_t k) {
    // ranges of the seven contact parameters, padded with generic factors
    const std::vector<FactorSpec> table5{
        FactorSpec::two_level("A", 0.3, 0.75), FactorSpec::two_level("B", 0.35, 0.9),
        FactorSpec::two_level("C", 0.2, 0.5),  FactorSpec::two_level("D", 0.2, 0.35),
        FactorSpec::two_level("E", 0.15, 0.75), FactorSpec::two_level("F", 0.4, 0.9),
        FactorSpec::two_level("G", 0.05, 0.35)};
    std::vector<FactorSpec> out;
    for (std::size_t i = 0; i < k; ++i)
        out.push_back(i < table5.size() ? table5[i] : FactorSpec::two_level("X" + std::to_string(i), 0.0, 1.0));
    return out;
}

const std::vector<double> kScreeningRuns{25.91, 46.23, 55.12, 40.12, 31.25, 46.85, 43.26, 34.56, 51.93, 35.62, 31.24, 31.58};

std::vector<FactorSpec> bbd_factors() {
    return {FactorSpec::three_level("X", 0.23, 0.06), FactorSpec::three_level("Y", 0.45, 0.15),
            FactorSpec::three_level("Z", 0.38, 0.06)};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST(Factor, TwoLevelCoding) {
    const auto a = FactorSpec::two_level("A", 0.3, 0.75);
    EXPECT_DOUBLE_EQ(decode(a, -1.0), 0.3);
    EXPECT_DOUBLE_EQ(decode(a, 1.0), 0.75);
    EXPECT_DOUBLE_EQ(decode(a, 0.0), 0.525);
    EXPECT_NEAR(encode(a, decode(a, 0.37)), 0.37, 1e-14);
}

TEST(Factor, ThreeLevelCoding) {
    const auto y = FactorSpec::three_level("Y", 0.45, 0.15);
    EXPECT_DOUBLE_EQ(y.low, 0.3);
    EXPECT_DOUBLE_EQ(y.high, 0.6);
    EXPECT_NEAR(encode(y, 0.544), 0.62667, 1e-5);
}

TEST(Factor, RejectsBadRanges) {
    EXPECT_THROW(FactorSpec::two_level("A", 1.0, 1.0), Error);
    EXPECT_THROW(FactorSpec::three_level("A", 1.0, 0.0), Error);
}

TEST(PlackettBurman, BalancedAndOrthogonalForEverySize) {
    for (std::size_t k = 1; k <= 11; ++k) {
        const auto d = plackett_burman(screening_factors(k));
        ASSERT_EQ(d.run_count(), 12u);
        EXPECT_EQ(d.dummy.front().size(), 11 - k);
        for (std::size_t i = 0; i < 11; ++i) {
            auto col = [&](std::size_t c, std::size_t r) { return c < k ? d.runs[r][c] : d.dummy[r][c - k]; };
            double sum = 0.0;
            for (std::size_t r = 0; r < 12; ++r) sum += col(i, r);
            EXPECT_EQ(sum, 0.0) << "k=" << k << " column " << i;
            for (std::size_t j = i + 1; j < 11; ++j) {
                double dot = 0.0;
                for (std::size_t r = 0; r < 12; ++r) dot += col(i, r) * col(j, r);
                EXPECT_EQ(dot, 0.0) << "k=" << k << " columns " << i << "," << j;
            }
        }
    }
}

TEST(PlackettBurman, MatchesPublishedLayout) {
    const auto d = plackett_burman(screening_factors(7));
    const std::vector<std::vector<double>> first_rows{{1, 1, -1, 1, 1, 1, -1}, {-1, 1, 1, -1, 1, 1, 1},
                                                      {1, -1, 1, 1, -1, 1, 1}};
    for (std::size_t r = 0; r < first_rows.size(); ++r) EXPECT_EQ(d.runs[r], first_rows[r]);
    EXPECT_EQ(d.runs[11], std::vector<double>(7, -1.0));
    EXPECT_DOUBLE_EQ(d.decoded_run(11)[0], 0.3);
    EXPECT_DOUBLE_EQ(d.decoded_run(0)[0], 0.75);
}

TEST(PlackettBurman, RejectsTooManyFactors) {
    try {
        plackett_burman(screening_factors(12));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UnsupportedSize);
    }
    EXPECT_THROW(plackett_burman({}), Error);
}

TEST(Screening, ReproducesPublishedEffects) {
    const auto r = screening_anova(plackett_burman(screening_factors(7)), kScreeningRuns);
    ASSERT_EQ(r.factors.size(), 7u);
    const std::vector<double> ss{8.96, 2.03, 70.62, 1.30, 118.13, 3.17, 726.19};
    const std::vector<double> f{7.04, 1.59, 55.46, 1.02, 92.78, 2.49, 570.37};
    for (std::size_t i = 0; i < 7; ++i) {
        EXPECT_NEAR(r.factors[i].sum_of_squares, ss[i], 0.006) << r.factors[i].name;
        EXPECT_NEAR(r.factors[i].f, f[i], 0.006) << r.factors[i].name;
    }
    EXPECT_NEAR(r.model_ss, 930.39, 0.005);
    EXPECT_EQ(r.model_df, 7);
    EXPECT_NEAR(r.model_f, 104.39, 0.005);
    EXPECT_NEAR(r.model_p, 0.0002, 0.00005);
    EXPECT_EQ(r.residual_df, 4);
    EXPECT_NEAR(r.factors[0].p, 0.0568, 5e-5);
    EXPECT_NEAR(r.factors[2].p, 0.0017, 5e-5);
    EXPECT_NEAR(r.factors[4].p, 0.0006, 5e-5);
    EXPECT_LT(r.factors[6].p, 1e-4);
    EXPECT_NEAR(r.factors[6].effect, 15.558333, 1e-5);

    const std::vector<bool> high{false, false, true, false, true, false, true};
    for (std::size_t i = 0; i < 7; ++i) {
        EXPECT_EQ(r.factors[i].highly_significant, high[i]) << r.factors[i].name;
        EXPECT_EQ(r.factors[i].significant, high[i]) << r.factors[i].name;
    }
}

TEST(Screening, LinearResponseGivesTwiceTheSlope) {
    const auto d = plackett_burman(screening_factors(5));
    const std::vector<double> a{1.5, -0.25, 0.0, 3.0, 0.75};
    std::vector<double> y;
    for (const auto& run : d.runs) {
        double v = 10.0;
        for (std::size_t i = 0; i < a.size(); ++i) v += a[i] * run[i];
        y.push_back(v);
    }
    const auto r = screening_anova(d, y);
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(r.factors[i].effect, 2.0 * a[i], 1e-12);
    EXPECT_NEAR(r.residual_ss, 0.0, 1e-20);
    EXPECT_TRUE(std::isinf(r.factors[0].f));
    EXPECT_EQ(r.factors[0].p, 0.0);
    EXPECT_TRUE(std::isnan(r.factors[2].f));
    EXPECT_EQ(r.factors[2].p, 1.0);
    EXPECT_FALSE(r.factors[2].significant);
}

TEST(Screening, ConstantResponseHasNoEffects) {
    const auto r = screening_anova(plackett_burman(screening_factors(7)), std::vector<double>(12, 40.0));
    for (const auto& f : r.factors) {
        EXPECT_EQ(f.effect, 0.0);
        EXPECT_FALSE(f.significant);
    }
    EXPECT_EQ(r.total_ss, 0.0);
}

TEST(Screening, SaturatedDesignCannotBeTested) {
    try {
        screening_anova(plackett_burman(screening_factors(11)), kScreeningRuns);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::CannotTest);
    }
}

TEST(Screening, RejectsWrongResponseCount) {
    EXPECT_THROW(screening_anova(plackett_burman(screening_factors(7)), std::vector<double>(11, 1.0)), Error);
}

TEST(BoxBehnken, SeventeenRunsInStandardOrder) {
    const auto d = box_behnken(bbd_factors(), 5);
    ASSERT_EQ(d.run_count(), 17u);
    const std::vector<std::vector<double>> expect{
        {-1, -1, 0}, {1, -1, 0}, {-1, 1, 0}, {1, 1, 0}, {-1, 0, -1}, {1, 0, -1}, {-1, 0, 1}, {1, 0, 1},
        {0, -1, -1}, {0, 1, -1}, {0, -1, 1}, {0, 1, 1}, {0, 0, 0},   {0, 0, 0}, {0, 0, 0},  {0, 0, 0}, {0, 0, 0}};
    EXPECT_EQ(d.runs, expect);
    const auto phys = d.decoded_run(0);
    EXPECT_NEAR(phys[0], 0.17, 1e-12);
    EXPECT_NEAR(phys[1], 0.30, 1e-12);
    EXPECT_NEAR(phys[2], 0.38, 1e-12);
}

TEST(BoxBehnken, OnlyThreeFactors) {
    try {
        box_behnken(screening_factors(4), 5);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UnsupportedSize);
    }
    EXPECT_THROW(box_behnken(bbd_factors(), 0), Error);
}

TEST(Shuffle, SeededPermutation) {
    const auto d = box_behnken(bbd_factors(), 5);
    const auto a = shuffle(d, 7);
    const auto b = shuffle(d, 7);
    EXPECT_EQ(a.runs, b.runs);
    EXPECT_NE(a.runs, d.runs);
    auto sorted = [](std::vector<std::vector<double>> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    EXPECT_EQ(sorted(a.runs), sorted(d.runs));

    const auto pb = plackett_burman(screening_factors(7));
    const auto s = shuffle(pb, 3);
    for (std::size_t r = 0; r < 12; ++r) {
        std::size_t src = 0;
        while (pb.runs[src] != s.runs[r]) ++src;
        EXPECT_EQ(pb.dummy[src], s.dummy[r]);
    }
}

TEST(SteepestPath, ReproducesPublishedPath) {
    const std::vector<FactorSpec> f{FactorSpec::two_level("X", 0.05, 0.35), FactorSpec::two_level("Y", 0.15, 0.75),
                                    FactorSpec::two_level("Z", 0.2, 0.5)};
    const auto path = steepest_path(f, {0.11, 0.75, 0.26}, {0.06, -0.15, 0.06}, 5);
    ASSERT_EQ(path.size(), 5u);
    const std::vector<std::vector<double>> expect{
        {0.11, 0.75, 0.26}, {0.17, 0.60, 0.32}, {0.23, 0.45, 0.38}, {0.29, 0.30, 0.44}, {0.35, 0.15, 0.50}};
    for (std::size_t j = 0; j < 5; ++j) {
        EXPECT_FALSE(path[j].clipped) << j;
        for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(path[j].values[i], expect[j][i], 1e-12);
    }
}

TEST(SteepestPath, ClipsAtBounds) {
    const std::vector<FactorSpec> f{FactorSpec::two_level("X", 0.0, 1.0)};
    const auto path = steepest_path(f, {0.5}, {0.3}, 3);
    EXPECT_FALSE(path[1].clipped);
    EXPECT_TRUE(path[2].clipped);
    EXPECT_DOUBLE_EQ(path[2].values[0], 1.0);
    EXPECT_THROW(steepest_path(f, {1.5}, {0.1}, 2), Error);
    EXPECT_THROW(steepest_path(f, {0.5}, {0.1}, 0), Error);
}

TEST(SteepestPath, RelativeErrorToTarget) {
    EXPECT_NEAR(relative_error(34.89, 45.27), 0.2293, 1e-4);
    EXPECT_NEAR(relative_error(45.55, 45.27), 0.0062, 1e-4);
    EXPECT_THROW(relative_error(1.0, 0.0), Error);
}

TEST(DesignCsv, CodedAndDecoded) {
    const auto dir = std::filesystem::temp_directory_path() / "demcal_test_doe";
    std::filesystem::remove_all(dir);
    const auto d = box_behnken(bbd_factors(), 1);
    write_coded_csv(dir / "coded.csv", d);
    write_decoded_csv(dir / "decoded.csv", d);
    const auto coded = slurp(dir / "coded.csv");
    const auto decoded = slurp(dir / "decoded.csv");
    EXPECT_EQ(coded.substr(0, coded.find('\n')), "run,X,Y,Z");
    EXPECT_EQ(std::count(coded.begin(), coded.end(), '\n'), 14);
    EXPECT_NE(coded.find("\n1,-1,-1,0\n"), std::string::npos);
    EXPECT_NE(decoded.find("\n1,0.17,0.3,0.38\n"), std::string::npos);
    std::filesystem::remove_all(dir);
}
