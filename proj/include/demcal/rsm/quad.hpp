#ifndef DEMCAL_RSM_QUAD_HPP
#define DEMCAL_RSM_QUAD_HPP

#include <array>
#include <limits>
#include <string>
#include <vector>

#include "demcal/doe/design.hpp"

namespace demcal::rsm {

inline constexpr std::size_t kQuadTerms = 10;
/// Term order of every coefficient array.
inline constexpr std::array<const char*, kQuadTerms> kTermNames{"1", "A", "B", "C", "AB", "AC", "BC", "A2", "B2", "C2"};

using Coded = std::array<double, 3>;

std::array<double, kQuadTerms> quad_basis(const Coded& x);

/// Full quadratic in three coded factors. Inactive terms are held at zero.
struct QuadModel {
    std::array<double, kQuadTerms> coefficients{};
    std::array<bool, kQuadTerms> active{true, true, true, true, true, true, true, true, true, true};
    std::vector<doe::FactorSpec> factors;  // coding reference, A B C order

    double operator()(const Coded& x) const;
    Coded decode(const Coded& x) const;
    std::size_t parameter_count() const;
};

/// Least squares over the active terms of the quadratic basis.
QuadModel fit_quad_rsm(const doe::DesignMatrix& design, const std::vector<double>& responses,
                       const std::array<bool, kQuadTerms>& active = QuadModel{}.active);

struct AnovaRow {
    std::string source;
    double ss = 0.0;
    int df = 0;
    double ms = std::numeric_limits<double>::quiet_NaN();
    double f = std::numeric_limits<double>::quiet_NaN();
    double p = std::numeric_limits<double>::quiet_NaN();
};

struct AnovaTable {
    AnovaRow model;
    std::vector<AnovaRow> terms;  // active non-intercept terms, basis order
    AnovaRow residual;
    AnovaRow lack_of_fit;
    AnovaRow pure_error;
    AnovaRow total;
    bool has_lack_of_fit = false;  // false when the design has no replicated points

    const AnovaRow& term(const std::string& name) const;
};

/// Term SS is the extra sum of squares lost when that term alone is dropped.
/// Residual splits into pure error (replicate scatter) and lack of fit.
AnovaTable anova(const QuadModel& model, const doe::DesignMatrix& design, const std::vector<double>& responses);

struct FitMetrics {
    double r_squared = 0.0;
    double r_squared_adjusted = 0.0;
    double r_squared_predicted = 0.0;
    double press = 0.0;
    double cv_percent = 0.0;
    double adequate_precision = 0.0;
};

/// Leave-one-out prediction error sum via hat-matrix diagonals.
double press(const QuadModel& model, const doe::DesignMatrix& design, const std::vector<double>& responses);

FitMetrics metrics(const QuadModel& model, const doe::DesignMatrix& design, const std::vector<double>& responses);

/// Refit keeping the intercept and every term with p < alpha in `table`.
QuadModel reduced_model(const QuadModel& full, const AnovaTable& table, const doe::DesignMatrix& design,
                        const std::vector<double>& responses, double alpha = 0.05);

struct Candidate {
    Coded coded{};
    Coded physical{};
    double predicted = 0.0;
    double residual = 0.0;  // |predicted - target|
};

struct OptimizeOptions {
    Coded lo{-1.0, -1.0, -1.0};
    Coded hi{1.0, 1.0, 1.0};
    int grid = 101;
    double tolerance = 1e-3;
};

struct OptimizeResult {
    std::vector<Candidate> candidates;  // residual ascending, then grid order
    bool converged = false;             // false: only the best effort is returned
};

/// Grid scan for local minima of |model - target|, each refined by coordinate descent.
OptimizeResult optimize_to_target(const QuadModel& model, double target, const OptimizeOptions& options = {});

/// Point of the target level set on the slice where factor `hold` sits at
/// coded 0 with the smallest gradient norm, i.e. the setting whose response is
/// least sensitive to small parameter errors.
Candidate flattest_on_slice(const QuadModel& model, double target, std::size_t hold, const OptimizeOptions& options = {});

/// Gradient with respect to the coded factors.
Coded gradient(const QuadModel& model, const Coded& x);

}  // namespace demcal::rsm

#endif  // DEMCAL_RSM_QUAD_HPP
