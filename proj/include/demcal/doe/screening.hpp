#ifndef DEMCAL_DOE_SCREENING_HPP
#define DEMCAL_DOE_SCREENING_HPP

#include <string>
#include <vector>

#include "demcal/doe/design.hpp"

namespace demcal::doe {

struct FactorEffect {
    std::string name;
    double effect = 0.0;  // mean(+1) - mean(-1)
    double sum_of_squares = 0.0;
    double f = 0.0;
    double p = 1.0;
    bool significant = false;
    bool highly_significant = false;
};

struct ScreeningResult {
    std::vector<FactorEffect> factors;
    double model_ss = 0.0;
    int model_df = 0;
    double model_f = 0.0;
    double model_p = 1.0;
    double residual_ss = 0.0;
    int residual_df = 0;
    double residual_ms = 0.0;
    double total_ss = 0.0;
};

/// Main-effect ANOVA of a two-level screening design. The residual pools
/// everything the assigned factors do not explain (the dummy columns).
ScreeningResult screening_anova(const DesignMatrix& design, const std::vector<double>& responses,
                                double threshold = 0.05, double high_threshold = 0.01);

}  // namespace demcal::doe

#endif  // DEMCAL_DOE_SCREENING_HPP
