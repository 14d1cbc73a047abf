#include "demcal/doe/screening.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <tuple>

#include "demcal/error.hpp"
#include "demcal/rsm/fdist.hpp"

namespace demcal::doe {

using detail::require;

ScreeningResult screening_anova(const DesignMatrix& design, const std::vector<double>& responses, double threshold,
                                double high_threshold) {
    require(design.kind == DesignKind::PlackettBurman, "screening ANOVA needs a Plackett-Burman design");
    const std::size_t n = design.runs.size();
    const std::size_t k = design.factors.size();
    require(responses.size() == n, "one response per run required");
    for (double y : responses) require(std::isfinite(y), "non-finite response");
    const int df_res = static_cast<int>(n) - static_cast<int>(k) - 1;
    if (df_res <= 0) {
        std::ostringstream os;
        os << k << " factors in " << n << " runs leave no residual degrees of freedom; leave dummy columns free";
        detail::fail(ErrorCode::CannotTest, os.str());
    }

    double mean = 0.0;
    for (double y : responses) mean += y;
    mean /= static_cast<double>(n);

    ScreeningResult out;
    for (double y : responses) out.total_ss += (y - mean) * (y - mean);
    for (std::size_t i = 0; i < k; ++i) {
        double contrast = 0.0;
        for (std::size_t r = 0; r < n; ++r) contrast += design.runs[r][i] * responses[r];
        FactorEffect e;
        e.name = design.factors[i].name;
        e.effect = contrast / (0.5 * static_cast<double>(n));
        e.sum_of_squares = contrast * contrast / static_cast<double>(n);
        out.model_ss += e.sum_of_squares;
        out.factors.push_back(e);
    }
    out.model_df = static_cast<int>(k);
    out.residual_ss = std::max(0.0, out.total_ss - out.model_ss);
    out.residual_df = df_res;
    out.residual_ms = out.residual_ss / df_res;

    auto test = [&](double ms, double df) -> std::pair<double, double> {
        if (out.residual_ms > 0.0) {
            const double f = ms / out.residual_ms;
            return {f, rsm::f_cdf(f, df, df_res)};
        }
        // no residual scatter: any real effect is infinitely significant
        if (ms > 0.0) return {std::numeric_limits<double>::infinity(), 0.0};
        return {std::numeric_limits<double>::quiet_NaN(), 1.0};
    };
    for (auto& e : out.factors) {
        std::tie(e.f, e.p) = test(e.sum_of_squares, 1.0);
        e.significant = e.p < threshold;
        e.highly_significant = e.p < high_threshold;
    }
    std::tie(out.model_f, out.model_p) = test(out.model_ss / out.model_df, out.model_df);
    return out;
}

}  // namespace demcal::doe
