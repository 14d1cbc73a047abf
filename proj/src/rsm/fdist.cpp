#include "demcal/rsm/fdist.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <cmath>

#include "demcal/error.hpp"

namespace demcal::rsm {

double f_cdf(double f, double df1, double df2) {
    detail::require(std::isfinite(df1) && std::isfinite(df2) && df1 >= 1.0 && df2 >= 1.0,
                    "F distribution needs df1, df2 >= 1");
    detail::require(!std::isnan(f) && f >= 0.0, "F statistic must be >= 0");
    if (std::isinf(f)) return 0.0;
    // P(F > f) = I_x(df2/2, df1/2) with x = df2 / (df2 + df1 f)
    const double x = df2 / (df2 + df1 * f);
    return boost::math::ibeta(0.5 * df2, 0.5 * df1, x);
}

}  // namespace demcal::rsm
