#ifndef DEMCAL_RSM_FDIST_HPP
#define DEMCAL_RSM_FDIST_HPP

namespace demcal::rsm {

/// Upper-tail probability P(F > f) of the F(df1, df2) distribution.
double f_cdf(double f, double df1, double df2);

}  // namespace demcal::rsm

#endif  // DEMCAL_RSM_FDIST_HPP
