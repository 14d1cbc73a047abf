#ifndef DEMCAL_RSM_POLY_HPP
#define DEMCAL_RSM_POLY_HPP

#include <vector>

namespace demcal::rsm {

struct PolyFit {
    std::vector<double> coefficients;  // ascending degree
    double r_squared = 0.0;
    int degree = 0;

    double operator()(double x) const;
};

/// Least-squares polynomial of degree 1 or 2.
PolyFit fit_poly(const std::vector<double>& x, const std::vector<double>& y, int degree);

/// The root of c2 x^2 + c1 x + c0 = y_target inside [lo, hi].
double invert_quadratic(double c2, double c1, double c0, double y_target, double lo, double hi);

}  // namespace demcal::rsm

#endif  // DEMCAL_RSM_POLY_HPP
