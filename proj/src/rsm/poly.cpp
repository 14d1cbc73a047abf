#include "demcal/rsm/poly.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

#include "demcal/error.hpp"

namespace demcal::rsm {

using detail::require;

double PolyFit::operator()(double x) const {
    double y = 0.0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) y = y * x + *it;
    return y;
}

PolyFit fit_poly(const std::vector<double>& x, const std::vector<double>& y, int degree) {
    require(degree == 1 || degree == 2, "polynomial degree must be 1 or 2");
    require(x.size() == y.size(), "x and y lengths differ");
    const auto n = static_cast<Eigen::Index>(x.size());
    if (n <= degree) detail::fail(ErrorCode::DegenerateData, "need more points than the polynomial degree");
    Eigen::MatrixXd m(n, degree + 1);
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        require(std::isfinite(x[i]) && std::isfinite(y[i]), "non-finite data point");
        double p = 1.0;
        for (int d = 0; d <= degree; ++d, p *= x[i]) m(i, d) = p;
        v(i) = y[i];
    }
    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
    if (qr.rank() < degree + 1) detail::fail(ErrorCode::DegenerateData, "polynomial fit is rank deficient");
    const Eigen::VectorXd c = qr.solve(v);

    PolyFit out;
    out.degree = degree;
    out.coefficients.assign(c.data(), c.data() + c.size());
    const double ss_res = (v - m * c).squaredNorm();
    const double ss_tot = (v.array() - v.mean()).matrix().squaredNorm();
    out.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return out;
}

double invert_quadratic(double c2, double c1, double c0, double y_target, double lo, double hi) {
    require(lo <= hi, "inversion range needs lo <= hi");
    const double a = c2, b = c1, c = c0 - y_target;
    std::vector<double> roots;
    if (a == 0.0) {
        if (b == 0.0) detail::fail(ErrorCode::NoSolution, "constant polynomial has no root for the target");
        roots.push_back(-c / b);
    } else {
        const double disc = b * b - 4.0 * a * c;
        if (disc < 0.0) detail::fail(ErrorCode::NoSolution, "quadratic has no real root for the target");
        // cancellation-free pair of roots
        const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
        roots.push_back(q / a);
        if (q != 0.0) roots.push_back(c / q);
    }
    std::vector<double> inside;
    for (double r : roots)
        if (r >= lo && r <= hi) inside.push_back(r);
    if (inside.size() == 2 && inside[0] == inside[1]) inside.pop_back();
    if (inside.empty()) {
        std::ostringstream os;
        os << "no root in [" << lo << ", " << hi << "]; roots:";
        for (double r : roots) os << ' ' << r;
        detail::fail(ErrorCode::NoSolution, os.str());
    }
    if (inside.size() > 1) {
        std::ostringstream os;
        os << "two roots in [" << lo << ", " << hi << "]: " << inside[0] << ' ' << inside[1];
        detail::fail(ErrorCode::AmbiguousSolution, os.str());
    }
    return inside.front();
}

}  // namespace demcal::rsm
