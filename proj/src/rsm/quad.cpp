#include "demcal/rsm/quad.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>

#include "demcal/error.hpp"
#include "demcal/rsm/fdist.hpp"

namespace demcal::rsm {

using detail::require;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct LeastSquares {
    Eigen::MatrixXd x;
    Eigen::VectorXd y;
    Eigen::VectorXd beta;
    Eigen::VectorXd fitted;
    double ss_res = 0.0;
};

Eigen::MatrixXd basis_matrix(const doe::DesignMatrix& design, const std::array<bool, kQuadTerms>& active) {
    std::size_t p = 0;
    for (bool a : active) p += a ? 1 : 0;
    Eigen::MatrixXd x(static_cast<Eigen::Index>(design.runs.size()), static_cast<Eigen::Index>(p));
    for (std::size_t r = 0; r < design.runs.size(); ++r) {
        const auto& run = design.runs[r];
        require(run.size() == 3, "quadratic response surface needs three coded factors per run");
        const auto b = quad_basis({run[0], run[1], run[2]});
        Eigen::Index c = 0;
        for (std::size_t t = 0; t < kQuadTerms; ++t)
            if (active[t]) x(static_cast<Eigen::Index>(r), c++) = b[t];
    }
    return x;
}

LeastSquares solve(const doe::DesignMatrix& design, const std::vector<double>& responses,
                   const std::array<bool, kQuadTerms>& active) {
    require(responses.size() == design.runs.size(), "one response per run required");
    LeastSquares ls;
    ls.x = basis_matrix(design, active);
    ls.y = Eigen::Map<const Eigen::VectorXd>(responses.data(), static_cast<Eigen::Index>(responses.size()));
    for (double v : responses) require(std::isfinite(v), "non-finite response");
    const auto p = ls.x.cols();
    if (ls.x.rows() < p) {
        std::ostringstream os;
        os << ls.x.rows() << " runs cannot determine " << p << " quadratic terms";
        detail::fail(ErrorCode::DegenerateDesign, os.str());
    }
    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(ls.x);
    if (qr.rank() < p) detail::fail(ErrorCode::DegenerateDesign, "design does not span the quadratic basis");
    ls.beta = qr.solve(ls.y);
    ls.fitted = ls.x * ls.beta;
    ls.ss_res = (ls.y - ls.fitted).squaredNorm();
    return ls;
}

double corrected_total(const std::vector<double>& y) {
    double mean = 0.0;
    for (double v : y) mean += v;
    mean /= static_cast<double>(y.size());
    double ss = 0.0;
    for (double v : y) ss += (v - mean) * (v - mean);
    return ss;
}

// Residual scatter this small relative to the data is an exact fit; F is then undefined.
bool exact_fit(double ss_res, double ss_tot) { return ss_res <= 1e-20 * std::max(ss_tot, 1e-300); }

void finish_row(AnovaRow& row, double ms_error, int df_error, bool error_defined) {
    row.ms = row.df > 0 ? row.ss / row.df : kNaN;
    if (error_defined && row.df > 0 && df_error > 0 && ms_error > 0.0) {
        row.f = row.ms / ms_error;
        row.p = f_cdf(row.f, row.df, df_error);
    }
}

// Minimises |q(s) - target| for s in [lo, hi] where q is quadratic along one
// coordinate; among exact roots the one closest to `near` wins.
double best_on_line(const QuadModel& m, Coded x, std::size_t d, double target, double lo, double hi) {
    const double near = x[d];
    auto at = [&](double s) {
        x[d] = s;
        return m(x);
    };
    const double f0 = at(0.0), fp = at(1.0), fm = at(-1.0);
    const double a = 0.5 * (fp + fm) - f0;
    const double b = 0.5 * (fp - fm);
    const double c = f0 - target;
    std::vector<double> pts{lo, hi};
    if (a != 0.0) {
        pts.push_back(-b / (2.0 * a));
        const double disc = b * b - 4.0 * a * c;
        if (disc >= 0.0) {
            const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
            pts.push_back(q / a);
            if (q != 0.0) pts.push_back(c / q);
        }
    } else if (b != 0.0) {
        pts.push_back(-c / b);
    }
    double best = near, best_r = std::abs(at(near) - target);
    for (double s : pts) {
        if (!(s >= lo && s <= hi)) continue;
        const double r = std::abs(at(s) - target);
        if (r < best_r - 1e-15 || (std::abs(r - best_r) <= 1e-15 && std::abs(s - near) < std::abs(best - near))) {
            best = s;
            best_r = r;
        }
    }
    return best;
}

Candidate make_candidate(const QuadModel& m, const Coded& x, double target) {
    Candidate c;
    c.coded = x;
    c.physical = m.decode(x);
    c.predicted = m(x);
    c.residual = std::abs(c.predicted - target);
    return c;
}

}  // namespace

std::array<double, kQuadTerms> quad_basis(const Coded& x) {
    const auto [a, b, c] = x;
    return {1.0, a, b, c, a * b, a * c, b * c, a * a, b * b, c * c};
}

double QuadModel::operator()(const Coded& x) const {
    const auto b = quad_basis(x);
    double y = 0.0;
    for (std::size_t t = 0; t < kQuadTerms; ++t)
        if (active[t]) y += coefficients[t] * b[t];
    return y;
}

Coded QuadModel::decode(const Coded& x) const {
    if (factors.size() != 3) return x;
    return {doe::decode(factors[0], x[0]), doe::decode(factors[1], x[1]), doe::decode(factors[2], x[2])};
}

std::size_t QuadModel::parameter_count() const {
    return static_cast<std::size_t>(std::count(active.begin(), active.end(), true));
}

Coded gradient(const QuadModel& m, const Coded& x) {
    std::array<double, kQuadTerms> k{};
    for (std::size_t t = 0; t < kQuadTerms; ++t) k[t] = m.active[t] ? m.coefficients[t] : 0.0;
    const auto [a, b, c] = x;
    return {k[1] + k[4] * b + k[5] * c + 2.0 * k[7] * a, k[2] + k[4] * a + k[6] * c + 2.0 * k[8] * b,
            k[3] + k[5] * a + k[6] * b + 2.0 * k[9] * c};
}

QuadModel fit_quad_rsm(const doe::DesignMatrix& design, const std::vector<double>& responses,
                       const std::array<bool, kQuadTerms>& active) {
    require(active[0], "the intercept must stay in the model");
    const LeastSquares ls = solve(design, responses, active);
    QuadModel m;
    m.active = active;
    m.factors = design.factors;
    Eigen::Index c = 0;
    for (std::size_t t = 0; t < kQuadTerms; ++t)
        if (active[t]) m.coefficients[t] = ls.beta(c++);
    return m;
}

const AnovaRow& AnovaTable::term(const std::string& name) const {
    for (const auto& r : terms)
        if (r.source == name) return r;
    detail::fail(ErrorCode::InvalidInput, "no ANOVA row for term " + name);
}

AnovaTable anova(const QuadModel& model, const doe::DesignMatrix& design, const std::vector<double>& responses) {
    const LeastSquares full = solve(design, responses, model.active);
    const auto n = static_cast<int>(responses.size());
    const auto p = static_cast<int>(model.parameter_count());
    const double ss_tot = corrected_total(responses);

    AnovaTable t;
    t.total = {"Cor Total", ss_tot, n - 1};
    t.residual = {"Residual", full.ss_res, n - p};
    t.model = {"Model", std::max(0.0, ss_tot - full.ss_res), p - 1};
    const bool defined = !exact_fit(full.ss_res, ss_tot) && t.residual.df > 0;
    const double ms_res = t.residual.df > 0 ? full.ss_res / t.residual.df : kNaN;

    for (std::size_t k = 1; k < kQuadTerms; ++k) {
        if (!model.active[k]) continue;
        auto reduced = model.active;
        reduced[k] = false;
        const LeastSquares without = solve(design, responses, reduced);
        AnovaRow row{kTermNames[k], std::max(0.0, without.ss_res - full.ss_res), 1};
        finish_row(row, ms_res, t.residual.df, defined);
        t.terms.push_back(row);
    }
    finish_row(t.model, ms_res, t.residual.df, defined);
    t.residual.ms = ms_res;
    t.total.ms = kNaN;

    // replicate groups share identical coded settings
    std::map<std::vector<double>, std::vector<double>> groups;
    for (std::size_t r = 0; r < design.runs.size(); ++r) groups[design.runs[r]].push_back(responses[r]);
    double ss_pe = 0.0;
    int df_pe = 0;
    for (const auto& [key, ys] : groups) {
        if (ys.size() < 2) continue;
        ss_pe += corrected_total(ys);
        df_pe += static_cast<int>(ys.size()) - 1;
    }
    if (df_pe > 0) {
        t.has_lack_of_fit = true;
        t.pure_error = {"Pure Error", ss_pe, df_pe};
        t.pure_error.ms = ss_pe / df_pe;
        t.lack_of_fit = {"Lack of Fit", std::max(0.0, full.ss_res - ss_pe), t.residual.df - df_pe};
        finish_row(t.lack_of_fit, t.pure_error.ms, df_pe, ss_pe > 0.0);
    }
    return t;
}

double press(const QuadModel& model, const doe::DesignMatrix& design, const std::vector<double>& responses) {
    const LeastSquares ls = solve(design, responses, model.active);
    // h_ii = || row_i(Q1) ||^2 for the thin Q of X
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(ls.x);
    const Eigen::MatrixXd q =
        qr.householderQ() * Eigen::MatrixXd::Identity(ls.x.rows(), ls.x.cols());
    double out = 0.0;
    for (Eigen::Index i = 0; i < ls.x.rows(); ++i) {
        const double h = q.row(i).squaredNorm();
        if (1.0 - h < 1e-10) {
            std::ostringstream os;
            os << "run " << i + 1 << " has leverage 1; its leave-one-out prediction is undefined";
            detail::fail(ErrorCode::PressUndefined, os.str());
        }
        const double e = (ls.y(i) - ls.fitted(i)) / (1.0 - h);
        out += e * e;
    }
    return out;
}

FitMetrics metrics(const QuadModel& model, const doe::DesignMatrix& design, const std::vector<double>& responses) {
    const LeastSquares ls = solve(design, responses, model.active);
    const double n = static_cast<double>(responses.size());
    const double p = static_cast<double>(model.parameter_count());
    const double ss_tot = corrected_total(responses);
    FitMetrics m;
    const bool exact = exact_fit(ls.ss_res, ss_tot);
    const double ss_res = exact ? 0.0 : ls.ss_res;
    m.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    m.r_squared_adjusted = n > p ? 1.0 - (1.0 - m.r_squared) * (n - 1.0) / (n - p) : kNaN;
    m.press = press(model, design, responses);
    m.r_squared_predicted = ss_tot > 0.0 ? 1.0 - m.press / ss_tot : kNaN;
    const double ms_res = n > p ? ss_res / (n - p) : kNaN;
    m.cv_percent = 100.0 * std::sqrt(ms_res) / std::abs(ls.y.mean());
    const double spread = ls.fitted.maxCoeff() - ls.fitted.minCoeff();
    m.adequate_precision = spread / std::sqrt(p * ms_res / n);
    return m;
}

QuadModel reduced_model(const QuadModel& full, const AnovaTable& table, const doe::DesignMatrix& design,
                        const std::vector<double>& responses, double alpha) {
    if (!(table.residual.ms > 0.0)) return full;
    std::array<bool, kQuadTerms> keep{};
    keep[0] = true;
    for (const auto& row : table.terms) {
        for (std::size_t k = 1; k < kQuadTerms; ++k)
            if (row.source == kTermNames[k]) keep[k] = row.p < alpha;
    }
    return fit_quad_rsm(design, responses, keep);
}

OptimizeResult optimize_to_target(const QuadModel& model, double target, const OptimizeOptions& o) {
    require(o.grid >= 2, "optimisation grid needs at least 2 points per axis");
    for (std::size_t d = 0; d < 3; ++d) require(o.lo[d] < o.hi[d], "optimisation bounds need lo < hi");
    require(o.tolerance > 0.0 && std::isfinite(target), "tolerance must be > 0 and target finite");
    const int g = o.grid;
    auto coord = [&](std::size_t d, int i) { return o.lo[d] + (o.hi[d] - o.lo[d]) * i / (g - 1); };
    auto idx = [g](int i, int j, int k) { return (static_cast<std::size_t>(i) * g + j) * g + k; };

    std::vector<double> r(static_cast<std::size_t>(g) * g * g);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j)
            for (int k = 0; k < g; ++k) r[idx(i, j, k)] = std::abs(model({coord(0, i), coord(1, j), coord(2, k)}) - target);

    std::vector<Candidate> found;
    Candidate best;
    best.residual = std::numeric_limits<double>::infinity();
    const double spacing = std::min({(o.hi[0] - o.lo[0]), (o.hi[1] - o.lo[1]), (o.hi[2] - o.lo[2])}) / (g - 1);
    for (int i = 0; i < g; ++i) {
        for (int j = 0; j < g; ++j) {
            for (int k = 0; k < g; ++k) {
                const double v = r[idx(i, j, k)];
                bool local_min = true;
                for (int di = -1; di <= 1 && local_min; ++di)
                    for (int dj = -1; dj <= 1 && local_min; ++dj)
                        for (int dk = -1; dk <= 1; ++dk) {
                            const int a = i + di, b = j + dj, c = k + dk;
                            if (a < 0 || b < 0 || c < 0 || a >= g || b >= g || c >= g) continue;
                            if (r[idx(a, b, c)] < v) {
                                local_min = false;
                                break;
                            }
                        }
                if (!local_min) continue;
                Coded x{coord(0, i), coord(1, j), coord(2, k)};
                for (int sweep = 0; sweep < 50; ++sweep) {
                    if (std::abs(model(x) - target) < 1e-13) break;
                    for (std::size_t d = 0; d < 3; ++d) x[d] = best_on_line(model, x, d, target, o.lo[d], o.hi[d]);
                }
                const Candidate c = make_candidate(model, x, target);
                if (c.residual < best.residual) best = c;
                if (c.residual >= o.tolerance) continue;
                const bool duplicate = std::any_of(found.begin(), found.end(), [&](const Candidate& f) {
                    const double dx = f.coded[0] - x[0], dy = f.coded[1] - x[1], dz = f.coded[2] - x[2];
                    return dx * dx + dy * dy + dz * dz < 0.25 * spacing * spacing;
                });
                if (!duplicate) found.push_back(c);
            }
        }
    }
    OptimizeResult out;
    out.converged = !found.empty();
    if (out.converged) {
        std::stable_sort(found.begin(), found.end(),
                         [](const Candidate& a, const Candidate& b) { return a.residual < b.residual; });
        out.candidates = std::move(found);
    } else {
        out.candidates.push_back(best);
    }
    return out;
}

Candidate flattest_on_slice(const QuadModel& model, double target, std::size_t hold, const OptimizeOptions& o) {
    require(hold < 3, "held factor index must be 0, 1 or 2");
    require(o.lo[hold] <= 0.0 && o.hi[hold] >= 0.0, "held factor bounds must contain coded 0");
    const std::size_t u = hold == 0 ? 1 : 0;
    const std::size_t v = hold == 2 ? 1 : 2;
    auto steepness = [&](const Coded& x) {
        const Coded gr = gradient(model, x);
        return std::sqrt(gr[0] * gr[0] + gr[1] * gr[1] + gr[2] * gr[2]);
    };
    // walks the level curve along `along`, solving for `solve` at each station
    struct Best {
        Coded x{};
        double steep = std::numeric_limits<double>::infinity();
        std::size_t along = 0;
    } best;
    auto station = [&](std::size_t along, std::size_t other, double s, double near) -> std::optional<Coded> {
        Coded x{};
        x[hold] = 0.0;
        x[along] = s;
        x[other] = near;
        x[other] = best_on_line(model, x, other, target, o.lo[other], o.hi[other]);
        if (std::abs(model(x) - target) > 1e-9) return std::nullopt;
        return x;
    };
    for (auto [along, other] : {std::pair{u, v}, std::pair{v, u}}) {
        for (int i = 0; i < o.grid; ++i) {
            const double s = o.lo[along] + (o.hi[along] - o.lo[along]) * i / (o.grid - 1);
            // both roots of the line, seeded from each end
            for (double near : {o.lo[other], o.hi[other]}) {
                const auto x = station(along, other, s, near);
                if (!x) continue;
                const double st = steepness(*x);
                if (st < best.steep) best = {*x, st, along};
            }
        }
    }
    if (!std::isfinite(best.steep)) {
        std::ostringstream os;
        os << "the target " << target << " is not reached on the slice with factor " << hold << " at 0";
        detail::fail(ErrorCode::NoSolution, os.str());
    }
    // golden-section refinement along the walking coordinate
    const std::size_t along = best.along;
    const std::size_t other = along == u ? v : u;
    const double h = (o.hi[along] - o.lo[along]) / (o.grid - 1);
    double a = std::max(o.lo[along], best.x[along] - h), b = std::min(o.hi[along], best.x[along] + h);
    auto cost = [&](double s) {
        const auto x = station(along, other, s, best.x[other]);
        return x ? steepness(*x) : std::numeric_limits<double>::infinity();
    };
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - phi * (b - a), d = a + phi * (b - a);
    double fc = cost(c), fd = cost(d);
    for (int it = 0; it < 100 && b - a > 1e-12; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = cost(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = cost(d);
        }
    }
    const auto refined = station(along, other, 0.5 * (a + b), best.x[other]);
    const Coded x = refined && steepness(*refined) <= best.steep ? *refined : best.x;
    return make_candidate(model, x, target);
}

}  // namespace demcal::rsm
