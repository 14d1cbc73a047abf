#include "demcal/pipeline/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "demcal/error.hpp"

namespace demcal::pipeline {

namespace {

constexpr double kWidth = 640, kHeight = 440;
constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 60;

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

// Round tick spacing of 1, 2 or 5 times a power of ten.
double tick_step(double span) {
    const double raw = span / 5.0;
    const double p = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 5.0})
        if (m * p >= raw) return m * p;
    return 10.0 * p;
}

struct Axis {
    double lo, hi, step;

    static Axis from(double lo, double hi) {
        if (!(hi > lo)) {
            const double pad = lo == 0.0 ? 1.0 : 0.1 * std::abs(lo);
            lo -= pad;
            hi += pad;
        }
        const double step = tick_step(hi - lo);
        return {std::floor(lo / step) * step, std::ceil(hi / step) * step, step};
    }
};

class Canvas {
public:
    Canvas(const PlotLabels& labels, Axis x, Axis y) : x_(x), y_(y) {
        os_ << R"(<svg xmlns="http://www.w3.org/2000/svg" width=")" << kWidth << R"(" height=")" << kHeight
            << R"(" viewBox="0 0 )" << kWidth << ' ' << kHeight << R"(" font-family="sans-serif" font-size="12">)" << '\n';
        os_ << R"(<rect width="100%" height="100%" fill="white"/>)" << '\n';
        os_ << R"(<text x=")" << kWidth / 2 << R"(" y="22" text-anchor="middle" font-size="15">)" << escape(labels.title)
            << "</text>\n";
        os_ << R"(<g stroke="#ddd">)" << '\n';
        for (double t = x.lo; t <= x.hi + 1e-9 * x.step; t += x.step)
            os_ << line(px(t), kTop, px(t), kHeight - kBottom) << '\n';
        for (double t = y.lo; t <= y.hi + 1e-9 * y.step; t += y.step)
            os_ << line(kLeft, py(t), kWidth - kRight, py(t)) << '\n';
        os_ << "</g>\n";
        os_ << R"(<rect x=")" << kLeft << R"(" y=")" << kTop << R"(" width=")" << kWidth - kLeft - kRight
            << R"(" height=")" << kHeight - kTop - kBottom << R"(" fill="none" stroke="black"/>)" << '\n';
        for (double t = x.lo; t <= x.hi + 1e-9 * x.step; t += x.step)
            os_ << R"(<text x=")" << px(t) << R"(" y=")" << kHeight - kBottom + 18 << R"(" text-anchor="middle">)"
                << label(t) << "</text>\n";
        for (double t = y.lo; t <= y.hi + 1e-9 * y.step; t += y.step)
            os_ << R"(<text x=")" << kLeft - 8 << R"(" y=")" << py(t) + 4 << R"(" text-anchor="end">)" << label(t)
                << "</text>\n";
        os_ << R"(<text x=")" << (kLeft + kWidth - kRight) / 2 << R"(" y=")" << kHeight - 16
            << R"(" text-anchor="middle">)" << escape(labels.x) << "</text>\n";
        os_ << R"x(<text transform="translate(18 )x" << (kTop + kHeight - kBottom) / 2
            << R"x() rotate(-90)" text-anchor="middle">)x" << escape(labels.y) << "</text>\n";
    }

    double px(double v) const { return kLeft + (v - x_.lo) / (x_.hi - x_.lo) * (kWidth - kLeft - kRight); }
    double py(double v) const { return kHeight - kBottom - (v - y_.lo) / (y_.hi - y_.lo) * (kHeight - kTop - kBottom); }

    void polyline(const std::vector<double>& x, const std::vector<double>& y, const char* colour) {
        os_ << R"(<polyline fill="none" stroke=")" << colour << R"(" stroke-width="2" points=")";
        for (std::size_t i = 0; i < x.size(); ++i) os_ << (i ? " " : "") << px(x[i]) << ',' << py(y[i]);
        os_ << "\"/>\n";
    }

    void markers(const std::vector<double>& x, const std::vector<double>& y, const char* colour, double r) {
        for (std::size_t i = 0; i < x.size(); ++i)
            os_ << R"(<circle cx=")" << px(x[i]) << R"(" cy=")" << py(y[i]) << R"(" r=")" << r << R"(" fill=")" << colour
                << "\"/>\n";
    }

    std::string finish() {
        os_ << "</svg>\n";
        return os_.str();
    }

private:
    static std::string line(double x1, double y1, double x2, double y2) {
        std::ostringstream s;
        s << R"(<line x1=")" << x1 << R"(" y1=")" << y1 << R"(" x2=")" << x2 << R"(" y2=")" << y2 << "\"/>";
        return s.str();
    }
    static std::string label(double v) {
        std::ostringstream s;
        s << (std::abs(v) < 1e-12 ? 0.0 : v);
        return s.str();
    }

    Axis x_, y_;
    std::ostringstream os_;
};

void check_data(const std::vector<double>& x, const std::vector<double>& y) {
    detail::require(!x.empty() && x.size() == y.size(), "plot needs equal-length, non-empty x and y");
    for (std::size_t i = 0; i < x.size(); ++i) detail::require(std::isfinite(x[i]) && std::isfinite(y[i]), "plot data must be finite");
}

}  // namespace

std::string scatter_svg(const PlotLabels& labels, const std::vector<double>& x, const std::vector<double>& y,
                        const std::function<double(double)>& curve, std::optional<std::pair<double, double>> highlight) {
    check_data(x, y);
    const auto [xlo, xhi] = std::minmax_element(x.begin(), x.end());
    std::vector<double> cx, cy;
    if (curve) {
        for (int i = 0; i <= 100; ++i) {
            cx.push_back(*xlo + (*xhi - *xlo) * i / 100.0);
            cy.push_back(curve(cx.back()));
        }
    }
    std::vector<double> all_y = y;
    all_y.insert(all_y.end(), cy.begin(), cy.end());
    double x0 = *xlo, x1 = *xhi;
    if (highlight) {
        all_y.push_back(highlight->second);
        x0 = std::min(x0, highlight->first);
        x1 = std::max(x1, highlight->first);
    }
    const auto [ylo, yhi] = std::minmax_element(all_y.begin(), all_y.end());
    Canvas c(labels, Axis::from(x0, x1), Axis::from(*ylo, *yhi));
    if (curve) c.polyline(cx, cy, "#1f77b4");
    c.markers(x, y, "#d62728", 4);
    if (highlight) c.markers({highlight->first}, {highlight->second}, "#2ca02c", 6);
    return c.finish();
}

std::string line_svg(const PlotLabels& labels, const std::vector<double>& x, const std::vector<double>& y) {
    check_data(x, y);
    const auto [xlo, xhi] = std::minmax_element(x.begin(), x.end());
    const auto [ylo, yhi] = std::minmax_element(y.begin(), y.end());
    Canvas c(labels, Axis::from(*xlo, *xhi), Axis::from(*ylo, *yhi));
    c.polyline(x, y, "#1f77b4");
    c.markers(x, y, "#1f77b4", 4);
    return c.finish();
}

}  // namespace demcal::pipeline
