#include "demcal/rsm/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "demcal/error.hpp"

namespace demcal::rsm {

namespace {

nlohmann::json number(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

nlohmann::json row_json(const AnovaRow& r) {
    return {{"source", r.source}, {"sum_of_squares", number(r.ss)}, {"df", r.df},
            {"mean_square", number(r.ms)}, {"f_value", number(r.f)}, {"p_value", number(r.p)}};
}

std::string cell(double v) {
    if (!std::isfinite(v)) return "";
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

}  // namespace

nlohmann::json to_json(const QuadModel& model) {
    nlohmann::json coeffs = nlohmann::json::object();
    for (std::size_t t = 0; t < kQuadTerms; ++t) coeffs[kTermNames[t]] = model.coefficients[t];
    nlohmann::json coding = nlohmann::json::array();
    for (const auto& f : model.factors)
        coding.push_back({{"name", f.name}, {"low", f.low}, {"high", f.high}, {"center", f.center}, {"step", f.step}});
    return {{"coefficients", coeffs}, {"active", model.active}, {"coding", coding}};
}

QuadModel quad_model_from_json(const nlohmann::json& j) {
    QuadModel m;
    try {
        for (std::size_t t = 0; t < kQuadTerms; ++t) m.coefficients[t] = j.at("coefficients").at(kTermNames[t]).get<double>();
        if (j.contains("active")) m.active = j.at("active").get<std::array<bool, kQuadTerms>>();
        if (j.contains("coding")) {
            for (const auto& c : j.at("coding")) {
                doe::FactorSpec f{c.at("name").get<std::string>(), c.at("low").get<double>(), c.at("high").get<double>(),
                                  c.at("center").get<double>(), c.at("step").get<double>()};
                f.validate();
                m.factors.push_back(f);
            }
        }
    } catch (const nlohmann::json::exception& e) {
        detail::fail(ErrorCode::InvalidInput, std::string("malformed quadratic model: ") + e.what());
    }
    detail::require(m.factors.empty() || m.factors.size() == 3, "a quadratic model codes exactly three factors");
    return m;
}

nlohmann::json to_json(const PolyFit& fit) {
    return {{"degree", fit.degree}, {"coefficients", fit.coefficients}, {"r_squared", fit.r_squared}};
}

nlohmann::json to_json(const AnovaTable& table) {
    nlohmann::json rows = nlohmann::json::array();
    rows.push_back(row_json(table.model));
    for (const auto& r : table.terms) rows.push_back(row_json(r));
    rows.push_back(row_json(table.residual));
    if (table.has_lack_of_fit) {
        rows.push_back(row_json(table.lack_of_fit));
        rows.push_back(row_json(table.pure_error));
    }
    rows.push_back(row_json(table.total));
    return rows;
}

nlohmann::json to_json(const FitMetrics& m) {
    return {{"r_squared", number(m.r_squared)},
            {"r_squared_adjusted", number(m.r_squared_adjusted)},
            {"r_squared_predicted", number(m.r_squared_predicted)},
            {"press", number(m.press)},
            {"cv_percent", number(m.cv_percent)},
            {"adequate_precision", number(m.adequate_precision)}};
}

void write_anova_csv(const std::filesystem::path& file, const AnovaTable& table) {
    if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
    std::ofstream out(file);
    detail::require(static_cast<bool>(out), "cannot write " + file.string());
    out << "source,sum_of_squares,df,mean_square,f_value,p_value\n";
    for (const auto& r : to_json(table)) {
        auto get = [&](const char* k) { return r[k].is_null() ? std::nan("") : r[k].get<double>(); };
        out << r["source"].get<std::string>() << ',' << cell(get("sum_of_squares")) << ',' << r["df"].get<int>() << ','
            << cell(get("mean_square")) << ',' << cell(get("f_value")) << ',' << cell(get("p_value")) << '\n';
    }
}

}  // namespace demcal::rsm
