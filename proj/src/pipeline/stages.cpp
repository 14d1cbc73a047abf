#include "demcal/pipeline/stages.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "demcal/doe/design.hpp"
#include "demcal/doe/screening.hpp"
#include "demcal/rigs/bench.hpp"
#include "demcal/rsm/io.hpp"
#include "demcal/rsm/poly.hpp"
#include "demcal/rsm/quad.hpp"

namespace demcal::pipeline {

using nlohmann::json;

namespace {

double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

std::vector<double> means(const std::vector<std::vector<double>>& reps) {
    std::vector<double> out;
    for (const auto& r : reps) out.push_back(mean(r));
    return out;
}

std::vector<std::uint64_t> row_seeds(std::uint64_t seed, std::size_t rows, int replicates) {
    std::vector<std::uint64_t> out;
    for (std::size_t i = 0; i < rows; ++i)
        for (int j = 0; j < replicates; ++j) out.push_back(seed + 1000 * i + static_cast<std::uint64_t>(j));
    return out;
}

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::vector<std::size_t> ascent_indices(const CalibrationPlan& plan) {
    std::vector<std::size_t> out;
    for (const auto& k : plan.ascent.factors) out.push_back(plan.factor_index(k));
    return out;
}

json curve_json(const Curve& c, const rsm::PolyFit& fit, double measured) {
    return {{"x", c.x}, {"y", c.y}, {"fit", rsm::to_json(fit)}, {"measured", measured}};
}

// Fits a quadratic to the sweep and inverts it at the bench measurement
// inside the swept range.
double invert_sweep(const Curve& c, double measured, json& out) {
    const auto fit = rsm::fit_poly(c.x, c.y, 2);
    out = curve_json(c, fit, measured);
    const auto [lo, hi] = std::minmax_element(c.x.begin(), c.x.end());
    const double v = rsm::invert_quadratic(fit.coefficients[2], fit.coefficients[1], fit.coefficients[0], measured, *lo, *hi);
    out["value"] = v;
    return v;
}

}  // namespace

std::vector<double> with_ascent_point(const CalibrationPlan& plan, std::vector<double> values,
                                      const std::vector<double>& point) {
    const auto idx = ascent_indices(plan);
    detail::require(point.size() == idx.size(), "one value per ascent factor required");
    for (std::size_t i = 0; i < idx.size(); ++i) values[idx[i]] = point[i];
    return values;
}

StageRecord run_screening_stage(const CalibrationPlan& plan, ResponseSource& source) {
    std::vector<doe::FactorSpec> specs;
    for (const auto& f : plan.factors) specs.push_back(doe::FactorSpec::two_level(f.key, f.low, f.high));
    const auto design = doe::plackett_burman(specs);

    StageRecord rec;
    rec.stage = "screening";
    std::vector<rigs::MaterialSet> rows;
    for (std::size_t r = 0; r < design.run_count(); ++r) {
        const auto v = design.decoded_run(r);
        rec.design.push_back(v);
        rows.push_back(materials_for(plan, v));
    }
    const auto reps = source.repose("screening", rows, plan.screening.replicates, plan.screening.seed);
    rec.responses = reps;
    rec.seeds = row_seeds(plan.screening.seed, rows.size(), plan.screening.replicates);

    const auto result =
        doe::screening_anova(design, means(reps), plan.screening.threshold, plan.screening.select_threshold);
    json effects = json::array();
    std::vector<std::string> selected;
    for (const auto& e : result.factors) {
        effects.push_back({{"factor", e.name},
                           {"effect", e.effect},
                           {"sum_of_squares", e.sum_of_squares},
                           {"f_value", number(e.f)},
                           {"p_value", e.p},
                           {"significant", e.significant},
                           {"highly_significant", e.highly_significant}});
        if (e.highly_significant) selected.push_back(e.name);
    }
    if (selected.empty()) {
        const auto top = std::max_element(result.factors.begin(), result.factors.end(), [](const auto& a, const auto& b) {
            return std::abs(a.effect) < std::abs(b.effect);
        });
        rec.warnings.push_back("no factor passed p < " + std::to_string(plan.screening.select_threshold) +
                               "; carrying forward the largest effect " + top->name);
        selected.push_back(top->name);
    }
    auto planned = plan.ascent.factors;
    auto chosen = selected;
    std::sort(planned.begin(), planned.end());
    std::sort(chosen.begin(), chosen.end());
    if (planned != chosen) {
        std::ostringstream os;
        os << "screening selected {";
        for (std::size_t i = 0; i < selected.size(); ++i) os << (i ? ", " : "") << selected[i];
        os << "} but the plan optimizes {";
        for (std::size_t i = 0; i < plan.ascent.factors.size(); ++i) os << (i ? ", " : "") << plan.ascent.factors[i];
        os << "}; the plan's factors are used";
        rec.warnings.push_back(os.str());
    }
    rec.derived = {{"effects", effects},
                   {"model", {{"sum_of_squares", result.model_ss}, {"df", result.model_df}, {"f_value", number(result.model_f)}, {"p_value", result.model_p}}},
                   {"residual", {{"sum_of_squares", result.residual_ss}, {"df", result.residual_df}, {"mean_square", result.residual_ms}}},
                   {"total_sum_of_squares", result.total_ss},
                   {"selected", selected}};
    return rec;
}

StageRecord run_bench_calibration_stage(const CalibrationPlan& plan, ResponseSource& source,
                                        const std::vector<double>& values) {
    StageRecord rec;
    rec.stage = "bench";
    const auto base = materials_for(plan, values);
    json curves = json::object();
    json found = json::object();
    auto fail_with = [&](const std::string& what) {
        rec.derived = {{"curves", curves}, {"values", found}};
        rec.warnings.push_back(what);
        rec.seal();
        throw StageError(what, rec);
    };

    for (const auto& f : plan.factors) {
        if (f.bench == BenchMethod::None) continue;
        json c;
        double v = 0.0;
        try {
            switch (f.bench) {
                case BenchMethod::Incline: {
                    const auto data = source.incline(plan.bench.incline_sweep, base, plan.bench.replicates, plan.bench.seed);
                    v = invert_sweep(data, plan.bench.bench_angle, c);
                    for (std::size_t i = 0; i < data.x.size(); ++i) rec.seeds.push_back(plan.bench.seed + i);
                    curves["incline"] = c;
                    break;
                }
                case BenchMethod::Drop: {
                    const auto data = source.drop(plan.bench.drop_sweep, base, plan.bench.replicates, plan.bench.seed);
                    v = invert_sweep(data, plan.bench.bench_rebound_mm, c);
                    for (std::size_t i = 0; i < data.x.size(); ++i) rec.seeds.push_back(plan.bench.seed + i);
                    curves["drop"] = c;
                    break;
                }
                case BenchMethod::Shear: {
                    if (plan.bench.shear_normal_kpa.empty()) {
                        v = plan.bench.shear_mu_s;
                        c = {{"value", v}, {"from", "plan"}};
                    } else {
                        const auto s = rigs::shear_analysis(plan.bench.shear_normal_kpa, plan.bench.shear_stress_kpa);
                        v = s.mu_s;
                        c = {{"normal_kpa", plan.bench.shear_normal_kpa}, {"shear_kpa", plan.bench.shear_stress_kpa},
                             {"slope", s.slope}, {"intercept_kpa", s.intercept}, {"phi_deg", s.phi}, {"value", v}};
                    }
                    curves["shear"] = c;
                    break;
                }
                case BenchMethod::None: break;
            }
        } catch (const StageError&) {
            throw;
        } catch (const Error& e) {
            if (!c.is_null()) curves[to_string(f.bench)] = c;
            fail_with("bench calibration of " + f.key + " (" + f.name + ") failed: " + e.what());
        }
        if (v < f.low || v > f.high) {
            std::ostringstream os;
            os << f.key << " = " << v << " lies outside its screening range [" << f.low << ", " << f.high << "]";
            rec.warnings.push_back(os.str());
        }
        found[f.key] = v;
        rec.design.push_back({{"factor", f.key}, {"method", to_string(f.bench)}});
    }
    for (const auto& [k, c] : curves.items())
        if (c.contains("y")) rec.responses.push_back(c["y"]);
    rec.derived = {{"curves", curves}, {"values", found}};
    return rec;
}

StageRecord run_ascent_stage(const CalibrationPlan& plan, ResponseSource& source, const std::vector<double>& values) {
    const auto& a = plan.ascent;
    std::vector<doe::FactorSpec> specs;
    for (const auto& k : a.factors) {
        const auto& f = plan.factor(k);
        specs.push_back(doe::FactorSpec::two_level(f.key, f.low, f.high));
    }
    const auto path = doe::steepest_path(specs, a.start, a.deltas, a.steps);

    StageRecord rec;
    rec.stage = "ascent";
    std::vector<rigs::MaterialSet> rows;
    for (const auto& p : path) {
        rec.design.push_back(p.values);
        rows.push_back(materials_for(plan, with_ascent_point(plan, values, p.values)));
        if (p.clipped) rec.warnings.push_back("ascent level " + std::to_string(rec.design.size()) + " was clipped to the factor range");
    }
    const auto reps = source.repose("ascent", rows, a.replicates, a.seed);
    rec.responses = reps;
    rec.seeds = row_seeds(a.seed, rows.size(), a.replicates);

    const auto y = means(reps);
    std::vector<double> err;
    for (double v : y) err.push_back(doe::relative_error(v, plan.target_angle));
    const auto best = static_cast<std::size_t>(std::min_element(err.begin(), err.end()) - err.begin());
    if (path.size() > 1 && (best == 0 || best + 1 == path.size()))
        rec.warnings.push_back("relative error is smallest at the end of the path; extend the path");
    std::vector<double> step;
    for (double d : a.deltas) step.push_back(std::abs(d));
    rec.derived = {{"factors", a.factors},
                   {"angles", y},
                   {"relative_errors", err},
                   {"best_level", best + 1},
                   {"center", path[best].values},
                   {"low", path[best == 0 ? 0 : best - 1].values},
                   {"high", path[std::min(best + 1, path.size() - 1)].values},
                   {"coding_step", step}};
    return rec;
}

StageRecord run_rsm_stage(const CalibrationPlan& plan, ResponseSource& source, const std::vector<double>& values,
                          const std::vector<double>& center) {
    const auto& a = plan.ascent;
    detail::require(center.size() == 3, "response surface centre needs three values");
    std::vector<doe::FactorSpec> specs;
    for (std::size_t i = 0; i < 3; ++i) specs.push_back(doe::FactorSpec::three_level(a.factors[i], center[i], std::abs(a.deltas[i])));
    const auto design = doe::box_behnken(specs, plan.rsm.centers);

    StageRecord rec;
    rec.stage = "rsm";
    std::vector<rigs::MaterialSet> rows;
    for (std::size_t r = 0; r < design.run_count(); ++r) {
        const auto v = design.decoded_run(r);
        rec.design.push_back(v);
        rows.push_back(materials_for(plan, with_ascent_point(plan, values, v)));
    }
    const auto reps = source.repose("rsm", rows, plan.rsm.replicates, plan.rsm.seed);
    rec.responses = reps;
    rec.seeds = row_seeds(plan.rsm.seed, rows.size(), plan.rsm.replicates);

    const auto y = means(reps);
    const auto model = rsm::fit_quad_rsm(design, y);
    const auto table = rsm::anova(model, design, y);
    const auto fit = rsm::metrics(model, design, y);
    const auto reduced = rsm::reduced_model(model, table, design, y, plan.rsm.alpha);

    rsm::OptimizeOptions opt;
    opt.grid = plan.rsm.grid;
    opt.tolerance = plan.rsm.tolerance;
    const auto search = rsm::optimize_to_target(model, plan.target_angle, opt);

    std::size_t dominant = 0;
    for (std::size_t i = 1; i < 3; ++i)
        if (std::abs(model.coefficients[1 + i]) > std::abs(model.coefficients[1 + dominant])) dominant = i;
    rsm::Candidate optimum = search.candidates.front();
    std::string rule = "best effort: target not reached inside the coded box";
    if (search.converged) {
        try {
            optimum = rsm::flattest_on_slice(model, plan.target_angle, dominant, opt);
            rule = "least-sensitive point of the target level curve with " + a.factors[dominant] + " at its centre";
        } catch (const Error& e) {
            rule = "first grid candidate";
            rec.warnings.push_back(std::string("no level-curve point with ") + a.factors[dominant] + " at its centre: " + e.what());
        }
    } else {
        rec.warnings.push_back("optimizer did not reach the target within tolerance");
    }

    json candidates = json::array();
    for (const auto& c : search.candidates)
        candidates.push_back({{"coded", c.coded}, {"physical", c.physical}, {"predicted", c.predicted}, {"residual", c.residual}});
    rec.derived = {{"factors", a.factors},
                   {"model", rsm::to_json(model)},
                   {"reduced_model", rsm::to_json(reduced)},
                   {"anova", rsm::to_json(table)},
                   {"metrics", rsm::to_json(fit)},
                   {"converged", search.converged},
                   {"candidates", candidates},
                   {"optimum",
                    {{"coded", optimum.coded},
                     {"physical", optimum.physical},
                     {"predicted", optimum.predicted},
                     {"residual", optimum.residual},
                     {"held_factor", a.factors[dominant]},
                     {"rule", rule}}}};
    return rec;
}

StageRecord run_verification(const CalibrationPlan& plan, ResponseSource& source, const std::vector<double>& values) {
    StageRecord rec;
    rec.stage = "verify";
    rec.design.push_back(values);
    const auto reps = source.repose("verify", {materials_for(plan, values)}, plan.verify.replicates, plan.verify.seed);
    rec.responses = reps;
    rec.seeds = row_seeds(plan.verify.seed, 1, plan.verify.replicates);
    if (static_cast<int>(reps.front().size()) != plan.verify.replicates) {
        rec.warnings.push_back("verification has " + std::to_string(reps.front().size()) + " replicate(s), plan asks for " +
                               std::to_string(plan.verify.replicates));
    }
    const double angle = mean(reps.front());
    rec.derived = {{"angle", angle}, {"target", plan.target_angle}, {"relative_error", doe::relative_error(angle, plan.target_angle)}};
    return rec;
}

}  // namespace demcal::pipeline
