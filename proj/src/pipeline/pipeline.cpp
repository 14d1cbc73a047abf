#include "demcal/pipeline/pipeline.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

#include "demcal/pipeline/record.hpp"
#include "demcal/pipeline/sources.hpp"
#include "demcal/pipeline/stages.hpp"
#include "demcal/pipeline/svg.hpp"

namespace demcal::pipeline {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void write_text(const fs::path& file, const std::string& text) {
    std::ofstream out(file, std::ios::binary);
    out << text;
    if (!out) detail::fail(ErrorCode::StageFailure, "cannot write " + file.string());
}

std::string cell(const json& v) {
    if (v.is_null()) return "";
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    std::ostringstream os;
    os << std::setprecision(12) << v.get<double>();
    return os.str();
}

class CsvText {
public:
    explicit CsvText(const std::vector<std::string>& header) { row(json(header)); }
    void row(const json& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) os_ << (i ? "," : "") << cell(cells[i]);
        os_ << '\n';
    }
    std::string str() const { return os_.str(); }

private:
    std::ostringstream os_;
};

double row_mean(const json& reps) {
    double s = 0.0;
    for (const auto& v : reps) s += v.get<double>();
    return s / static_cast<double>(reps.size());
}

double polyval(const json& coefficients, double x) {
    double y = 0.0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) y = y * x + it->get<double>();
    return y;
}

std::vector<std::string> with_prefix(const std::string& prefix, const std::vector<std::string>& names) {
    std::vector<std::string> out;
    for (const auto& n : names) out.push_back(prefix + n);
    return out;
}

// Design rows, one column per factor, plus the mean response.
std::string design_csv(const std::vector<std::string>& factors, const StageRecord& r) {
    std::vector<std::string> header{"run"};
    header.insert(header.end(), factors.begin(), factors.end());
    header.push_back("response");
    CsvText csv(header);
    for (std::size_t i = 0; i < r.design.size(); ++i) {
        json row{i + 1};
        for (const auto& v : r.design[i]) row.push_back(v);
        row.push_back(row_mean(r.responses[i]));
        csv.row(row);
    }
    return csv.str();
}

std::vector<std::string> factor_keys(const CalibrationPlan& plan) {
    std::vector<std::string> out;
    for (const auto& f : plan.factors) out.push_back(f.key);
    return out;
}

void write_screening(const fs::path& out, const CalibrationPlan& plan, const StageRecord& r) {
    write_text(out / "screening_design.csv", design_csv(factor_keys(plan), r));
    CsvText csv({"factor", "effect", "sum_of_squares", "f_value", "p_value", "significant", "highly_significant", "selected"});
    const auto& selected = r.derived.at("selected");
    for (const auto& e : r.derived.at("effects")) {
        const bool chosen = std::find(selected.begin(), selected.end(), e.at("factor")) != selected.end();
        csv.row({e.at("factor"), e.at("effect"), e.at("sum_of_squares"), e.at("f_value"), e.at("p_value"),
                 e.at("significant"), e.at("highly_significant"), chosen});
    }
    write_text(out / "screening_effects.csv", csv.str());
}

void write_bench(const fs::path& out, const StageRecord& r) {
    struct Axis {
        const char* curve;
        const char* title;
        const char* x;
        const char* y;
    };
    const Axis axes[] = {
        {"incline", "Incline: sliding angle against salt-steel static friction", "static friction", "sliding angle (deg)"},
        {"drop", "Drop: rebound height against salt-steel restitution", "restitution", "rebound height (mm)"},
    };
    const auto& curves = r.derived.at("curves");
    for (const auto& a : axes) {
        if (!curves.contains(a.curve) || !curves[a.curve].contains("x")) continue;
        const auto& c = curves[a.curve];
        const auto x = c.at("x").get<std::vector<double>>();
        const auto y = c.at("y").get<std::vector<double>>();
        const auto& coeffs = c.at("fit").at("coefficients");
        CsvText csv({"x", "response", "fitted"});
        for (std::size_t i = 0; i < x.size(); ++i) csv.row({x[i], y[i], polyval(coeffs, x[i])});
        write_text(out / (std::string("bench_") + a.curve + ".csv"), csv.str());

        std::optional<std::pair<double, double>> mark;
        if (c.contains("value")) mark = {{c["value"].get<double>(), c.at("measured").get<double>()}};
        const auto svg = scatter_svg({a.title, a.x, a.y}, x, y, [&](double v) { return polyval(coeffs, v); }, mark);
        write_text(out / "plots" / (std::string("bench_") + a.curve + ".svg"), svg);
    }
}

void write_ascent(const fs::path& out, const StageRecord& r) {
    const auto factors = r.derived.at("factors").get<std::vector<std::string>>();
    std::vector<std::string> header{"level"};
    header.insert(header.end(), factors.begin(), factors.end());
    header.insert(header.end(), {"angle", "relative_error"});
    CsvText csv(header);
    std::vector<double> level, err;
    for (std::size_t i = 0; i < r.design.size(); ++i) {
        json row{i + 1};
        for (const auto& v : r.design[i]) row.push_back(v);
        row.push_back(r.derived.at("angles")[i]);
        row.push_back(r.derived.at("relative_errors")[i]);
        csv.row(row);
        level.push_back(static_cast<double>(i + 1));
        err.push_back(r.derived.at("relative_errors")[i].get<double>());
    }
    write_text(out / "ascent.csv", csv.str());
    write_text(out / "plots" / "ascent.svg",
               line_svg({"Steepest path: relative error of the repose angle", "level", "relative error"}, level, err));
}

void write_rsm(const fs::path& out, const StageRecord& r) {
    const auto factors = r.derived.at("factors").get<std::vector<std::string>>();
    write_text(out / "rsm_design.csv", design_csv(factors, r));

    CsvText anova({"source", "sum_of_squares", "df", "mean_square", "f_value", "p_value"});
    for (const auto& row : r.derived.at("anova"))
        anova.row({row.at("source"), row.at("sum_of_squares"), row.at("df"), row.at("mean_square"), row.at("f_value"),
                   row.at("p_value")});
    write_text(out / "rsm_anova.csv", anova.str());
    write_text(out / "rsm_model.json", r.derived.at("model").dump(2) + "\n");

    auto header = with_prefix("coded_", factors);
    const auto phys = with_prefix("physical_", factors);
    header.insert(header.end(), phys.begin(), phys.end());
    header.insert(header.end(), {"predicted", "residual"});
    CsvText cand(header);
    for (const auto& c : r.derived.at("candidates")) {
        json row = c.at("coded");
        for (const auto& v : c.at("physical")) row.push_back(v);
        row.push_back(c.at("predicted"));
        row.push_back(c.at("residual"));
        cand.row(row);
    }
    write_text(out / "rsm_candidates.csv", cand.str());
}

class Runner {
public:
    Runner(const CalibrationPlan& plan, const fs::path& out, const RunOptions& options, ResponseSource& source)
        : out_(out), options_(options), source_(source) {
        plan_json_ = to_json(plan);
        plan_json_.erase("output_dir");
    }

    StageRecord run(const std::string& stage, const std::string& fingerprint, const std::vector<const StageRecord*>& upstream,
                    const std::function<StageRecord()>& fn) {
        ++index_;
        std::ostringstream name;
        name << std::setw(2) << std::setfill('0') << index_ << '_' << stage;
        const fs::path file = out_ / "stages" / (name.str() + ".json");
        const fs::path failed = out_ / "stages" / (name.str() + ".failed.json");

        json inputs{{"stage", stage}, {"plan", plan_json_}, {"mode", source_.mode()}, {"data", fingerprint}};
        for (const auto* u : upstream) inputs["upstream"].push_back(u->outputs_digest);
        const std::string digest = sha256_hex(inputs.dump());

        if (options_.resume && fs::exists(file)) {
            try {
                auto old = read_record(file);
                if (old.inputs_digest == digest) {
                    log(stage + ": reusing " + fs::relative(file, out_).string());
                    paths_.push_back(fs::relative(file, out_).string());
                    return old;
                }
            } catch (const Error&) {
                // unreadable records are simply recomputed
            }
        }

        log(stage + ": running (" + source_.mode() + ")");
        const auto t0 = std::chrono::steady_clock::now();
        auto finish = [&](StageRecord& r) {
            r.stage = stage;
            r.source = source_.mode();
            r.inputs_digest = digest;
            r.duration_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            r.seal();
        };
        StageRecord rec;
        try {
            rec = fn();
        } catch (const StageError& e) {
            auto r = e.record();
            finish(r);
            write_record(failed, r);
            log(stage + ": failed, see " + failed.string());
            throw;
        } catch (const Error& e) {
            StageRecord r;
            r.warnings.push_back(e.what());
            finish(r);
            write_record(failed, r);
            log(stage + ": failed, see " + failed.string());
            throw;
        }
        finish(rec);
        write_record(file, rec);
        fs::remove(failed);
        for (const auto& w : rec.warnings) log(stage + ": warning: " + w);
        paths_.push_back(fs::relative(file, out_).string());
        return rec;
    }

    const std::vector<std::string>& paths() const { return paths_; }

private:
    void log(const std::string& msg) const {
        if (options_.log) options_.log(msg);
    }

    fs::path out_;
    const RunOptions& options_;
    ResponseSource& source_;
    json plan_json_;
    int index_ = 0;
    std::vector<std::string> paths_;
};

}  // namespace

std::vector<CalibratedParameter> assemble_parameters(const CalibrationPlan& plan, const std::vector<double>& values) {
    detail::require(values.size() == plan.factors.size(), "one value per plan factor required");
    const auto& optimized = plan.ascent.factors;
    std::vector<CalibratedParameter> out;
    for (std::size_t i = 0; i < plan.factors.size(); ++i) {
        const auto& f = plan.factors[i];
        CalibratedParameter p{f.key, f.name, to_string(f.parameter), values[i], "fixed", ""};
        if (std::find(optimized.begin(), optimized.end(), f.key) != optimized.end()) {
            p.provenance = "screened-and-optimized";
        } else if (f.bench != BenchMethod::None) {
            p.provenance = "bench-calibrated";
            p.note = to_string(f.bench) + " test";
        } else if (f.parameter == Parameter::ParticlePoisson) {
            p.note = "calibrated value not reported; held at the range midpoint";
        } else {
            p.note = "held at the plan baseline";
        }
        out.push_back(p);
    }
    return out;
}

CalibrationReport calibrate(const CalibrationPlan& plan, const RunOptions& options) {
    plan.validate();
    const fs::path out = options.output_dir.value_or(plan.output_dir);
    fs::create_directories(out / "stages");
    fs::create_directories(out / "plots");
    write_text(out / "plan.json", to_json(plan).dump(2) + "\n");

    std::unique_ptr<ResponseSource> source;
    if (options.replay)
        source = std::make_unique<ReplaySource>(*options.replay);
    else
        source = std::make_unique<SimulationSource>(plan, out / "results.csv", options.threads);
    Runner runner(plan, out, options, *source);

    auto values = plan.baselines();
    const auto screening =
        runner.run("screening", source->fingerprint("screening"), {}, [&] { return run_screening_stage(plan, *source); });
    write_screening(out, plan, screening);

    const auto bench = runner.run("bench", source->fingerprint("incline") + source->fingerprint("drop"), {&screening},
                                  [&] { return run_bench_calibration_stage(plan, *source, values); });
    write_bench(out, bench);
    for (const auto& [key, v] : bench.derived.at("values").items()) values[plan.factor_index(key)] = v.get<double>();

    const auto ascent = runner.run("ascent", source->fingerprint("ascent"), {&bench},
                                   [&] { return run_ascent_stage(plan, *source, values); });
    write_ascent(out, ascent);
    const auto center = ascent.derived.at("center").get<std::vector<double>>();

    const auto rsm = runner.run("rsm", source->fingerprint("rsm"), {&ascent},
                                [&] { return run_rsm_stage(plan, *source, values, center); });
    write_rsm(out, rsm);
    const auto& optimum = rsm.derived.at("optimum");
    values = with_ascent_point(plan, values, optimum.at("physical").get<std::vector<double>>());

    const auto verify =
        runner.run("verify", source->fingerprint("verify"), {&rsm}, [&] { return run_verification(plan, *source, values); });

    CalibrationReport report;
    report.plan_name = plan.name;
    report.mode = source->mode();
    report.target_angle = plan.target_angle;
    report.parameters = assemble_parameters(plan, values);
    report.verification_angle = verify.derived.at("angle").get<double>();
    report.verification_responses = verify.responses.at(0).get<std::vector<double>>();
    report.relative_error = verify.derived.at("relative_error").get<double>();
    report.converged = rsm.derived.at("converged").get<bool>();
    for (const auto* r : {&screening, &bench, &ascent, &rsm, &verify})
        for (const auto& w : r->warnings) report.warnings.push_back(r->stage + ": " + w);
    report.stage_records = runner.paths();

    write_text(out / "report.json", to_json(report).dump(2) + "\n");
    write_text(out / "report.txt", render_text(report));
    return report;
}

}  // namespace demcal::pipeline
