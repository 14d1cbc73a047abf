#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>

#include "demcal/doe/design.hpp"
#include "demcal/doe/screening.hpp"
#include "demcal/error.hpp"
#include "demcal/pipeline/csv.hpp"
#include "demcal/pipeline/pipeline.hpp"
#include "demcal/pipeline/sources.hpp"
#include "demcal/pipeline/svg.hpp"
#include "demcal/rsm/io.hpp"
#include "demcal/rsm/poly.hpp"
#include "demcal/rsm/quad.hpp"

namespace fs = std::filesystem;
using namespace demcal;
using namespace demcal::pipeline;

namespace {

constexpr int kExitInvalidPlan = 2;
constexpr int kExitStageFailure = 3;
constexpr int kExitUnconverged = 4;

CalibrationPlan plan_or_default(const std::string& file) { return file.empty() ? CalibrationPlan{} : load_plan(file); }

// "G=0.3" style overrides on top of the plan baselines.
std::vector<double> factor_values(const CalibrationPlan& plan, const std::vector<std::string>& sets) {
    auto v = plan.baselines();
    for (const auto& s : sets) {
        const auto eq = s.find('=');
        detail::require(eq != std::string::npos, "--set expects KEY=VALUE, got '" + s + "'");
        v[plan.factor_index(s.substr(0, eq))] = std::stod(s.substr(eq + 1));
    }
    return v;
}

std::vector<double> response_column(const NumericTable& t) {
    for (const char* name : {"response", "y"})
        for (std::size_t i = 0; i < t.header.size(); ++i)
            if (t.header[i] == name) return t.values(i);
    return t.values(t.header.size() - 1);
}

std::vector<doe::FactorSpec> bbd_factors(const CalibrationPlan& plan, std::vector<double> center, std::vector<double> step) {
    const auto& a = plan.ascent;
    if (center.empty()) {
        // middle level of the planned ascent path
        for (std::size_t i = 0; i < a.start.size(); ++i) center.push_back(a.start[i] + (a.steps - 1) / 2 * a.deltas[i]);
    }
    if (step.empty())
        for (double d : a.deltas) step.push_back(std::abs(d));
    detail::require(center.size() == 3 && step.size() == 3, "Box-Behnken needs three centres and three steps");
    std::vector<doe::FactorSpec> out;
    for (std::size_t i = 0; i < 3; ++i) out.push_back(doe::FactorSpec::three_level(a.factors[i], center[i], step[i]));
    return out;
}

std::vector<doe::FactorSpec> screening_factors(const CalibrationPlan& plan) {
    std::vector<doe::FactorSpec> out;
    for (const auto& f : plan.factors) out.push_back(doe::FactorSpec::two_level(f.key, f.low, f.high));
    return out;
}

void print_candidate(const rsm::Candidate& c) {
    std::cout << std::setprecision(8) << c.coded[0] << ',' << c.coded[1] << ',' << c.coded[2] << ',' << c.physical[0]
              << ',' << c.physical[1] << ',' << c.physical[2] << ',' << c.predicted << ',' << c.residual << '\n';
}

std::string read_all(const fs::path& p) {
    std::ifstream in(p);
    detail::require(static_cast<bool>(in), "cannot read " + p.string());
    return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"DEM contact-parameter calibration: rigs, designed experiments and response surfaces"};
    app.require_subcommand(1);
    int exit_code = 0;

    // init
    auto* init = app.add_subcommand("init", "Write a commented template plan");
    std::string init_out;
    init->add_option("-o,--output", init_out, "Plan file to write (default: stdout)");
    init->callback([&] {
        if (init_out.empty()) {
            std::cout << plan_template();
            return;
        }
        std::ofstream(init_out) << plan_template();
        std::cout << "wrote " << init_out << '\n';
    });

    // sim
    auto* sim = app.add_subcommand("sim", "Run a single rig simulation");
    sim->require_subcommand(1);
    std::string sim_plan, results = "results.csv";
    std::vector<std::string> sets;
    std::uint64_t seed = 1;
    int replicates = 1;
    unsigned threads = 0;
    double sweep_value = NAN;
    int particles = 0;
    sim->fallthrough();
    sim->add_option("--plan", sim_plan, "Plan file for materials and rig settings");
    sim->add_option("--set", sets, "Factor override KEY=VALUE, repeatable");
    sim->add_option("--seed", seed, "Random seed");
    sim->add_option("--results", results, "Results CSV to append to")->capture_default_str();
    sim->add_option("--threads", threads, "Worker threads (0: all cores)");
    auto* sim_repose = sim->add_subcommand("repose", "Funnel pour, prints the angle of repose in deg");
    sim_repose->add_option("--replicates", replicates, "Independent pours")->check(CLI::PositiveNumber);
    sim_repose->add_option("--particles", particles, "Particle count (default: plan)")->check(CLI::PositiveNumber);
    auto* sim_incline = sim->add_subcommand("incline", "Tilting plate, prints the sliding angle in deg");
    sim_incline->add_option("--mu", sweep_value, "Salt-steel static friction (default: plan baseline)");
    auto* sim_drop = sim->add_subcommand("drop", "Single drop, prints the rebound height in mm");
    sim_drop->add_option("--e", sweep_value, "Salt-steel restitution (default: plan baseline)");

    sim_repose->callback([&] {
        auto plan = plan_or_default(sim_plan);
        if (particles > 0) plan.repose.particle_count = particles;
        SimulationSource src(plan, results, threads);
        const auto reps = src.repose("cli", {materials_for(plan, factor_values(plan, sets))}, replicates, seed).front();
        for (double a : reps) std::cout << std::setprecision(6) << a << '\n';
    });
    sim_incline->callback([&] {
        const auto plan = plan_or_default(sim_plan);
        SimulationSource src(plan, results, threads);
        const double mu = std::isnan(sweep_value) ? plan.factor("B").baseline : sweep_value;
        std::cout << std::setprecision(6) << src.incline({mu}, materials_for(plan, factor_values(plan, sets)), 1, seed).y[0]
                  << '\n';
    });
    sim_drop->callback([&] {
        const auto plan = plan_or_default(sim_plan);
        SimulationSource src(plan, results, threads);
        const double e = std::isnan(sweep_value) ? plan.factor("A").baseline : sweep_value;
        std::cout << std::setprecision(6) << src.drop({e}, materials_for(plan, factor_values(plan, sets)), 1, seed).y[0]
                  << '\n';
    });

    // doe
    auto* doe_cmd = app.add_subcommand("doe", "Write design matrices as CSV");
    doe_cmd->require_subcommand(1);
    doe_cmd->fallthrough();
    std::string doe_plan, doe_out = "design.csv";
    bool coded = false;
    std::vector<double> center, step;
    int centers = 5;
    std::uint64_t shuffle_seed = 0;
    doe_cmd->add_option("--plan", doe_plan, "Plan file for factors and ranges");
    doe_cmd->add_option("-o,--output", doe_out, "CSV to write")->capture_default_str();
    doe_cmd->add_flag("--coded", coded, "Write coded levels instead of physical values");
    auto* doe_pb = doe_cmd->add_subcommand("pb", "12-run Plackett-Burman design over the plan factors");
    auto* doe_bbd = doe_cmd->add_subcommand("bbd", "Box-Behnken design over the ascent factors");
    doe_bbd->add_option("--center", center, "Centre per factor (default: middle ascent level)")->expected(3);
    doe_bbd->add_option("--step", step, "Step per factor (default: |ascent deltas|)")->expected(3);
    doe_bbd->add_option("--centers", centers, "Centre replicates")->capture_default_str();
    doe_bbd->add_option("--shuffle", shuffle_seed, "Randomize run order with this seed");
    auto* doe_ascent = doe_cmd->add_subcommand("ascent", "Steepest-ascent path from the plan");

    auto write_design = [&](const doe::DesignMatrix& d) {
        coded ? doe::write_coded_csv(doe_out, d) : doe::write_decoded_csv(doe_out, d);
        std::cout << "wrote " << d.run_count() << " runs to " << doe_out << '\n';
    };
    doe_pb->callback([&] { write_design(doe::plackett_burman(screening_factors(plan_or_default(doe_plan)))); });
    doe_bbd->callback([&] {
        auto d = doe::box_behnken(bbd_factors(plan_or_default(doe_plan), center, step), centers);
        if (shuffle_seed) d = doe::shuffle(d, shuffle_seed);
        write_design(d);
    });
    doe_ascent->callback([&] {
        const auto plan = plan_or_default(doe_plan);
        std::vector<doe::FactorSpec> specs;
        for (const auto& k : plan.ascent.factors) specs.push_back(doe::FactorSpec::two_level(k, plan.factor(k).low, plan.factor(k).high));
        const auto path = doe::steepest_path(specs, plan.ascent.start, plan.ascent.deltas, plan.ascent.steps);
        std::ofstream out(doe_out);
        out << "level";
        for (const auto& k : plan.ascent.factors) out << ',' << k;
        out << ",clipped\n" << std::setprecision(10);
        for (std::size_t i = 0; i < path.size(); ++i) {
            out << i + 1;
            for (double v : path[i].values) out << ',' << v;
            out << ',' << (path[i].clipped ? 1 : 0) << '\n';
        }
        std::cout << "wrote " << path.size() << " levels to " << doe_out << '\n';
    });

    // fit
    auto* fit = app.add_subcommand("fit", "Least-squares polynomial through an x,y CSV");
    std::string fit_in, fit_plot;
    int degree = 2;
    std::optional<double> invert;
    fit->add_option("input", fit_in, "CSV with x in the first column and the response in 'response', 'y' or the last column")
        ->required()
        ->check(CLI::ExistingFile);
    fit->add_option("--degree", degree, "1 or 2")->capture_default_str()->check(CLI::Range(1, 2));
    fit->add_option("--invert", invert, "Solve the fitted curve for this response");
    fit->add_option("--plot", fit_plot, "SVG file for the scatter and fitted curve");
    fit->callback([&] {
        const auto t = read_numeric_csv(fit_in);
        const auto x = t.values(0);
        const auto y = response_column(t);
        const auto f = rsm::fit_poly(x, y, degree);
        std::cout << rsm::to_json(f).dump(2) << '\n';
        std::optional<std::pair<double, double>> mark;
        if (invert) {
            const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
            const double c2 = degree == 2 ? f.coefficients[2] : 0.0;
            const double v = rsm::invert_quadratic(c2, f.coefficients[1], f.coefficients[0], *invert, *lo, *hi);
            std::cout << "x at " << *invert << ": " << std::setprecision(8) << v << '\n';
            mark = {{v, *invert}};
        }
        if (!fit_plot.empty()) {
            std::ofstream(fit_plot) << scatter_svg({fs::path(fit_in).stem().string(), "x", "response"}, x, y, f, mark);
            std::cout << "wrote " << fit_plot << '\n';
        }
    });

    // anova
    auto* anova = app.add_subcommand("anova", "ANOVA of a run,response CSV against a design");
    std::string anova_in, anova_plan, anova_kind = "rsm", anova_out;
    anova->add_option("input", anova_in, "CSV of responses in design order")->required()->check(CLI::ExistingFile);
    anova->add_option("--kind", anova_kind, "rsm (Box-Behnken, quadratic) or pb (Plackett-Burman, main effects)")
        ->check(CLI::IsMember({"rsm", "pb"}))
        ->capture_default_str();
    anova->add_option("--plan", anova_plan, "Plan file for factors and ranges");
    anova->add_option("--center", center, "Box-Behnken centre per factor")->expected(3);
    anova->add_option("--step", step, "Box-Behnken step per factor")->expected(3);
    anova->add_option("--centers", centers, "Box-Behnken centre replicates")->capture_default_str();
    anova->add_option("-o,--output", anova_out, "CSV for the ANOVA table (rsm)");
    anova->callback([&] {
        const auto plan = plan_or_default(anova_plan);
        const auto y = response_column(read_numeric_csv(anova_in));
        if (anova_kind == "pb") {
            const auto r = doe::screening_anova(doe::plackett_burman(screening_factors(plan)), y, plan.screening.threshold,
                                                plan.screening.select_threshold);
            std::cout << "factor,effect,sum_of_squares,f_value,p_value\n" << std::setprecision(8);
            for (const auto& e : r.factors)
                std::cout << e.name << ',' << e.effect << ',' << e.sum_of_squares << ',' << e.f << ',' << e.p << '\n';
            std::cout << "residual," << ',' << r.residual_ss << ",,\n";
            return;
        }
        const auto d = doe::box_behnken(bbd_factors(plan, center, step), centers);
        const auto m = rsm::fit_quad_rsm(d, y);
        const auto table = rsm::anova(m, d, y);
        nlohmann::json j{{"model", rsm::to_json(m)}, {"anova", rsm::to_json(table)}, {"metrics", rsm::to_json(rsm::metrics(m, d, y))}};
        std::cout << j.dump(2) << '\n';
        if (!anova_out.empty()) rsm::write_anova_csv(anova_out, table);
    });

    // solve
    auto* solve = app.add_subcommand("solve", "Points of a fitted response surface that reach a target");
    std::string model_file, hold;
    double target = 45.27;
    std::size_t limit = 10;
    solve->add_option("--model", model_file, "Model JSON (rsm_model.json)")->required()->check(CLI::ExistingFile);
    solve->add_option("--target", target, "Target response")->capture_default_str();
    solve->add_option("--hold", hold, "Hold this factor at its centre and take the least sensitive point");
    solve->add_option("--limit", limit, "Candidates to print")->capture_default_str();
    solve->callback([&] {
        const auto m = rsm::quad_model_from_json(nlohmann::json::parse(read_all(model_file)));
        std::cout << "coded_1,coded_2,coded_3,physical_1,physical_2,physical_3,predicted,residual\n";
        if (!hold.empty()) {
            std::size_t k = 0;
            while (k < m.factors.size() && m.factors[k].name != hold) ++k;
            detail::require(k < m.factors.size(), "model has no factor " + hold);
            print_candidate(rsm::flattest_on_slice(m, target, k));
            return;
        }
        const auto r = rsm::optimize_to_target(m, target);
        for (std::size_t i = 0; i < std::min(limit, r.candidates.size()); ++i) print_candidate(r.candidates[i]);
        if (!r.converged) {
            std::cerr << "target " << target << " not reached inside the coded box\n";
            exit_code = kExitUnconverged;
        }
    });

    // calibrate
    auto* calibrate_cmd = app.add_subcommand("calibrate", "End-to-end calibration");
    calibrate_cmd->require_subcommand(1);
    auto* run = calibrate_cmd->add_subcommand("run", "Run every stage of a plan");
    std::string plan_file, replay, out_dir;
    bool fresh = false, quiet = false;
    run->add_option("--plan", plan_file, "Plan file")->required();
    run->add_option("--replay", replay, "Directory of recorded responses instead of simulation")->check(CLI::ExistingDirectory);
    run->add_option("-o,--output", out_dir, "Output directory (default: plan output_dir)");
    run->add_option("--threads", threads, "Worker threads (0: all cores)");
    run->add_flag("--fresh", fresh, "Ignore existing stage records");
    run->add_flag("-q,--quiet", quiet, "Only print the report");
    run->callback([&] {
        const auto plan = load_plan(plan_file);
        RunOptions opt;
        if (!replay.empty()) opt.replay = replay;
        if (!out_dir.empty()) opt.output_dir = out_dir;
        opt.resume = !fresh;
        opt.threads = threads;
        if (!quiet) opt.log = [](const std::string& s) { std::cerr << s << '\n'; };
        const auto report = calibrate(plan, opt);
        std::cout << render_text(report);
        if (!report.converged) exit_code = kExitUnconverged;
    });

    // report
    auto* report_cmd = app.add_subcommand("report", "Render a calibration report");
    std::string report_in;
    bool as_json = false;
    report_cmd->add_option("input", report_in, "report.json or the calibration output directory")->required();
    report_cmd->add_flag("--json", as_json, "Print JSON instead of text");
    report_cmd->callback([&] {
        fs::path p = report_in;
        if (fs::is_directory(p)) p /= "report.json";
        const auto r = read_report(p);
        std::cout << (as_json ? to_json(r).dump(2) + "\n" : render_text(r));
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.code() == ErrorCode::InvalidPlan ? kExitInvalidPlan : kExitStageFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitStageFailure;
    }
    return exit_code;
}
