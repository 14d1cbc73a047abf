#include "demcal/pipeline/plan.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "demcal/error.hpp"

namespace demcal::pipeline {

using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& what) { detail::fail(ErrorCode::InvalidPlan, what); }

void check(bool cond, const std::string& what) {
    if (!cond) invalid(what);
}

const std::vector<std::pair<Parameter, std::string>> kParameterNames{
    {Parameter::WallRestitution, "particle_wall.restitution"},
    {Parameter::WallStaticFriction, "particle_wall.static_friction"},
    {Parameter::WallRollingFriction, "particle_wall.rolling_friction"},
    {Parameter::ParticlePoisson, "particle.poisson_ratio"},
    {Parameter::ParticleRestitution, "particle_particle.restitution"},
    {Parameter::ParticleStaticFriction, "particle_particle.static_friction"},
    {Parameter::ParticleRollingFriction, "particle_particle.rolling_friction"},
};

const std::vector<std::pair<BenchMethod, std::string>> kBenchNames{
    {BenchMethod::None, "none"}, {BenchMethod::Incline, "incline"}, {BenchMethod::Drop, "drop"}, {BenchMethod::Shear, "shear"}};

template <class E>
E parse_enum(const std::vector<std::pair<E, std::string>>& table, const std::string& s, const char* what) {
    for (const auto& [e, name] : table)
        if (name == s) return e;
    invalid(std::string("unknown ") + what + " '" + s + "'");
}

json material_json(const dem::Material& m) {
    return {{"name", m.name}, {"density", m.density}, {"poisson_ratio", m.poisson_ratio}, {"shear_modulus", m.shear_modulus}};
}

dem::Material material_from(const json& j) {
    dem::Material m;
    m.name = j.at("name").get<std::string>();
    m.density = j.at("density").get<double>();
    m.poisson_ratio = j.at("poisson_ratio").get<double>();
    m.shear_modulus = j.at("shear_modulus").get<double>();
    return m;
}

// Rejects keys the defaults do not have, so typos do not silently fall back.
void check_keys(const json& user, const json& defaults, const std::string& path) {
    if (user.is_object() && defaults.is_object()) {
        for (const auto& [k, v] : user.items()) {
            const std::string here = path.empty() ? k : path + "." + k;
            check(defaults.contains(k), "unknown plan key '" + here + "'");
            check_keys(v, defaults.at(k), here);
        }
    } else if (user.is_array() && defaults.is_array() && !defaults.empty() && defaults.front().is_object()) {
        for (std::size_t i = 0; i < user.size(); ++i)
            check_keys(user[i], defaults.front(), path + "[" + std::to_string(i) + "]");
    }
}

const std::map<std::string, std::string> kComments{
    {"name", "Label copied into the report."},
    {"output_dir", "Stage records, CSVs, plots and the report are written here."},
    {"target_angle", "Measured bench angle of repose the calibration aims for, deg."},
    {"scale_h", "Coarse-graining factor applied to the sieve sizes of the repose rig."},
    {"particle", "Intrinsic properties of the granular material (SI units)."},
    {"wall", "Intrinsic properties of the rig walls."},
    {"factors", "Contact parameters: screening range and baseline; bench = none | incline | drop | shear."},
    {"timestep_fraction", "Time step as a fraction of the Rayleigh time of the smallest particle."},
    {"duration", "Upper bound on simulated time per rig run, s."},
    {"repose", "Funnel rig (m, s, 1/s); shear_modulus overrides the particle G for this rig only."},
    {"incline", "Tilting plate rig (m, deg/s, deg)."},
    {"drop", "Single-particle drop rig (m)."},
    {"screening", "Plackett-Burman screening; factors with p below select_threshold are carried forward."},
    {"bench", "Sweeps fitted and inverted at the bench measurements; shear data in kPa (empty: use shear_mu_s)."},
    {"ascent", "Steepest path over the three response-surface factors, physical units."},
    {"rsm", "Box-Behnken around the best ascent level, then the target search on the fitted surface."},
    {"verify", "Repose replicates run with the calibrated set."},
};

// Puts a `// comment` above each commented top-level key of a plan dumped with indent 2.
std::string annotate(const std::string& text) {
    std::istringstream in(text);
    std::ostringstream out;
    std::string line;
    std::set<std::string> done;
    while (std::getline(in, line)) {
        const auto q = line.find('"');
        if (q != std::string::npos) {
            const auto e = line.find('"', q + 1);
            const std::string key = line.substr(q + 1, e - q - 1);
            const bool is_key = e != std::string::npos && e + 1 < line.size() && line[e + 1] == ':';
            const auto it = kComments.find(key);
            if (is_key && q == 2 && it != kComments.end() && done.insert(key).second)
                out << line.substr(0, q) << "// " << it->second << '\n';
        }
        out << line << '\n';
    }
    return out.str();
}

}  // namespace

std::string to_string(Parameter p) {
    for (const auto& [e, name] : kParameterNames)
        if (e == p) return name;
    return "?";
}

std::string to_string(BenchMethod m) {
    for (const auto& [e, name] : kBenchNames)
        if (e == m) return name;
    return "?";
}

std::vector<PlanFactor> default_factors() {
    auto f = [](std::string key, std::string name, Parameter p, double lo, double hi, BenchMethod b) {
        return PlanFactor{std::move(key), std::move(name), p, lo, hi, 0.5 * (lo + hi), b};
    };
    return {f("A", "salt-steel restitution", Parameter::WallRestitution, 0.3, 0.75, BenchMethod::Drop),
            f("B", "salt-steel static friction", Parameter::WallStaticFriction, 0.35, 0.9, BenchMethod::Incline),
            f("C", "salt-steel rolling friction", Parameter::WallRollingFriction, 0.2, 0.5, BenchMethod::None),
            f("D", "salt Poisson's ratio", Parameter::ParticlePoisson, 0.2, 0.35, BenchMethod::None),
            f("E", "salt-salt restitution", Parameter::ParticleRestitution, 0.15, 0.75, BenchMethod::None),
            f("F", "salt-salt static friction", Parameter::ParticleStaticFriction, 0.4, 0.9, BenchMethod::Shear),
            f("G", "salt-salt rolling friction", Parameter::ParticleRollingFriction, 0.05, 0.35, BenchMethod::None)};
}

CalibrationPlan::CalibrationPlan() : factors(default_factors()) {}

const PlanFactor& CalibrationPlan::factor(const std::string& key) const { return factors[factor_index(key)]; }

std::size_t CalibrationPlan::factor_index(const std::string& key) const {
    for (std::size_t i = 0; i < factors.size(); ++i)
        if (factors[i].key == key) return i;
    invalid("plan references unknown factor '" + key + "'");
}

std::vector<double> CalibrationPlan::baselines() const {
    std::vector<double> out;
    for (const auto& f : factors) out.push_back(f.baseline);
    return out;
}

void CalibrationPlan::validate() const {
    check(!name.empty(), "plan name must not be empty");
    check(std::isfinite(target_angle) && target_angle > 0.0, "target_angle must be > 0");
    check(std::isfinite(scale_h) && scale_h > 0.0, "scale_h must be > 0");
    check(timestep_fraction > 0.0 && timestep_fraction <= 1.0, "timestep_fraction must lie in (0, 1]");
    check(duration > 0.0, "duration must be > 0");
    check(repose_shear_modulus > 0.0, "repose.shear_modulus must be > 0");

    check(factors.size() == kParameterNames.size(), "the plan needs exactly one factor per calibrated parameter (7)");
    std::set<std::string> keys;
    std::set<Parameter> params;
    for (const auto& f : factors) {
        check(!f.key.empty() && keys.insert(f.key).second, "factor keys must be unique and non-empty ('" + f.key + "')");
        check(params.insert(f.parameter).second, "parameter " + to_string(f.parameter) + " is assigned twice");
        check(std::isfinite(f.low) && std::isfinite(f.high) && f.low < f.high, "factor " + f.key + ": need low < high");
        check(f.baseline >= f.low && f.baseline <= f.high, "factor " + f.key + ": baseline outside [low, high]");
    }

    auto reps = [](int r, const char* stage) { check(r >= 1, std::string(stage) + ".replicates must be >= 1"); };
    reps(screening.replicates, "screening");
    reps(bench.replicates, "bench");
    reps(ascent.replicates, "ascent");
    reps(rsm.replicates, "rsm");
    reps(verify.replicates, "verify");
    check(screening.threshold > 0.0 && screening.threshold < 1.0 && screening.select_threshold > 0.0 &&
              screening.select_threshold <= screening.threshold,
          "screening thresholds need 0 < select_threshold <= threshold < 1");
    check(bench.incline_sweep.size() >= 3 && bench.drop_sweep.size() >= 3, "bench sweeps need at least 3 points");
    check(bench.shear_normal_kpa.size() == bench.shear_stress_kpa.size(), "bench shear data need matching lengths");
    check(bench.bench_angle > 0.0 && bench.bench_rebound_mm > 0.0, "bench measurements must be > 0");

    check(ascent.factors.size() == 3 && ascent.start.size() == 3 && ascent.deltas.size() == 3,
          "ascent needs exactly three factors with a start and delta each");
    check(std::set<std::string>(ascent.factors.begin(), ascent.factors.end()).size() == 3, "ascent factors must differ");
    for (std::size_t i = 0; i < 3; ++i) {
        const auto& f = factor(ascent.factors[i]);
        check(f.bench == BenchMethod::None, "ascent factor " + f.key + " is also bench-calibrated");
        check(ascent.start[i] >= f.low && ascent.start[i] <= f.high, "ascent start outside the range of " + f.key);
        check(ascent.deltas[i] != 0.0 && std::isfinite(ascent.deltas[i]), "ascent delta of " + f.key + " must be non-zero");
    }
    check(ascent.steps >= 1, "ascent.steps must be >= 1");
    check(rsm.centers >= 2, "rsm.centers must be >= 2 for a pure-error estimate");
    check(rsm.grid >= 3, "rsm.grid must be >= 3");
    check(rsm.tolerance > 0.0 && rsm.alpha > 0.0 && rsm.alpha < 1.0, "rsm tolerance must be > 0 and alpha in (0, 1)");

    try {
        particle.validate();
        wall.validate();
        repose.validate();
        incline.validate();
        drop.validate();
    } catch (const Error& e) {
        invalid(e.what());
    }
}

rigs::MaterialSet materials_for(const CalibrationPlan& plan, const std::vector<double>& values) {
    detail::require(values.size() == plan.factors.size(), "one value per plan factor required");
    rigs::MaterialSet m;
    m.particle = plan.particle;
    m.wall = plan.wall;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double v = values[i];
        switch (plan.factors[i].parameter) {
            case Parameter::WallRestitution: m.particle_wall.restitution = v; break;
            case Parameter::WallStaticFriction: m.particle_wall.static_friction = v; break;
            case Parameter::WallRollingFriction: m.particle_wall.rolling_friction = v; break;
            case Parameter::ParticlePoisson: m.particle.poisson_ratio = v; break;
            case Parameter::ParticleRestitution: m.particle_particle.restitution = v; break;
            case Parameter::ParticleStaticFriction: m.particle_particle.static_friction = v; break;
            case Parameter::ParticleRollingFriction: m.particle_particle.rolling_friction = v; break;
        }
    }
    return m;
}

json to_json(const CalibrationPlan& p) {
    json factors = json::array();
    for (const auto& f : p.factors)
        factors.push_back({{"key", f.key},
                           {"name", f.name},
                           {"parameter", to_string(f.parameter)},
                           {"low", f.low},
                           {"high", f.high},
                           {"baseline", f.baseline},
                           {"bench", to_string(f.bench)}});
    json sizes = json::array();
    for (const auto& b : p.repose.sizes.bins) sizes.push_back({{"sieve_size", b.sieve_size}, {"mass_fraction", b.mass_fraction}});
    const auto& r = p.repose;
    const auto& in = p.incline;
    const auto& d = p.drop;
    return {
        {"name", p.name},
        {"output_dir", p.output_dir.string()},
        {"target_angle", p.target_angle},
        {"scale_h", p.scale_h},
        {"particle", material_json(p.particle)},
        {"wall", material_json(p.wall)},
        {"factors", factors},
        {"timestep_fraction", p.timestep_fraction},
        {"duration", p.duration},
        {"repose",
         {{"orifice_diameter", r.orifice_diameter},
          {"plate_diameter", r.plate_diameter},
          {"discharge_height", r.discharge_height},
          {"particle_count", r.particle_count},
          {"generation_rate", r.generation_rate},
          {"settle_time", r.settle_time},
          {"settle_energy", r.settle_energy},
          {"funnel_angle", r.funnel_angle},
          {"funnel_height", r.funnel_height},
          {"shear_modulus", p.repose_shear_modulus},
          {"sizes", sizes}}},
        {"incline",
         {{"plate_length", in.plate_length},
          {"plate_width", in.plate_width},
          {"angular_rate", in.angular_rate},
          {"max_angle", in.max_angle},
          {"particle_seed_height", in.particle_seed_height},
          {"slide_threshold", in.slide_threshold},
          {"particle_radius", in.particle_radius},
          {"settle_time", in.settle_time}}},
        {"drop",
         {{"drop_height", d.drop_height},
          {"plate_length", d.plate_length},
          {"plate_width", d.plate_width},
          {"particle_radius", d.particle_radius}}},
        {"screening",
         {{"replicates", p.screening.replicates},
          {"seed", p.screening.seed},
          {"threshold", p.screening.threshold},
          {"select_threshold", p.screening.select_threshold}}},
        {"bench",
         {{"replicates", p.bench.replicates},
          {"seed", p.bench.seed},
          {"incline_sweep", p.bench.incline_sweep},
          {"bench_angle", p.bench.bench_angle},
          {"drop_sweep", p.bench.drop_sweep},
          {"bench_rebound_mm", p.bench.bench_rebound_mm},
          {"shear_normal_kpa", p.bench.shear_normal_kpa},
          {"shear_stress_kpa", p.bench.shear_stress_kpa},
          {"shear_mu_s", p.bench.shear_mu_s}}},
        {"ascent",
         {{"factors", p.ascent.factors},
          {"start", p.ascent.start},
          {"deltas", p.ascent.deltas},
          {"steps", p.ascent.steps},
          {"replicates", p.ascent.replicates},
          {"seed", p.ascent.seed}}},
        {"rsm",
         {{"centers", p.rsm.centers},
          {"replicates", p.rsm.replicates},
          {"seed", p.rsm.seed},
          {"grid", p.rsm.grid},
          {"tolerance", p.rsm.tolerance},
          {"alpha", p.rsm.alpha}}},
        {"verify", {{"replicates", p.verify.replicates}, {"seed", p.verify.seed}}},
    };
}

CalibrationPlan plan_from_json(const json& user) {
    check(user.is_object(), "a plan must be a JSON object");
    const CalibrationPlan defaults;
    json j = to_json(defaults);
    check_keys(user, j, "");
    j.merge_patch(user);

    CalibrationPlan p;
    try {
        p.name = j.at("name").get<std::string>();
        p.output_dir = j.at("output_dir").get<std::string>();
        p.target_angle = j.at("target_angle").get<double>();
        p.scale_h = j.at("scale_h").get<double>();
        p.particle = material_from(j.at("particle"));
        p.wall = material_from(j.at("wall"));
        p.factors.clear();
        for (const auto& f : j.at("factors")) {
            PlanFactor pf;
            pf.key = f.at("key").get<std::string>();
            pf.name = f.value("name", pf.key);
            pf.parameter = parse_enum(kParameterNames, f.at("parameter").get<std::string>(), "parameter");
            pf.low = f.at("low").get<double>();
            pf.high = f.at("high").get<double>();
            pf.baseline = f.contains("baseline") ? f.at("baseline").get<double>() : 0.5 * (pf.low + pf.high);
            pf.bench = parse_enum(kBenchNames, f.value("bench", std::string("none")), "bench method");
            p.factors.push_back(pf);
        }
        p.timestep_fraction = j.at("timestep_fraction").get<double>();
        p.duration = j.at("duration").get<double>();

        const auto& r = j.at("repose");
        p.repose.orifice_diameter = r.at("orifice_diameter").get<double>();
        p.repose.plate_diameter = r.at("plate_diameter").get<double>();
        p.repose.discharge_height = r.at("discharge_height").get<double>();
        p.repose.particle_count = r.at("particle_count").get<int>();
        p.repose.generation_rate = r.at("generation_rate").get<double>();
        p.repose.settle_time = r.at("settle_time").get<double>();
        p.repose.settle_energy = r.at("settle_energy").get<double>();
        p.repose.funnel_angle = r.at("funnel_angle").get<double>();
        p.repose.funnel_height = r.at("funnel_height").get<double>();
        p.repose_shear_modulus = r.at("shear_modulus").get<double>();
        p.repose.sizes.bins.clear();
        for (const auto& b : r.at("sizes"))
            p.repose.sizes.bins.push_back({b.at("sieve_size").get<double>(), b.at("mass_fraction").get<double>()});
        p.repose.scale_h = p.scale_h;

        const auto& in = j.at("incline");
        p.incline.plate_length = in.at("plate_length").get<double>();
        p.incline.plate_width = in.at("plate_width").get<double>();
        p.incline.angular_rate = in.at("angular_rate").get<double>();
        p.incline.max_angle = in.at("max_angle").get<double>();
        p.incline.particle_seed_height = in.at("particle_seed_height").get<double>();
        p.incline.slide_threshold = in.at("slide_threshold").get<double>();
        p.incline.particle_radius = in.at("particle_radius").get<double>();
        p.incline.settle_time = in.at("settle_time").get<double>();

        const auto& d = j.at("drop");
        p.drop.drop_height = d.at("drop_height").get<double>();
        p.drop.plate_length = d.at("plate_length").get<double>();
        p.drop.plate_width = d.at("plate_width").get<double>();
        p.drop.particle_radius = d.at("particle_radius").get<double>();

        const auto& s = j.at("screening");
        p.screening = {s.at("replicates").get<int>(), s.at("seed").get<std::uint64_t>(), s.at("threshold").get<double>(),
                       s.at("select_threshold").get<double>()};

        const auto& b = j.at("bench");
        p.bench.replicates = b.at("replicates").get<int>();
        p.bench.seed = b.at("seed").get<std::uint64_t>();
        p.bench.incline_sweep = b.at("incline_sweep").get<std::vector<double>>();
        p.bench.bench_angle = b.at("bench_angle").get<double>();
        p.bench.drop_sweep = b.at("drop_sweep").get<std::vector<double>>();
        p.bench.bench_rebound_mm = b.at("bench_rebound_mm").get<double>();
        p.bench.shear_normal_kpa = b.at("shear_normal_kpa").get<std::vector<double>>();
        p.bench.shear_stress_kpa = b.at("shear_stress_kpa").get<std::vector<double>>();
        p.bench.shear_mu_s = b.at("shear_mu_s").get<double>();

        const auto& a = j.at("ascent");
        p.ascent.factors = a.at("factors").get<std::vector<std::string>>();
        p.ascent.start = a.at("start").get<std::vector<double>>();
        p.ascent.deltas = a.at("deltas").get<std::vector<double>>();
        p.ascent.steps = a.at("steps").get<int>();
        p.ascent.replicates = a.at("replicates").get<int>();
        p.ascent.seed = a.at("seed").get<std::uint64_t>();

        const auto& q = j.at("rsm");
        p.rsm = {q.at("centers").get<int>(), q.at("replicates").get<int>(), q.at("seed").get<std::uint64_t>(),
                 q.at("grid").get<int>(), q.at("tolerance").get<double>(), q.at("alpha").get<double>()};

        const auto& v = j.at("verify");
        p.verify = {v.at("replicates").get<int>(), v.at("seed").get<std::uint64_t>()};
    } catch (const json::exception& e) {
        invalid(std::string("malformed plan: ") + e.what());
    }
    p.validate();
    return p;
}

CalibrationPlan load_plan(const std::filesystem::path& file) {
    std::ifstream in(file);
    check(static_cast<bool>(in), "cannot read plan file " + file.string());
    json j;
    try {
        j = json::parse(in, nullptr, true, true);
    } catch (const json::parse_error& e) {
        invalid(file.string() + ": " + e.what());
    }
    return plan_from_json(j);
}

std::string plan_template() {
    std::ostringstream out;
    out << "// Calibration plan. Every key is optional; omitted keys keep the values shown.\n"
        << "// Units are SI unless a key says otherwise (deg, mm, kPa).\n";
    out << annotate(to_json(CalibrationPlan{}).dump(2));
    return out.str();
}

}  // namespace demcal::pipeline
