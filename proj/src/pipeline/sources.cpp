#include "demcal/pipeline/sources.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <sstream>
#include <thread>

#include "demcal/dem/contact.hpp"
#include "demcal/pipeline/csv.hpp"
#include "demcal/pipeline/record.hpp"
#include "demcal/rigs/results.hpp"

namespace demcal::pipeline {

namespace {

[[noreturn]] void stage_failure(const std::string& what) { detail::fail(ErrorCode::StageFailure, what); }

std::string parameter_json(const rigs::MaterialSet& m) {
    const nlohmann::json j{{"particle_wall",
                            {{"restitution", m.particle_wall.restitution},
                             {"static_friction", m.particle_wall.static_friction},
                             {"rolling_friction", m.particle_wall.rolling_friction}}},
                           {"particle_particle",
                            {{"restitution", m.particle_particle.restitution},
                             {"static_friction", m.particle_particle.static_friction},
                             {"rolling_friction", m.particle_particle.rolling_friction}}},
                           {"poisson_ratio", m.particle.poisson_ratio},
                           {"shear_modulus", m.particle.shear_modulus}};
    return j.dump();
}

}  // namespace

void parallel_for(std::size_t jobs, unsigned threads, const std::function<void(std::size_t)>& fn) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, jobs));
    std::vector<std::exception_ptr> errors(jobs);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < jobs; i = next++) {
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
        work();
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

dem::SimConfig rig_config(const CalibrationPlan& plan, const rigs::MaterialSet& m, double r_min, std::uint64_t seed) {
    dem::SimConfig cfg;
    // walls are rigid, so only the particle material sets the Rayleigh limit
    const std::vector<dem::Material> mats{m.particle};
    cfg.timestep = dem::stable_timestep(mats, r_min, plan.timestep_fraction);
    cfg.duration = plan.duration;
    cfg.rng_seed = seed;
    return cfg;
}

ReplaySource::ReplaySource(std::filesystem::path dir) : dir_(std::move(dir)) {
    if (!std::filesystem::is_directory(dir_)) stage_failure("replay directory " + dir_.string() + " does not exist");
}

std::filesystem::path ReplaySource::file(const std::string& stage) const {
    const auto f = dir_ / (stage + ".csv");
    if (!std::filesystem::exists(f)) stage_failure("replay data missing: " + f.string());
    return f;
}

std::string ReplaySource::fingerprint(const std::string& stage) const {
    const auto f = dir_ / (stage + ".csv");
    if (!std::filesystem::exists(f)) return "missing";
    std::ifstream in(f, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return sha256_hex(ss.str());
}

std::vector<std::vector<double>> ReplaySource::repose(const std::string& stage, const std::vector<rigs::MaterialSet>& rows,
                                                      int, std::uint64_t) {
    const auto t = read_numeric_csv(file(stage));
    const auto run = t.column("run");
    const auto resp = t.column("response");
    std::vector<std::vector<double>> out(rows.size());
    for (const auto& r : t.rows) {
        const double k = r[run];
        if (k < 1 || k > static_cast<double>(rows.size()) || k != std::floor(k)) {
            std::ostringstream os;
            os << "replay " << stage << ": run " << k << " outside 1.." << rows.size();
            stage_failure(os.str());
        }
        out[static_cast<std::size_t>(k) - 1].push_back(r[resp]);
    }
    for (std::size_t i = 0; i < out.size(); ++i)
        if (out[i].empty()) stage_failure("replay " + stage + ": no response for run " + std::to_string(i + 1));
    return out;
}

Curve ReplaySource::curve(const std::string& stage) const {
    const auto t = read_numeric_csv(file(stage));
    return {t.values(t.column("x")), t.values(t.column("response"))};
}

Curve ReplaySource::incline(const std::vector<double>&, const rigs::MaterialSet&, int, std::uint64_t) {
    return curve("incline");
}

Curve ReplaySource::drop(const std::vector<double>&, const rigs::MaterialSet&, int, std::uint64_t) { return curve("drop"); }

SimulationSource::SimulationSource(const CalibrationPlan& plan, std::filesystem::path results_file, unsigned threads)
    : plan_(plan), results_(std::move(results_file)), threads_(threads) {}

std::vector<std::vector<double>> SimulationSource::repose(const std::string& stage, const std::vector<rigs::MaterialSet>& rows,
                                                          int replicates, std::uint64_t seed) {
    const auto reps = static_cast<std::size_t>(replicates);
    std::vector<double> flat(rows.size() * reps);
    std::vector<rigs::RigRecord> records(flat.size());
    double r_min = plan_.repose.sizes.bins.front().sieve_size;
    for (const auto& b : plan_.repose.sizes.bins) r_min = std::min(r_min, b.sieve_size);
    r_min *= 0.5 * plan_.scale_h;
    parallel_for(flat.size(), threads_, [&](std::size_t k) {
        const std::size_t row = k / reps, rep = k % reps;
        rigs::MaterialSet m = rows[row];
        m.particle.shear_modulus = plan_.repose_shear_modulus;
        const std::uint64_t s = seed + 1000 * row + rep;
        rigs::ReposeRig rig = plan_.repose;
        rig.scale_h = plan_.scale_h;
        flat[k] = rigs::run_repose(rig, m, rig_config(plan_, m, r_min, s)).angle;
        records[k] = {"repose:" + stage, static_cast<int>(rep), s, parameter_json(m), flat[k], "deg"};
    });
    rigs::append_records(results_, records);
    std::vector<std::vector<double>> out(rows.size());
    for (std::size_t k = 0; k < flat.size(); ++k) out[k / reps].push_back(flat[k]);
    return out;
}

Curve SimulationSource::incline(const std::vector<double>& sweep, const rigs::MaterialSet& base, int replicates,
                                std::uint64_t seed) {
    // the incline rig has no randomness; replicates would repeat the same run
    (void)replicates;
    Curve c{sweep, std::vector<double>(sweep.size())};
    std::vector<rigs::RigRecord> records(sweep.size());
    parallel_for(sweep.size(), threads_, [&](std::size_t i) {
        const auto cfg = rig_config(plan_, base, plan_.incline.particle_radius, seed + i);
        c.y[i] = rigs::run_incline(plan_.incline, sweep[i], base, cfg);
        auto m = base;
        m.particle_wall.static_friction = sweep[i];
        records[i] = {"incline", 0, seed + i, parameter_json(m), c.y[i], "deg"};
    });
    rigs::append_records(results_, records);
    return c;
}

Curve SimulationSource::drop(const std::vector<double>& sweep, const rigs::MaterialSet& base, int replicates,
                             std::uint64_t seed) {
    (void)replicates;
    Curve c{sweep, std::vector<double>(sweep.size())};
    std::vector<rigs::RigRecord> records(sweep.size());
    parallel_for(sweep.size(), threads_, [&](std::size_t i) {
        const auto cfg = rig_config(plan_, base, plan_.drop.particle_radius, seed + i);
        c.y[i] = 1000.0 * rigs::run_drop(plan_.drop, sweep[i], base, cfg);
        auto m = base;
        m.particle_wall.restitution = sweep[i];
        records[i] = {"drop", 0, seed + i, parameter_json(m), c.y[i], "mm"};
    });
    rigs::append_records(results_, records);
    return c;
}

}  // namespace demcal::pipeline
