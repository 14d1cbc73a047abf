#ifndef DEMCAL_PIPELINE_PLAN_HPP
#define DEMCAL_PIPELINE_PLAN_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "demcal/dem/world.hpp"
#include "demcal/rigs/drop.hpp"
#include "demcal/rigs/incline.hpp"
#include "demcal/rigs/materials.hpp"
#include "demcal/rigs/repose.hpp"

namespace demcal::pipeline {

/// The seven calibrated contact/material parameters.
enum class Parameter {
    WallRestitution,
    WallStaticFriction,
    WallRollingFriction,
    ParticlePoisson,
    ParticleRestitution,
    ParticleStaticFriction,
    ParticleRollingFriction,
};

/// How a factor that is not screened in gets its value.
enum class BenchMethod { None, Incline, Drop, Shear };

struct PlanFactor {
    std::string key;  // short label, e.g. "G"
    std::string name;
    Parameter parameter = Parameter::ParticleRollingFriction;
    double low = 0.0;
    double high = 0.0;
    double baseline = 0.0;
    BenchMethod bench = BenchMethod::None;
};

struct ScreeningSettings {
    int replicates = 1;
    std::uint64_t seed = 101;
    double threshold = 0.05;  // reported significance tier
    double select_threshold = 0.01;  // factors below this p are carried forward
};

struct BenchSettings {
    int replicates = 1;
    std::uint64_t seed = 201;
    std::vector<double> incline_sweep{0.35, 0.45, 0.55, 0.65, 0.75, 0.85};
    double bench_angle = 35.82;  // deg
    std::vector<double> drop_sweep{0.30, 0.35, 0.40, 0.45, 0.50, 0.55, 0.60, 0.65, 0.70, 0.75};
    double bench_rebound_mm = 20.5;
    std::vector<double> shear_normal_kpa;
    std::vector<double> shear_stress_kpa;
    double shear_mu_s = 0.85;  // used when no shear data are given
};

struct AscentSettings {
    std::vector<std::string> factors{"G", "E", "C"};
    std::vector<double> start{0.11, 0.75, 0.26};
    std::vector<double> deltas{0.06, -0.15, 0.06};
    int steps = 5;
    int replicates = 1;
    std::uint64_t seed = 301;
};

struct RsmSettings {
    int centers = 5;
    int replicates = 1;
    std::uint64_t seed = 401;
    int grid = 101;
    double tolerance = 1e-3;
    double alpha = 0.05;
};

struct VerifySettings {
    int replicates = 5;
    std::uint64_t seed = 501;
};

struct CalibrationPlan {
    std::string name = "livestock-salt";
    std::filesystem::path output_dir = "calibration";
    double target_angle = 45.27;  // deg
    double scale_h = 2.0;
    dem::Material particle = dem::salt();
    dem::Material wall = dem::stainless_steel();
    std::vector<PlanFactor> factors;
    double timestep_fraction = 0.2;
    double duration = 30.0;  // s, per rig run
    rigs::ReposeRig repose;
    double repose_shear_modulus = 1.9e8;  // Pa, particle G used by the repose rig only
    rigs::InclineRig incline;
    rigs::DropRig drop;
    ScreeningSettings screening;
    BenchSettings bench;
    AscentSettings ascent;
    RsmSettings rsm;
    VerifySettings verify;

    CalibrationPlan();

    /// Throws ErrorCode::InvalidPlan naming the first problem.
    void validate() const;
    const PlanFactor& factor(const std::string& key) const;
    std::size_t factor_index(const std::string& key) const;
    std::vector<double> baselines() const;
};

/// Contact parameters of salt against stainless steel and itself.
std::vector<PlanFactor> default_factors();

/// Material set with every factor set from `values` (plan factor order).
rigs::MaterialSet materials_for(const CalibrationPlan& plan, const std::vector<double>& values);

nlohmann::json to_json(const CalibrationPlan& plan);
/// Missing keys keep their defaults; unknown keys are an error.
CalibrationPlan plan_from_json(const nlohmann::json& j);
/// Reads a plan file; `//` and `/* */` comments are allowed.
CalibrationPlan load_plan(const std::filesystem::path& file);
/// The default plan as a commented plan file.
std::string plan_template();

std::string to_string(Parameter p);
std::string to_string(BenchMethod m);

}  // namespace demcal::pipeline

#endif  // DEMCAL_PIPELINE_PLAN_HPP
