#ifndef DEMCAL_RSM_IO_HPP
#define DEMCAL_RSM_IO_HPP

#include <filesystem>

#include <json.hpp>

#include "demcal/rsm/poly.hpp"
#include "demcal/rsm/quad.hpp"

namespace demcal::rsm {

/// {"coefficients": {"1": .., "A": .., ...}, "active": [...], "coding": [{name, low, high, center, step}]}
nlohmann::json to_json(const QuadModel& model);
QuadModel quad_model_from_json(const nlohmann::json& j);

nlohmann::json to_json(const PolyFit& fit);
nlohmann::json to_json(const AnovaTable& table);
nlohmann::json to_json(const FitMetrics& m);

/// source,sum_of_squares,df,mean_square,f_value,p_value
void write_anova_csv(const std::filesystem::path& file, const AnovaTable& table);

}  // namespace demcal::rsm

#endif  // DEMCAL_RSM_IO_HPP
