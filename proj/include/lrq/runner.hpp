#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "lrq/config.hpp"
#include "lrq/pipeline.hpp"

namespace lrq {

nlohmann::json to_json(const ScalingVerdict& v);
nlohmann::json config_to_json(const ExperimentConfig& c);

// Rebuilds the key/value map from the "config" object of a summary.
ConfigMap config_map_from_json(const nlohmann::json& j);

// Reads either an INI config or a previous summary.json.
ConfigMap load_config_map(const std::string& path);

// Runs one experiment, writing the CSV series, summary.json and run.log into
// c.output_dir. Returns the summary. Errors from inner modules are recorded in
// the summary (when the output directory is usable) and then rethrown.
nlohmann::json run_experiment(const ExperimentConfig& c, std::ostream& log);

// Writes rows of (int, double) or (double, double) with a header.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns);

}  // namespace lrq
