#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "nlcg/grid.hpp"
#include "nlcg/integrate.hpp"
#include "nlcg/model.hpp"
#include "nlcg/profile.hpp"

namespace nlcg {

struct OutputSpec {
    std::string trace_path = "trace.csv";
    bool field_dump = false;
    std::string field_path = "field.bin";
    std::string report_path = "report.json";
};

struct ExperimentConfig {
    ModelParams model;
    SolverConfig solver;
    ProfileSpec profile;
    Grid grid{64, 32.0};
    OutputSpec outputs;
};

// Parses and validates a config document, collecting every schema violation
// (not just the first). Missing optional blocks take documented defaults;
// the model block is required.
ExperimentConfig parse_experiment_config(const nlohmann::json& doc);
ExperimentConfig load_experiment_config(const std::string& path);

nlohmann::json to_json(const ExperimentConfig& cfg);

}  // namespace nlcg
