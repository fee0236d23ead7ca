#pragma once
// Shared helpers for the subcommand implementations.

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "commands.hpp"
#include "entroscope/genmodel.hpp"

namespace entroscope::cli {

// Loads, filters and sanity-checks the corpus; throws EmptyDataError when
// no entity survives ("no entities admitted").
CorpusIndex load_filtered_corpus(const CorpusOptions& options);

std::filesystem::path ensure_out_dir(const std::string& out_dir);

nlohmann::json read_json_file(const std::string& path);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& value);

GenParams parse_gen_params(const nlohmann::json& j);
ParamDist parse_param_dist(const nlohmann::json& j, const std::string& field);
PopulationSpec parse_population_spec(const nlohmann::json& j);

SimMode parse_mode(const std::string& text);
FeedbackWindow parse_window(const std::string& text);

}  // namespace entroscope::cli
