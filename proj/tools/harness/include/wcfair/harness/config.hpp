#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace wcfair::harness {

enum class ObjectiveSelection { kRawlsian, kUtilitarian, kBoth };

std::string to_string(ObjectiveSelection selection);
ObjectiveSelection parse_objective_selection(const std::string& text);

struct ExperimentConfig {
  std::filesystem::path dataset;
  std::vector<std::string> features;
  std::string group_column;
  ObjectiveSelection objective = ObjectiveSelection::kBoth;
  std::vector<std::size_t> k_range = {4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15};
  std::vector<double> lambdas = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  double delta = 0.01;
  int p = 2;
  std::size_t restarts = 10;
  std::uint64_t seed = 0;
  std::filesystem::path output_dir = "results";
  double lp_tolerance = 1e-7;
  std::optional<std::size_t> subsample;
  bool normalize = true;
  std::size_t workers = 1;

  friend bool operator==(const ExperimentConfig&,
                         const ExperimentConfig&) = default;
};

// Throws UsageError naming the field.
void validate(const ExperimentConfig& config);

nlohmann::json to_json(const ExperimentConfig& config);
// Unknown keys and mistyped values raise UsageError naming the field.
ExperimentConfig config_from_json(const nlohmann::json& json);
// Syntax errors report the line and column.
ExperimentConfig load_config(const std::filesystem::path& path);
void save_config(const ExperimentConfig& config,
                 const std::filesystem::path& path);

// "4-12", "4,6,8" or a mix such as "4-6,10".
std::vector<std::size_t> parse_k_range(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);

}  // namespace wcfair::harness
