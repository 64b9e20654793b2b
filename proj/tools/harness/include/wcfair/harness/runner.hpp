#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <ostream>
#include <vector>

#include "wcfair/harness/config.hpp"
#include "wcfair/model.hpp"
#include "wcfair/pipeline.hpp"

namespace wcfair::harness {

inline constexpr const char* kVersion = "0.1.0";

struct RunSummary {
  std::filesystem::path results;
  std::filesystem::path metadata;
  std::filesystem::path dominance;
  std::size_t rows = 0;
  std::size_t failures = 0;
  std::size_t flagged = 0;  // rows carrying any flag, failures included
};

// Objectives selected by the config, rawlsian first.
std::vector<Objective> selected_objectives(ObjectiveSelection selection);

// Loads (and optionally subsamples) the dataset named by the config.
Instance load_dataset(const ExperimentConfig& config);

// Runs every (objective, k, lambda) cell: the matching algorithm plus the
// vanilla, weighted and socially fair baselines. Writes results.csv,
// dominance.csv and metadata.json into config.output_dir. Rows appear in
// config order whatever the worker count. A failing cell yields flagged rows
// and the sweep goes on.
RunSummary run_experiment(const ExperimentConfig& config,
                          std::ostream* log = nullptr);

// Same on an already loaded instance.
RunSummary run_experiment(const ExperimentConfig& config,
                          const Instance& instance,
                          std::ostream* log = nullptr);

// Runs task(0..count-1) on up to `workers` threads and hands results to
// `sink` in index order as soon as every earlier index is done.
template <typename T>
void ordered_parallel(std::size_t count, std::size_t workers,
                      const std::function<T(std::size_t)>& task,
                      const std::function<void(std::size_t, T&)>& sink);

}  // namespace wcfair::harness

#include "wcfair/harness/detail/ordered_parallel.hpp"
