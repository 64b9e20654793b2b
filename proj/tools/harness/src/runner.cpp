#include "wcfair/harness/runner.hpp"

#include <chrono>
#include <fstream>
#include <map>
#include <memory>

#include <json.hpp>

#include "wcfair/harness/results.hpp"

namespace wcfair::harness {
namespace {

using Clock = std::chrono::steady_clock;

constexpr CenterMethod kBaselines[] = {
    CenterMethod::kVanilla, CenterMethod::kWeighted, CenterMethod::kSociallyFair};

struct CenterJob {
  std::size_t objective = 0;  // index into the objective list
  std::size_t k = 0;
  CenterMethod method = CenterMethod::kVanilla;
};

struct CenterOutcome {
  std::shared_ptr<CenterSet> centers;
  double seconds = 0.0;
  std::string error;
};

struct Cell {
  std::size_t objective = 0;
  std::size_t k = 0;
  double lambda = 0.0;
};

struct CellOutcome {
  std::vector<RunResult> results;
  std::vector<FailedRun> failures;
  std::vector<bool> failed;  // per method slot
};

Params cell_params(const ExperimentConfig& config, const Instance& instance,
                   std::size_t k, double lambda) {
  Params params = Params::with_delta(instance, config.delta);
  params.p = config.p;
  params.k = k;
  params.lambda = lambda;
  params.restarts = config.restarts;
  params.seed = config.seed;
  params.lp_tolerance = config.lp_tolerance;
  return params;
}

std::string describe(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) {
    switch (err->category()) {
      case Error::Category::kUsage:
        return std::string("usage: ") + e.what();
      case Error::Category::kData:
        return std::string("data: ") + e.what();
      case Error::Category::kInternal:
        return std::string("internal: ") + e.what();
    }
  }
  return std::string("internal: ") + e.what();
}

}  // namespace

std::vector<Objective> selected_objectives(ObjectiveSelection selection) {
  switch (selection) {
    case ObjectiveSelection::kRawlsian:
      return {Objective::kRawlsian};
    case ObjectiveSelection::kUtilitarian:
      return {Objective::kUtilitarian};
    case ObjectiveSelection::kBoth:
      break;
  }
  return {Objective::kRawlsian, Objective::kUtilitarian};
}

Instance load_dataset(const ExperimentConfig& config) {
  Instance instance =
      load_instance(config.dataset, config.features, config.group_column);
  if (config.subsample && *config.subsample < instance.n()) {
    instance = subsample(instance, *config.subsample, config.seed);
  }
  return instance;
}

RunSummary run_experiment(const ExperimentConfig& config, std::ostream* log) {
  validate(config);
  return run_experiment(config, load_dataset(config), log);
}

RunSummary run_experiment(const ExperimentConfig& config,
                          const Instance& raw, std::ostream* log) {
  validate(config);
  for (const std::size_t k : config.k_range) {
    if (k > raw.n()) {
      throw UsageError("k: " + std::to_string(k) + " exceeds the " +
                       std::to_string(raw.n()) + " points of the dataset");
    }
  }
  const std::vector<Objective> objectives =
      selected_objectives(config.objective);

  // One normalized copy of the instance per objective.
  std::vector<Instance> instances;
  std::vector<double> factors;
  for (const Objective objective : objectives) {
    double factor = 1.0;
    if (config.normalize) {
      factor = normalization_factor(
          raw, config.k_range, config.p,
          objective == Objective::kRawlsian ? NormalizationMode::kRawlsian
                                            : NormalizationMode::kUtilitarian,
          config.seed, config.delta);
    }
    factors.push_back(factor);
    instances.push_back(factor == 1.0 ? raw : apply_normalization(raw, factor));
  }

  std::filesystem::create_directories(config.output_dir);
  RunSummary summary;
  summary.results = config.output_dir / "results.csv";
  summary.metadata = config.output_dir / "metadata.json";
  summary.dominance = config.output_dir / "dominance.csv";

  // Center sets do not depend on lambda: compute each once.
  std::vector<CenterJob> jobs;
  for (std::size_t o = 0; o < objectives.size(); ++o) {
    for (const std::size_t k : config.k_range) {
      for (const CenterMethod m : kBaselines) jobs.push_back({o, k, m});
    }
  }
  std::map<std::tuple<std::size_t, std::size_t, CenterMethod>, CenterOutcome>
      centers;
  ordered_parallel<CenterOutcome>(
      jobs.size(), config.workers,
      [&](std::size_t i) {
        const CenterJob& job = jobs[i];
        const Instance& inst = instances[job.objective];
        const Params params = cell_params(config, inst, job.k, 0.5);
        CenterOutcome out;
        const auto start = Clock::now();
        try {
          out.centers = std::make_shared<CenterSet>(
              best_of_restarts(inst, job.k, job.method, params.restarts,
                               params.seed, lloyd_options(params)));
        } catch (const std::exception& e) {
          out.error = "centers: " + describe(e);
        }
        out.seconds =
            std::chrono::duration<double>(Clock::now() - start).count();
        return out;
      },
      [&](std::size_t i, CenterOutcome& out) {
        const CenterJob& job = jobs[i];
        if (log) {
          *log << "centers " << to_string(objectives[job.objective]) << " k="
               << job.k << ' ' << to_string(job.method) << '\n';
        }
        centers[{job.objective, job.k, job.method}] = std::move(out);
      });

  std::vector<Cell> cells;
  for (std::size_t o = 0; o < objectives.size(); ++o) {
    for (const std::size_t k : config.k_range) {
      for (const double lambda : config.lambdas) cells.push_back({o, k, lambda});
    }
  }

  std::ofstream results_out(summary.results);
  std::ofstream dominance_out(summary.dominance);
  if (!results_out || !dominance_out) {
    throw DataError("cannot write into " + config.output_dir.string());
  }
  ResultsWriter writer(results_out, raw.num_colors(), config.delta);
  dominance_out << "objective,k,lambda,method,value,ours,ours_value,ours_le\n";

  ordered_parallel<CellOutcome>(
      cells.size(), config.workers,
      [&](std::size_t i) {
        const Cell& cell = cells[i];
        const Objective objective = objectives[cell.objective];
        const Instance& inst = instances[cell.objective];
        const Params params = cell_params(config, inst, cell.k, cell.lambda);
        CellOutcome out;
        auto fail = [&](const std::string& method, const std::string& error) {
          out.failures.push_back(
              {method, objective, cell.k, cell.lambda, error});
          out.failed.push_back(true);
        };
        // Our algorithm first, then the three baselines.
        {
          const CenterOutcome& c = centers.at(
              {cell.objective, cell.k, center_method_for(objective)});
          if (!c.centers) {
            fail(method_name(objective), c.error);
          } else {
            try {
              RunResult r = objective == Objective::kRawlsian
                                ? rawlsian_alg(inst, params, *c.centers)
                                : utilitarian_alg(inst, params, *c.centers);
              r.seconds.centers = c.seconds;
              r.seconds.total += c.seconds;
              r.normalization_factor = factors[cell.objective];
              out.results.push_back(std::move(r));
              out.failed.push_back(false);
            } catch (const std::exception& e) {
              fail(method_name(objective), describe(e));
            }
          }
        }
        for (const CenterMethod m : kBaselines) {
          const CenterOutcome& c = centers.at({cell.objective, cell.k, m});
          if (!c.centers) {
            fail(std::string(to_string(m)), c.error);
            continue;
          }
          try {
            RunResult r = evaluate_baseline(inst, params, *c.centers, objective);
            r.seconds.centers = c.seconds;
            r.seconds.total = c.seconds;
            r.normalization_factor = factors[cell.objective];
            out.results.push_back(std::move(r));
            out.failed.push_back(false);
          } catch (const std::exception& e) {
            fail(std::string(to_string(m)), describe(e));
          }
        }
        return out;
      },
      [&](std::size_t i, CellOutcome& out) {
        const Cell& cell = cells[i];
        std::size_t r = 0;
        std::size_t f = 0;
        for (const bool failed : out.failed) {
          if (failed) {
            writer.write(out.failures[f++], config.p, config.seed);
            ++summary.failures;
            ++summary.flagged;
          } else {
            const RunResult& res = out.results[r++];
            writer.write(res);
            if (!res.flags.empty()) ++summary.flagged;
          }
          ++summary.rows;
        }
        const Objective objective = objectives[cell.objective];
        if (!out.results.empty() &&
            out.results.front().method == method_name(objective)) {
          const DominanceTable table = dominance_check(out.results, objective);
          for (const auto& row : table.rows) {
            if (row.method == table.ours) continue;
            dominance_out << to_string(objective) << ',' << cell.k << ','
                          << format_double(cell.lambda) << ',' << row.method
                          << ',' << format_double(row.value) << ','
                          << table.ours << ','
                          << format_double(table.our_value) << ','
                          << (row.beaten_or_tied ? 1 : 0) << '\n';
          }
          dominance_out.flush();
        }
        if (log) {
          *log << to_string(objective) << " k=" << cell.k
               << " lambda=" << cell.lambda << " done\n";
        }
      });

  nlohmann::json meta;
  meta["version"] = kVersion;
  meta["config"] = to_json(config);
  meta["n"] = raw.n();
  meta["d"] = raw.d();
  for (ColorId h = 0; h < raw.num_colors(); ++h) {
    meta["colors"].push_back({{"index", h},
                              {"name", raw.color_names()[h]},
                              {"count", raw.count(h)}});
  }
  for (std::size_t o = 0; o < objectives.size(); ++o) {
    meta["normalization_factor"][std::string(to_string(objectives[o]))] =
        factors[o];
  }
  meta["seeds"] = {{"subsample", config.seed},
                   {"normalization", config.seed},
                   {"restarts_first", config.seed},
                   {"restarts_last", config.seed + config.restarts - 1}};
  meta["lp"] = {{"solver", "built-in bounded simplex"},
                {"tolerance", config.lp_tolerance},
                {"prune_threshold", kAssignmentPruneThreshold}};
  meta["columns"] = result_columns(raw.num_colors());
  meta["rows"] = summary.rows;
  meta["failures"] = summary.failures;
  std::ofstream meta_out(summary.metadata);
  if (!meta_out) throw DataError("cannot write " + summary.metadata.string());
  meta_out << meta.dump(2) << '\n';
  return summary;
}

}  // namespace wcfair::harness
