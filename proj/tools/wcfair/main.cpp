// wcfair: fair-assignment clustering experiments.
//
//   wcfair run --dataset data/adult.csv --features age,education-num
//              --group gender --k 4-12 --lambda 0.5 --out results/adult
//   wcfair plot --results results/adult/results.csv --objective rawlsian
//               --lambda 0.5 --out adult_rawlsian.svg
//   wcfair gapreport --results results/adult/results.csv
//   wcfair oracle-check --instances 50

#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "wcfair/error.hpp"
#include "wcfair/harness/config.hpp"
#include "wcfair/harness/gapreport.hpp"
#include "wcfair/harness/oracle.hpp"
#include "wcfair/harness/plot.hpp"
#include "wcfair/harness/runner.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

using namespace wcfair;
using namespace wcfair::harness;

std::vector<std::string> split_names(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    if (!part.empty()) out.push_back(part);
  }
  return out;
}

Objective parse_objective(const std::string& text) {
  if (text == "rawlsian") return Objective::kRawlsian;
  if (text == "utilitarian") return Objective::kUtilitarian;
  throw UsageError("objective must be rawlsian or utilitarian");
}

struct RunFlags {
  std::string config;
  std::string dataset;
  std::string features;
  std::string group;
  std::string objective;
  std::string k;
  std::string lambda;
  double delta = 0;
  int p = 2;
  std::size_t restarts = 10;
  std::uint64_t seed = 0;
  std::string out;
  double lp_tolerance = 1e-7;
  std::size_t subsample = 0;
  bool no_normalize = false;
  std::size_t workers = 1;
  std::string save_config;
  bool quiet = false;
};

ExperimentConfig build_config(const RunFlags& f, const CLI::App& cmd) {
  ExperimentConfig c;
  if (!f.config.empty()) c = load_config(f.config);
  auto given = [&](const char* name) { return cmd.count(name) > 0; };
  if (given("--dataset")) c.dataset = f.dataset;
  if (given("--features")) c.features = split_names(f.features);
  if (given("--group")) c.group_column = f.group;
  if (given("--objective")) c.objective = parse_objective_selection(f.objective);
  if (given("--k")) c.k_range = parse_k_range(f.k);
  if (given("--lambda")) c.lambdas = parse_double_list(f.lambda);
  if (given("--delta")) c.delta = f.delta;
  if (given("--p")) c.p = f.p;
  if (given("--restarts")) c.restarts = f.restarts;
  if (given("--seed")) c.seed = f.seed;
  if (given("--out")) c.output_dir = f.out;
  if (given("--lp-tolerance")) c.lp_tolerance = f.lp_tolerance;
  if (given("--subsample")) c.subsample = f.subsample;
  if (given("--no-normalize")) c.normalize = false;
  if (given("--workers")) c.workers = f.workers;
  validate(c);
  return c;
}

int exit_code(const Error& e) {
  switch (e.category()) {
    case Error::Category::kUsage:
      return kExitUsage;
    case Error::Category::kData:
      return kExitData;
    case Error::Category::kInternal:
      return kExitInternal;
  }
  return kExitInternal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fair-assignment clustering: Rawlsian and Utilitarian "
               "objectives, baselines and experiment sweeps"};
  app.require_subcommand(1);

  RunFlags rf;
  CLI::App* run = app.add_subcommand("run", "Sweep k and lambda, write results");
  run->add_option("--config", rf.config, "JSON experiment config");
  run->add_option("--dataset", rf.dataset, "CSV file with a header row");
  run->add_option("--features", rf.features, "Comma-separated feature columns");
  run->add_option("--group", rf.group, "Group (color) column");
  run->add_option("--objective", rf.objective, "rawlsian, utilitarian or both");
  run->add_option("--k", rf.k, "k values, e.g. 4-12 or 4,8,12");
  run->add_option("--lambda", rf.lambda, "Comma-separated lambda values");
  run->add_option("--delta", rf.delta, "alpha_h = beta_h = delta * r_h");
  run->add_option("--p", rf.p, "Distance exponent (1 or 2)");
  run->add_option("--restarts", rf.restarts, "Center restarts per method");
  run->add_option("--seed", rf.seed, "Seed for subsample, centers, normalization");
  run->add_option("--out", rf.out, "Output directory");
  run->add_option("--lp-tolerance", rf.lp_tolerance, "LP optimality tolerance");
  run->add_option("--subsample", rf.subsample, "Uniform subsample size");
  run->add_flag("--no-normalize", rf.no_normalize,
                "Skip the normalization factor");
  run->add_option("--workers", rf.workers, "Worker threads");
  run->add_option("--save-config", rf.save_config,
                  "Write the effective config to this file");
  run->add_flag("--quiet", rf.quiet, "No progress output");

  std::string plot_results, plot_objective = "rawlsian", plot_out;
  double plot_lambda = 0.5;
  CLI::App* plot = app.add_subcommand("plot", "SVG chart of objective vs k");
  plot->add_option("--results", plot_results, "results.csv")->required();
  plot->add_option("--objective", plot_objective, "rawlsian or utilitarian");
  plot->add_option("--lambda", plot_lambda, "lambda to plot");
  plot->add_option("--out", plot_out, "SVG output path")->required();

  std::string gap_results;
  double gap_tolerance = 1e-7;
  CLI::App* gap = app.add_subcommand("gapreport", "Rounding gaps and bounds");
  gap->add_option("--results", gap_results, "results.csv")->required();
  gap->add_option("--tolerance", gap_tolerance, "Slack on both gap checks");

  OracleConfig oc;
  CLI::App* oracle = app.add_subcommand(
      "oracle-check", "Compare LP and rounding against brute force on tiny "
                      "instances");
  oracle->add_option("--instances", oc.instances, "Number of random instances");
  oracle->add_option("--min-n", oc.min_n, "Smallest instance");
  oracle->add_option("--max-n", oc.max_n, "Largest instance");
  oracle->add_option("--k", oc.k, "Centers");
  oracle->add_option("--colors", oc.colors, "Colors");
  oracle->add_option("--seed", oc.seed, "Seed");
  oracle->add_option("--lp-tolerance", oc.lp_tolerance, "LP tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run) {
      const ExperimentConfig config = build_config(rf, *run);
      if (!rf.save_config.empty()) save_config(config, rf.save_config);
      const RunSummary summary =
          run_experiment(config, rf.quiet ? nullptr : &std::cerr);
      std::cout << "wrote " << summary.rows << " rows to "
                << summary.results.string() << " (" << summary.failures
                << " failed, " << summary.flagged << " flagged)\n";
      return kExitOk;
    }
    if (*plot) {
      write_plot(plot_results, parse_objective(plot_objective), plot_lambda,
                 plot_out);
      std::cout << "wrote " << plot_out << '\n';
      return kExitOk;
    }
    if (*gap) {
      const GapReport report = gap_report(read_results(gap_results), gap_tolerance);
      print_gap_report(report, std::cout);
      return report.violations == 0 ? kExitOk : kExitInternal;
    }
    if (*oracle) {
      const OracleSummary summary = oracle_check(oc);
      print_oracle_summary(summary, std::cout);
      return summary.violations == 0 ? kExitOk : kExitInternal;
    }
  } catch (const Error& e) {
    std::cerr << "wcfair: " << e.what() << '\n';
    return exit_code(e);
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "wcfair: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "wcfair: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}
