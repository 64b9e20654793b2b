#include "wcfair/harness/config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "wcfair/error.hpp"

namespace wcfair::harness {

std::string to_string(ObjectiveSelection selection) {
  switch (selection) {
    case ObjectiveSelection::kRawlsian:
      return "rawlsian";
    case ObjectiveSelection::kUtilitarian:
      return "utilitarian";
    case ObjectiveSelection::kBoth:
      return "both";
  }
  return "both";
}

ObjectiveSelection parse_objective_selection(const std::string& text) {
  if (text == "rawlsian") return ObjectiveSelection::kRawlsian;
  if (text == "utilitarian") return ObjectiveSelection::kUtilitarian;
  if (text == "both") return ObjectiveSelection::kBoth;
  throw UsageError("objective must be rawlsian, utilitarian or both, got '" +
                   text + "'");
}

void validate(const ExperimentConfig& config) {
  if (config.dataset.empty()) throw UsageError("dataset: path is required");
  if (config.features.empty()) {
    throw UsageError("features: at least one column is required");
  }
  if (config.group_column.empty()) throw UsageError("group: column is required");
  if (config.k_range.empty()) throw UsageError("k: range is empty");
  for (const std::size_t k : config.k_range) {
    if (k == 0) throw UsageError("k: values must be positive");
  }
  if (config.lambdas.empty()) throw UsageError("lambda: list is empty");
  for (const double l : config.lambdas) {
    if (!(l >= 0.0 && l <= 1.0)) throw UsageError("lambda: values must be in [0, 1]");
  }
  if (!(config.delta >= 0.0)) throw UsageError("delta: must be >= 0");
  if (config.p != 1 && config.p != 2) throw UsageError("p: must be 1 or 2");
  if (config.restarts == 0) throw UsageError("restarts: must be positive");
  if (!(config.lp_tolerance > 0.0)) throw UsageError("lp_tolerance: must be > 0");
  if (config.subsample && *config.subsample == 0) {
    throw UsageError("subsample: must be positive");
  }
  if (config.workers == 0) throw UsageError("workers: must be positive");
}

nlohmann::json to_json(const ExperimentConfig& config) {
  nlohmann::json j;
  j["dataset"] = config.dataset.string();
  j["features"] = config.features;
  j["group"] = config.group_column;
  j["objective"] = to_string(config.objective);
  j["k"] = config.k_range;
  j["lambda"] = config.lambdas;
  j["delta"] = config.delta;
  j["p"] = config.p;
  j["restarts"] = config.restarts;
  j["seed"] = config.seed;
  j["output_dir"] = config.output_dir.string();
  j["lp_tolerance"] = config.lp_tolerance;
  j["subsample"] = config.subsample ? nlohmann::json(*config.subsample)
                                    : nlohmann::json(nullptr);
  j["normalize"] = config.normalize;
  j["workers"] = config.workers;
  return j;
}

namespace {

template <typename T>
T field(const nlohmann::json& j, const std::string& name) {
  try {
    return j.at(name).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config field '" + name + "': " + e.what());
  }
}

}  // namespace

ExperimentConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw UsageError("config: top level must be an object");
  static const std::set<std::string> known = {
      "dataset", "features",     "group",     "objective", "k",
      "lambda",  "delta",        "p",         "restarts",  "seed",
      "output_dir", "lp_tolerance", "subsample", "normalize", "workers"};
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw UsageError("config: unknown field '" + key + "'");
  }
  ExperimentConfig c;
  auto has = [&](const char* name) { return j.contains(name); };
  if (has("dataset")) c.dataset = field<std::string>(j, "dataset");
  if (has("features")) c.features = field<std::vector<std::string>>(j, "features");
  if (has("group")) c.group_column = field<std::string>(j, "group");
  if (has("objective")) {
    c.objective = parse_objective_selection(field<std::string>(j, "objective"));
  }
  if (has("k")) c.k_range = field<std::vector<std::size_t>>(j, "k");
  if (has("lambda")) c.lambdas = field<std::vector<double>>(j, "lambda");
  if (has("delta")) c.delta = field<double>(j, "delta");
  if (has("p")) c.p = field<int>(j, "p");
  if (has("restarts")) c.restarts = field<std::size_t>(j, "restarts");
  if (has("seed")) c.seed = field<std::uint64_t>(j, "seed");
  if (has("output_dir")) c.output_dir = field<std::string>(j, "output_dir");
  if (has("lp_tolerance")) c.lp_tolerance = field<double>(j, "lp_tolerance");
  if (has("subsample") && !j.at("subsample").is_null()) {
    c.subsample = field<std::size_t>(j, "subsample");
  }
  if (has("normalize")) c.normalize = field<bool>(j, "normalize");
  if (has("workers")) c.workers = field<std::size_t>(j, "workers");
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw UsageError(path.string() + ":" + std::to_string(line) + ":" +
                     std::to_string(column) + ": invalid JSON");
  }
  return config_from_json(j);
}

void save_config(const ExperimentConfig& config,
                 const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  out << to_json(config).dump(2) << '\n';
}

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) {
    if (!cur.empty()) parts.push_back(cur);
  }
  return parts;
}

std::size_t parse_size(const std::string& s, const std::string& context) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw UsageError(context + ": '" + s + "' is not a non-negative integer");
  }
  return v;
}

}  // namespace

std::vector<std::size_t> parse_k_range(const std::string& text) {
  std::vector<std::size_t> out;
  for (const auto& part : split(text, ',')) {
    const auto dash = part.find('-');
    if (dash == std::string::npos) {
      out.push_back(parse_size(part, "k"));
      continue;
    }
    const std::size_t lo = parse_size(part.substr(0, dash), "k");
    const std::size_t hi = parse_size(part.substr(dash + 1), "k");
    if (lo > hi) throw UsageError("k: range '" + part + "' is decreasing");
    for (std::size_t k = lo; k <= hi; ++k) out.push_back(k);
  }
  if (out.empty()) throw UsageError("k: empty range");
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& part : split(text, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != part.size()) throw UsageError("'" + part + "' is not a number");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("empty number list");
  return out;
}

}  // namespace wcfair::harness
