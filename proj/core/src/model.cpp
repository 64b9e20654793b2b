#include "wcfair/model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "wcfair/random.hpp"

namespace wcfair {

Instance::Instance(Matrix features, std::vector<ColorId> color_of,
                   std::vector<std::string> color_names)
    : features_(std::move(features)),
      color_of_(std::move(color_of)),
      color_names_(std::move(color_names)) {
  if (features_.rows() == 0) throw DataError("instance has no points");
  if (features_.cols() == 0) throw DataError("instance has no features");
  if (color_of_.size() != features_.rows()) {
    throw DataError("color labels do not match the number of points");
  }
  if (color_names_.size() < 2) {
    throw DataError("instance needs at least two colors, got " +
                    std::to_string(color_names_.size()));
  }
  counts_.assign(color_names_.size(), 0);
  members_.assign(color_names_.size(), {});
  for (std::size_t j = 0; j < color_of_.size(); ++j) {
    const ColorId h = color_of_[j];
    if (h >= color_names_.size()) {
      throw DataError("point " + std::to_string(j) + " has color id " +
                      std::to_string(h) + " out of range");
    }
    ++counts_[h];
    members_[h].push_back(j);
  }
  for (std::size_t h = 0; h < counts_.size(); ++h) {
    if (counts_[h] == 0) {
      throw DataError("color '" + color_names_[h] + "' has no points");
    }
  }
}

Params Params::with_delta(const Instance& instance, double delta) {
  Params params;
  params.alpha.resize(instance.num_colors());
  params.beta.resize(instance.num_colors());
  for (ColorId h = 0; h < instance.num_colors(); ++h) {
    params.alpha[h] = delta * instance.proportion(h);
    params.beta[h] = delta * instance.proportion(h);
  }
  return params;
}

void validate(const Params& params, const Instance& instance) {
  if (params.p != 1 && params.p != 2) {
    throw UsageError("p must be 1 or 2, got " + std::to_string(params.p));
  }
  if (!(params.lambda >= 0.0 && params.lambda <= 1.0)) {
    throw UsageError("lambda must lie in [0, 1]");
  }
  if (params.k == 0 || params.k > instance.n()) {
    throw UsageError("k must satisfy 1 <= k <= n, got k=" +
                     std::to_string(params.k));
  }
  if (params.alpha.size() != instance.num_colors() ||
      params.beta.size() != instance.num_colors()) {
    throw UsageError("alpha/beta need one entry per color");
  }
  constexpr double kSlack = 1e-12;
  for (ColorId h = 0; h < instance.num_colors(); ++h) {
    const double r = instance.proportion(h);
    if (params.alpha[h] < 0.0 || params.beta[h] < 0.0) {
      throw UsageError("alpha/beta must be nonnegative");
    }
    if (r + params.alpha[h] > 1.0 + kSlack) {
      throw UsageError("r_h + alpha_h exceeds 1 for color '" +
                       instance.color_names()[h] + "'");
    }
    if (r - params.beta[h] < -kSlack) {
      throw UsageError("r_h - beta_h is negative for color '" +
                       instance.color_names()[h] + "'");
    }
  }
  if (!(params.lp_tolerance > 0.0)) {
    throw UsageError("lp_tolerance must be positive");
  }
  if (params.restarts == 0) throw UsageError("restarts must be positive");
  if (params.max_iters == 0) throw UsageError("max_iters must be positive");
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

// Splits one CSV record. Double-quoted fields may contain commas; a doubled
// quote inside a quoted field is a literal quote.
std::vector<std::string> split_record(std::string_view line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cell.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cell.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.emplace_back(trim(cell));
      cell.clear();
    } else {
      cell.push_back(c);
    }
  }
  cells.emplace_back(trim(cell));
  return cells;
}

std::size_t find_column(const std::vector<std::string>& header,
                        const std::string& name) {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) {
    throw LoadError(LoadError::Kind::kMissingColumn,
                    "column '" + name + "' not found in header");
  }
  return static_cast<std::size_t>(it - header.begin());
}

}  // namespace

Instance load_instance(const std::filesystem::path& csv_path,
                       std::span<const std::string> feature_columns,
                       const std::string& group_column) {
  std::ifstream in(csv_path, std::ios::binary);
  if (!in) {
    throw LoadError(LoadError::Kind::kMissingFile,
                    "cannot open '" + csv_path.string() + "'");
  }
  if (feature_columns.empty()) {
    throw LoadError(LoadError::Kind::kMissingColumn,
                    "no feature columns selected");
  }

  std::string line;
  auto next_line = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  };
  if (!next_line()) {
    throw LoadError(LoadError::Kind::kNoRows,
                    "'" + csv_path.string() + "' is empty");
  }
  // UTF-8 byte order mark.
  if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
  const std::vector<std::string> header = split_record(line);

  std::vector<std::size_t> feature_idx;
  for (const auto& name : feature_columns) {
    feature_idx.push_back(find_column(header, name));
  }
  const std::size_t group_idx = find_column(header, group_column);

  std::vector<double> values;
  std::vector<ColorId> colors;
  std::vector<std::string> names;
  std::unordered_map<std::string, ColorId> ids;

  std::size_t row = 0;  // 1-based data row number in messages
  while (next_line()) {
    if (line.empty()) continue;
    ++row;
    const auto cells = split_record(line);
    if (cells.size() != header.size()) {
      throw LoadError(LoadError::Kind::kRaggedRow,
                      "row " + std::to_string(row) + " has " +
                          std::to_string(cells.size()) + " cells, header has " +
                          std::to_string(header.size()));
    }
    for (std::size_t f = 0; f < feature_idx.size(); ++f) {
      const std::string& cell = cells[feature_idx[f]];
      if (cell.empty()) {
        throw LoadError(LoadError::Kind::kEmptyCell,
                        "empty cell in column '" + feature_columns[f] +
                            "' at row " + std::to_string(row));
      }
      double v = 0.0;
      const auto [ptr, ec] =
          std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc() || ptr != cell.data() + cell.size() ||
          !std::isfinite(v)) {
        throw LoadError(LoadError::Kind::kNonNumeric,
                        "non-numeric value '" + cell + "' in column '" +
                            feature_columns[f] + "' at row " +
                            std::to_string(row));
      }
      values.push_back(v);
    }
    const std::string& group = cells[group_idx];
    if (group.empty()) {
      throw LoadError(LoadError::Kind::kEmptyCell,
                      "empty cell in column '" + group_column + "' at row " +
                          std::to_string(row));
    }
    auto [it, inserted] = ids.try_emplace(group, names.size());
    if (inserted) names.push_back(group);
    colors.push_back(it->second);
  }

  if (row == 0) {
    throw LoadError(LoadError::Kind::kNoRows,
                    "'" + csv_path.string() + "' has no data rows");
  }
  if (names.size() < 2) {
    throw LoadError(LoadError::Kind::kSingleColor,
                    "column '" + group_column + "' has a single value '" +
                        names.front() + "'");
  }
  Matrix features(row, feature_idx.size(), std::move(values));
  return Instance(std::move(features), std::move(colors), std::move(names));
}

Instance subsample(const Instance& instance, std::size_t size,
                   std::uint64_t seed) {
  if (size == 0 || size > instance.n()) {
    throw UsageError("subsample size must lie in [1, n]");
  }
  if (size == instance.n()) return instance;
  // Partial Fisher-Yates, then restore file order.
  std::vector<std::size_t> order(instance.n());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  for (std::size_t i = 0; i < size; ++i) {
    const std::size_t j = i + rng.below(instance.n() - i);
    std::swap(order[i], order[j]);
  }
  order.resize(size);
  std::sort(order.begin(), order.end());

  Matrix features(size, instance.d());
  std::vector<ColorId> colors(size);
  for (std::size_t s = 0; s < size; ++s) {
    const auto src = instance.point(order[s]);
    std::copy(src.begin(), src.end(), features.row(s).begin());
    colors[s] = instance.color_of(order[s]);
  }
  return Instance(std::move(features), std::move(colors),
                  instance.color_names());
}

Instance apply_normalization(const Instance& instance, double factor) {
  if (!(factor > 0.0) || !std::isfinite(factor)) {
    throw UsageError("normalization factor must be positive and finite");
  }
  Matrix features = instance.features();
  const double scale = 1.0 / std::sqrt(factor);
  if (factor != 1.0) {
    for (double& v : features.data()) v *= scale;
  }
  return Instance(std::move(features), instance.colors(),
                  instance.color_names());
}

}  // namespace wcfair
