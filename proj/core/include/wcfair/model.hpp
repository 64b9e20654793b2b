#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "wcfair/error.hpp"
#include "wcfair/matrix.hpp"

namespace wcfair {

using ColorId = std::size_t;

// Distance used by every objective. Hamming exists only for the small
// hand-computable instances; everything else is Euclidean.
enum class Metric { kEuclidean, kHamming };

// A colored point set. Immutable once constructed.
class Instance {
 public:
  // Throws DataError when an invariant fails: n >= 1, d >= 1, at least two
  // colors, every color id < color_names.size(), every color non-empty.
  Instance(Matrix features, std::vector<ColorId> color_of,
           std::vector<std::string> color_names);

  std::size_t n() const noexcept { return features_.rows(); }
  std::size_t d() const noexcept { return features_.cols(); }
  std::size_t num_colors() const noexcept { return color_names_.size(); }

  const Matrix& features() const noexcept { return features_; }
  std::span<const double> point(std::size_t j) const { return features_.row(j); }

  ColorId color_of(std::size_t j) const { return color_of_[j]; }
  const std::vector<ColorId>& colors() const noexcept { return color_of_; }
  const std::vector<std::string>& color_names() const noexcept {
    return color_names_;
  }

  // n_h
  std::size_t count(ColorId h) const { return counts_[h]; }
  const std::vector<std::size_t>& counts() const noexcept { return counts_; }
  // r_h = n_h / n
  double proportion(ColorId h) const {
    return static_cast<double>(counts_[h]) / static_cast<double>(n());
  }

  // Indices of the points of color h, ascending.
  const std::vector<std::size_t>& members(ColorId h) const {
    return members_[h];
  }

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  Matrix features_;
  std::vector<ColorId> color_of_;
  std::vector<std::string> color_names_;
  std::vector<std::size_t> counts_;
  std::vector<std::vector<std::size_t>> members_;
};

struct Params {
  int p = 2;
  double lambda = 0.5;
  std::vector<double> alpha;  // per color, upper proportional slack
  std::vector<double> beta;   // per color, lower proportional slack
  std::size_t k = 4;
  double lp_tolerance = 1e-7;
  std::size_t restarts = 10;
  std::uint64_t seed = 0;
  Metric metric = Metric::kEuclidean;
  std::size_t max_iters = 100;  // Lloyd-style iteration cap
  double tol = 1e-6;            // Lloyd relative-improvement tolerance

  // alpha_h = beta_h = delta * r_h for every color.
  static Params with_delta(const Instance& instance, double delta);
};

// Throws UsageError naming the offending field.
void validate(const Params& params, const Instance& instance);

// A center set plus an integral assignment. Clusters may be empty.
struct Solution {
  Matrix centers;                       // k x d
  std::vector<std::size_t> assignment;  // point -> center index in [0, k)

  std::size_t k() const noexcept { return centers.rows(); }
  friend bool operator==(const Solution&, const Solution&) = default;
};

class LoadError : public DataError {
 public:
  enum class Kind {
    kMissingFile,
    kMissingColumn,
    kEmptyCell,
    kNonNumeric,
    kRaggedRow,
    kSingleColor,
    kNoRows,
  };

  LoadError(Kind kind, const std::string& what) : DataError(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

// Reads a comma-separated file with a header row. Colors are numbered in order
// of first appearance. Rows with an empty selected cell are rejected.
Instance load_instance(const std::filesystem::path& csv_path,
                       std::span<const std::string> feature_columns,
                       const std::string& group_column);

// Seeded uniform sample without replacement of `size` points, kept in their
// original order. Colors keep their original numbering; throws DataError if
// the sample loses a color.
Instance subsample(const Instance& instance, std::size_t size,
                   std::uint64_t seed);

enum class NormalizationMode { kRawlsian, kUtilitarian };

// Mean over k in k_range of
//   (distance term of a vanilla k-means solution) / (sum_h V_h / n_h),
// where the distance term is the overall average d^p for kRawlsian and the
// sum of per-group averages for kUtilitarian. The vanilla solution is one
// seeded k-means run per k. Violations use alpha_h = beta_h = delta * r_h.
double normalization_factor(const Instance& instance,
                            std::span<const std::size_t> k_range, int p,
                            NormalizationMode mode, std::uint64_t seed,
                            double delta = 0.0);

// Divides every feature by sqrt(factor), so squared distances shrink by factor.
Instance apply_normalization(const Instance& instance, double factor);

}  // namespace wcfair
