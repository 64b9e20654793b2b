#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "wcfair/model.hpp"
#include "wcfair/random.hpp"

namespace wcfair::testing {

// Two-color instance from rows of coordinates.
inline Instance make_instance(const std::vector<std::vector<double>>& points,
                              const std::vector<ColorId>& colors,
                              std::size_t num_colors = 2) {
  const std::size_t d = points.front().size();
  Matrix m(points.size(), d);
  for (std::size_t j = 0; j < points.size(); ++j) {
    for (std::size_t c = 0; c < d; ++c) m(j, c) = points[j][c];
  }
  std::vector<std::string> names;
  for (std::size_t h = 0; h < num_colors; ++h) names.push_back("c" + std::to_string(h));
  return Instance(std::move(m), colors, std::move(names));
}

// Uniform points in [0, 1]^d; color j % colors, so every color is present
// once n >= colors.
inline Instance random_instance(std::size_t n, std::size_t d,
                                std::size_t colors, std::uint64_t seed) {
  Rng rng(seed);
  Matrix m(n, d);
  for (double& v : m.data()) v = rng.uniform();
  std::vector<ColorId> c(n);
  for (std::size_t j = 0; j < n; ++j) c[j] = j % colors;
  // Shuffle colors so they are not aligned with the geometry.
  for (std::size_t j = n; j > 1; --j) std::swap(c[j - 1], c[rng.below(j)]);
  std::vector<std::string> names;
  for (std::size_t h = 0; h < colors; ++h) names.push_back("c" + std::to_string(h));
  return Instance(std::move(m), std::move(c), std::move(names));
}

// Instance of two coincident-point blobs of `per_blob` points each, blue at
// the origin and red at distance `sep` on the first axis.
inline Instance two_blobs(std::size_t per_blob, double sep) {
  Matrix m(2 * per_blob, 1);
  std::vector<ColorId> c(2 * per_blob);
  for (std::size_t j = 0; j < per_blob; ++j) {
    m(j, 0) = 0.0;
    c[j] = 0;
    m(per_blob + j, 0) = sep;
    c[per_blob + j] = 1;
  }
  return Instance(std::move(m), std::move(c), {"blue", "red"});
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    path_ = std::filesystem::temp_directory_path() /
            ("wcfair_" + tag + "_" + std::to_string(::getpid()) + "_" +
             std::to_string(testing_counter()++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }

  std::filesystem::path write(const std::string& name,
                              const std::string& text) const {
    const auto p = path_ / name;
    std::ofstream(p, std::ios::binary) << text;
    return p;
  }

 private:
  static std::size_t& testing_counter() {
    static std::size_t counter = 0;
    return counter;
  }
  std::filesystem::path path_;
};

}  // namespace wcfair::testing
