#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "wcfair/model.hpp"
#include "wcfair/random.hpp"

namespace bench {

// Uniform points in the unit square, two colors in a 3:1 ratio.
inline wcfair::Instance uniform_instance(std::size_t n, std::uint64_t seed) {
  wcfair::Rng rng(seed);
  wcfair::Matrix m(n, 2);
  for (double& v : m.data()) v = rng.uniform();
  std::vector<wcfair::ColorId> c(n);
  for (std::size_t j = 0; j < n; ++j) c[j] = j % 4 == 0 ? 1 : 0;
  return wcfair::Instance(std::move(m), std::move(c), {"a", "b"});
}

inline wcfair::Matrix random_centers(std::size_t k, std::uint64_t seed) {
  wcfair::Rng rng(seed);
  wcfair::Matrix c(k, 2);
  for (double& v : c.data()) v = rng.uniform();
  return c;
}

}  // namespace bench
