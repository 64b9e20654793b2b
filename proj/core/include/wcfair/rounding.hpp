#pragma once

#include <cstddef>
#include <vector>

#include "wcfair/flow.hpp"
#include "wcfair/lp.hpp"
#include "wcfair/matrix.hpp"
#include "wcfair/model.hpp"

namespace wcfair {

struct IntegralAssignment {
  std::vector<std::size_t> assignment;             // point -> center
  std::vector<std::vector<std::size_t>> color_mass;  // [i][h]
  std::vector<std::size_t> sizes;                  // |C_i|

  // 0/1 matrix, k x n.
  Matrix x() const;
};

// Masses within this distance of an integer are treated as that integer
// before taking floors and ceilings.
inline constexpr double kMassSnap = 1e-9;

double snap_mass(double mass);

// sum_{j in P^h} x_ij, k x |H|.
Matrix color_masses(const Matrix& x, const Instance& instance);

// One network per color h: point nodes of P^h (supply 1), nodes v_i^h with
// demand floor(m_ih) and a sink absorbing the rest. The arc v_i^h -> t^h has
// capacity ceil(m_ih) - floor(m_ih).
std::vector<FlowNetwork> build_rawlsian_networks(
    const FractionalSolution& xfrac, const Instance& instance,
    const Matrix& centers, int p, Metric metric = Metric::kEuclidean);

// Single network with point, color-center, center and sink layers.
FlowNetwork build_utilitarian_network(const FractionalSolution& xfrac,
                                      const Instance& instance,
                                      const Matrix& centers, int p,
                                      Metric metric = Metric::kEuclidean);

IntegralAssignment rawlsian_round(const FractionalSolution& xfrac,
                                  const Instance& instance,
                                  const Matrix& centers, int p,
                                  Metric metric = Metric::kEuclidean);

IntegralAssignment utilitarian_round(const FractionalSolution& xfrac,
                                     const Instance& instance,
                                     const Matrix& centers, int p,
                                     Metric metric = Metric::kEuclidean);

// Reads the point -> center choice off a solved rounding network.
void collect_assignment(const FlowNetwork& network, const Flow& flow,
                        std::vector<std::size_t>& assignment);

}  // namespace wcfair
