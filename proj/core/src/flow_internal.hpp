#pragma once

#include <vector>

#include "nirenberg/flow.hpp"

namespace nirenberg::detail {

inline double ramp(double x, double lo, double hi) {
  if (x <= lo) return 0.0;
  if (x >= hi) return 1.0;
  return (x - lo) / (hi - lo);
}

int sign_class(double v, double tol);

// Nearest critical point within radius for every bubble (-1 when none).
std::vector<int> assign_clusters(const Configuration& cfg, const FlowLandscape& land, double radius);

// Sub-region of V3 for a state whose bubbles all sit near critical points.
Region v3_subregion(const Configuration& cfg, const FlowLandscape& land, const std::vector<int>& cluster,
                    const FlowParams& params);

// Indices of bubble i's cluster (same boundary critical point).
std::vector<int> cluster_members(const Configuration& cfg, const std::vector<int>& cluster, int i);

Configuration sub_configuration(const Configuration& cfg, const std::vector<int>& idx);

}  // namespace nirenberg::detail
