#pragma once

#include <vector>

#include "whale/cloud.hpp"
#include "whale/landmarks.hpp"
#include "whale/persistence.hpp"

namespace whale {

struct CoverageReport {
  double cov_mean = 0.0;
  double cov_mean_weighted = 0.0;
  double cov_p = 0.0;           // nearest-rank quantile of the distances
  double cov_p_weighted = 0.0;  // weighted variant
  double cov_ratio = 0.0;       // weighted mass within reference_radius
  double reference_radius = 0.0;
};

// Exact nearest-landmark distances d(x_i, L) summarized over the cloud.
// cov_p uses the nearest-rank rule on the sorted distances; the weighted
// variant accumulates normalized weights in distance order. p in (0, 1],
// reference_radius >= 0.
CoverageReport coverage_report(const PointCloud& cloud, const LandmarkSet& landmarks,
                               double p, double reference_radius);

// Bottleneck distance between two diagrams in one dimension. Finite features
// match each other (L-inf cost) or the diagonal (half lifetime); the optimum
// is found by binary search over the exact candidate set with a bipartite
// matching feasibility test, so the result is itself a candidate value, not
// an epsilon approximation. Essential features must agree in count (sorted
// births then pair up); a count mismatch returns infinity.
double bottleneck_distance(const PersistenceDiagram& a, const PersistenceDiagram& b, int d);

// Same convention, operating on bare feature lists (already single-dimension).
double bottleneck_distance(const std::vector<Feature>& a, const std::vector<Feature>& b);

}  // namespace whale
