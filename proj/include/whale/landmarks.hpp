#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "whale/cloud.hpp"
#include "whale/density.hpp"

namespace whale {

struct PersistenceDiagram;  // persistence.hpp

enum class SelectionMethod { random, density, hybrid, cycle_aware };

const char* method_name(SelectionMethod m);

struct LandmarkSet {
  std::vector<std::uint32_t> indices;  // into the cloud, selection order, distinct
  SelectionMethod method = SelectionMethod::random;
  double selection_seconds = 0.0;
};

struct AutoMParams {
  double beta = 41.0;
  double gamma = 0.27;
  std::size_t m_min = 400;
  std::size_t m_max = 2400;
};

// m(n) = min(m_max, max(m_min, round_half_away_from_zero(beta * n^gamma)))
std::size_t auto_m(std::size_t n, const AutoMParams& params);

struct HybridParams {
  double alpha = 0.5;          // density exponent, >= 0
  double epsilon = 1e-9;       // density floor, > 0
  double pool_constant = 1.0;  // c in |pool| = ceil(c * m * ln n)
  std::uint64_t seed = 0;
};

struct CycleAwareParams {
  double lifetime_threshold = 0.0;  // tau: features with lifetime > tau qualify
  double reserve_fraction = 0.1;    // in [0, 1]
  double locality_radius = 0.1;     // restriction radius around representatives
};

// m distinct uniform indices (all indices when m >= n)
LandmarkSet select_random(const PointCloud& cloud, std::size_t m, std::uint64_t seed);

// weighted sampling without replacement, P(i) proportional to density_i * weight_i
LandmarkSet select_density(const PointCloud& cloud, const DensityEstimate& density,
                           std::size_t m, std::uint64_t seed);

// Greedy sparsity-seeking selection over a seeded candidate pool:
//   score(x) = d(x, L) * (1 / (rho(x) + epsilon))^alpha,
// first landmark by density factor alone, ties to the lowest point index.
// The pool holds min(n, ceil(c*m*ln n)) points drawn without replacement with
// probability proportional to 1/(rho+epsilon); it widens to the whole cloud
// when m exceeds the pool.
LandmarkSet select_hybrid(const PointCloud& cloud, const DensityEstimate& density,
                          std::size_t m, const HybridParams& params);

// Hybrid selection that first fills floor(reserve_fraction*m) slots from pool
// points within locality_radius of a representative of any qualifying H1
// feature in the prior diagram (features must carry resolved representative
// coordinates), then finishes with the ordinary hybrid sweep. Falls back to
// plain hybrid when nothing qualifies.
LandmarkSet select_cycle_aware(const PointCloud& cloud, const DensityEstimate& density,
                               std::size_t m, const HybridParams& params,
                               const PersistenceDiagram& prior,
                               const CycleAwareParams& cycle);

}  // namespace whale
