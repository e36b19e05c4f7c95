#pragma once

#include <cstddef>
#include <vector>

#include "whale/cloud.hpp"

namespace whale {

struct DensityEstimate {
  double bandwidth = 0.0;          // Silverman h actually used
  std::vector<double> densities;   // one per query, > 0
  std::size_t reference_size = 0;  // points the sum ran over (<= 20000)
};

// Silverman's rule for d=3: h = sigma_hat * (4 / ((d+2) n))^(1/(d+4)) with
// sigma_hat the mean of the three per-axis sample standard deviations
// (n-1 denominator). Requires n >= 2; throws degenerate_spread when every
// axis has zero variance.
double silverman_bandwidth(const PointCloud& cloud);

// Gaussian KDE over the cloud at the query positions:
//   rho(x) = 1/n_ref * sum_i (2 pi h^2)^(-3/2) exp(-|x - x_i|^2 / (2 h^2)).
// Reference points are the cloud itself, capped at 20000 via an internally
// seeded subsample; contributions are accumulated with compensated summation
// so reference order cannot leak into the result.
DensityEstimate kde_density(const PointCloud& cloud, const std::vector<Vec3>& queries,
                            double bandwidth);

}  // namespace whale
