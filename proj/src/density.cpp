#include "whale/density.hpp"

#include <algorithm>
#include <cmath>

#include "whale/error.hpp"
#include "whale/rng.hpp"

namespace whale {

namespace {

// Fixed seed for the reference-cap subsample; kde_density exposes no seed but
// must stay deterministic.
constexpr std::uint64_t kReferenceCapSeed = 0x9e3779b97f4a7c15ull;
constexpr std::size_t kReferenceCap = 20000;
constexpr double kTwoPi = 6.28318530717958647692528676655900577;

double axis_sample_sd(const PointCloud& cloud, int axis) {
  const std::size_t n = cloud.size();
  double mean = 0.0;
  for (const Vec3& p : cloud.points) mean += p[axis];
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (const Vec3& p : cloud.points) {
    const double d = p[axis] - mean;
    ss += d * d;
  }
  return std::sqrt(ss / static_cast<double>(n - 1));
}

}  // namespace

double silverman_bandwidth(const PointCloud& cloud) {
  validate_cloud(cloud);
  const std::size_t n = cloud.size();
  require(n >= 2, Errc::invalid_argument, "bandwidth needs at least 2 points");

  double sigma_hat = 0.0;
  for (int a = 0; a < 3; ++a) sigma_hat += axis_sample_sd(cloud, a);
  sigma_hat /= 3.0;
  require(sigma_hat > 0.0, Errc::degenerate_spread,
          "all points identical: no usable spread for a bandwidth");

  constexpr double d = 3.0;
  const double factor = std::pow(4.0 / ((d + 2.0) * static_cast<double>(n)),
                                 1.0 / (d + 4.0));
  return sigma_hat * factor;
}

DensityEstimate kde_density(const PointCloud& cloud, const std::vector<Vec3>& queries,
                            double bandwidth) {
  validate_cloud(cloud);
  require(bandwidth > 0.0 && std::isfinite(bandwidth), Errc::invalid_argument,
          "bandwidth must be positive and finite");

  // Reference set: the cloud, capped by a seeded subsample kept in index order.
  std::vector<std::uint32_t> ref;
  if (cloud.size() > kReferenceCap) {
    Rng rng(kReferenceCapSeed);
    ref = rng.sample_without_replacement(static_cast<std::uint32_t>(cloud.size()),
                                         static_cast<std::uint32_t>(kReferenceCap));
    std::sort(ref.begin(), ref.end());
  } else {
    ref.resize(cloud.size());
    for (std::uint32_t i = 0; i < ref.size(); ++i) ref[i] = i;
  }

  const double h2 = bandwidth * bandwidth;
  const double norm = std::pow(kTwoPi * h2, -1.5);
  const double inv_2h2 = 1.0 / (2.0 * h2);
  const double inv_n = 1.0 / static_cast<double>(ref.size());

  DensityEstimate est;
  est.bandwidth = bandwidth;
  est.reference_size = ref.size();
  est.densities.resize(queries.size());

  for (std::size_t q = 0; q < queries.size(); ++q) {
    const Vec3& x = queries[q];
    // Neumaier-compensated sum keeps the result independent of reference
    // ordering to well below 1e-12 relative.
    double sum = 0.0, comp = 0.0;
    for (std::uint32_t i : ref) {
      const double term = std::exp(-dist2(x, cloud.points[i]) * inv_2h2);
      const double t = sum + term;
      if (std::abs(sum) >= std::abs(term))
        comp += (sum - t) + term;
      else
        comp += (term - t) + sum;
      sum = t;
    }
    est.densities[q] = (sum + comp) * norm * inv_n;
  }
  return est;
}

}  // namespace whale
