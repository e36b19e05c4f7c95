#include "whale/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "whale/error.hpp"
#include "whale/rng.hpp"

namespace whale {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
}

PointCloud gen_swiss_roll(std::size_t n, double noise, std::uint64_t seed) {
  require(n >= 1, Errc::invalid_argument, "swiss roll needs n >= 1");
  require(noise >= 0.0, Errc::invalid_argument, "noise must be >= 0");
  Rng rng(seed);
  PointCloud cloud;
  cloud.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = rng.uniform(1.5 * kPi, 4.5 * kPi);
    const double h = rng.uniform(0.0, 21.0);
    Vec3 p{t * std::cos(t), h, t * std::sin(t)};
    if (noise > 0.0)
      for (int a = 0; a < 3; ++a) p[a] += noise * rng.normal();
    cloud.points.push_back(p);
  }
  cloud.weights.assign(n, 1.0);
  normalize_unit_cube(cloud);
  return cloud;
}

PointCloud gen_torus(std::size_t n, double major_radius, double minor_radius,
                     double noise, std::uint64_t seed) {
  require(n >= 1, Errc::invalid_argument, "torus needs n >= 1");
  require(minor_radius > 0.0 && minor_radius < major_radius, Errc::invalid_argument,
          "torus needs 0 < minor_radius < major_radius");
  require(noise >= 0.0, Errc::invalid_argument, "noise must be >= 0");
  Rng rng(seed);
  PointCloud cloud;
  cloud.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = rng.uniform(0.0, 2.0 * kPi);
    const double v = rng.uniform(0.0, 2.0 * kPi);
    const double ring = major_radius + minor_radius * std::cos(v);
    Vec3 p{ring * std::cos(u), ring * std::sin(u), minor_radius * std::sin(v)};
    if (noise > 0.0)
      for (int a = 0; a < 3; ++a) p[a] += noise * rng.normal();
    cloud.points.push_back(p);
  }
  cloud.weights.assign(n, 1.0);
  normalize_unit_cube(cloud);
  return cloud;
}

PointCloud gen_gaussian_mixture(std::size_t n, std::size_t components,
                                double separation, std::uint64_t seed) {
  require(n >= 1, Errc::invalid_argument, "mixture needs n >= 1");
  require(components >= 1, Errc::invalid_argument, "mixture needs components >= 1");
  require(components <= n, Errc::invalid_argument, "mixture needs components <= n");
  require(separation > 0.0, Errc::invalid_argument, "separation must be > 0");
  Rng rng(seed);

  // Centers on a jittered grid: pitch/jitter ratio keeps every pair at least
  // `separation` apart without a rejection loop.
  const double pitch = separation / 0.8;
  const double jitter = 0.1 * separation;
  const int per_axis = static_cast<int>(std::ceil(std::cbrt(static_cast<double>(components))));
  std::vector<Vec3> centers;
  centers.reserve(components);
  for (int z = 0; z < per_axis && centers.size() < components; ++z)
    for (int y = 0; y < per_axis && centers.size() < components; ++y)
      for (int x = 0; x < per_axis && centers.size() < components; ++x)
        centers.push_back({x * pitch + rng.uniform(-jitter, jitter),
                           y * pitch + rng.uniform(-jitter, jitter),
                           z * pitch + rng.uniform(-jitter, jitter)});

  const double sigma = separation / 12.0;
  PointCloud cloud;
  cloud.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3& c = centers[i % components];
    cloud.points.push_back({c[0] + sigma * rng.normal(), c[1] + sigma * rng.normal(),
                            c[2] + sigma * rng.normal()});
  }
  cloud.weights.assign(n, 1.0);
  normalize_unit_cube(cloud);
  return cloud;
}

VolumeGrid gen_phantom(const std::array<std::uint32_t, 3>& dims, std::uint64_t seed) {
  for (int a = 0; a < 3; ++a)
    require(dims[a] >= 8, Errc::invalid_argument, "phantom dims must each be >= 8");

  VolumeGrid vol;
  vol.dims = dims;
  vol.spacing = {1.0f, 1.0f, 1.0f};
  vol.intensities.resize(vol.voxel_count());

  // Three nested ellipsoid shells in [-1,1]^3 voxel-center coordinates at
  // intensity levels 0.9 / 0.6 / 0.3 (bright inside, dim outside) over a
  // seeded noise floor of amplitude 0.05. The bright core is a compact solid
  // blob; the dim outer shell is a wide halo whose voxels sit just above the
  // masking threshold, so only a noise-selected fraction of it survives
  // masking. Intensity-proportional sampling then piles onto the core while
  // the halo, which carries most of the retained mass, goes under-sampled.
  const Vec3 semi{0.95, 0.85, 0.90};

  Rng rng(seed);
  std::size_t idx = 0;
  for (std::uint32_t z = 0; z < dims[2]; ++z) {
    const double qz = (2.0 * (z + 0.5)) / dims[2] - 1.0;
    for (std::uint32_t y = 0; y < dims[1]; ++y) {
      const double qy = (2.0 * (y + 0.5)) / dims[1] - 1.0;
      for (std::uint32_t x = 0; x < dims[0]; ++x, ++idx) {
        const double qx = (2.0 * (x + 0.5)) / dims[0] - 1.0;
        const double ex = qx / semi[0];
        const double ey = qy / semi[1];
        const double ez = qz / semi[2];
        const double s = std::sqrt(ex * ex + ey * ey + ez * ez);
        double base = 0.0;
        if (s <= 0.42) base = 0.9;
        else if (s >= 0.53 && s <= 0.56) base = 0.6;
        else if (s >= 0.58 && s <= 1.45) base = 0.3;
        vol.intensities[idx] = static_cast<float>(base + rng.uniform(0.0, 0.05));
      }
    }
  }
  return vol;
}

float nearest_rank_quantile(std::vector<float> v, double q) {
  require(!v.empty(), Errc::invalid_argument, "quantile of empty vector");
  require(q > 0.0 && q <= 1.0, Errc::invalid_argument, "quantile q must be in (0, 1]");
  std::sort(v.begin(), v.end());
  const std::size_t rank = static_cast<std::size_t>(
      std::ceil(q * static_cast<double>(v.size())));
  return v[rank - 1];
}

PointCloud volume_to_cloud(const VolumeGrid& vol, double intensity_quantile,
                           std::size_t max_points, std::uint64_t seed) {
  validate_volume(vol);
  require(max_points >= 1, Errc::invalid_argument, "max_points must be >= 1");
  const float threshold = nearest_rank_quantile(vol.intensities, intensity_quantile);

  std::vector<std::uint32_t> kept;
  for (std::size_t i = 0; i < vol.intensities.size(); ++i)
    if (vol.intensities[i] > threshold) kept.push_back(static_cast<std::uint32_t>(i));
  require(!kept.empty(), Errc::empty_selection,
          "intensity mask removed every voxel");

  if (kept.size() > max_points) {
    Rng rng(seed);
    rng.shuffle(kept);
    kept.resize(max_points);
    std::sort(kept.begin(), kept.end());
  }

  PointCloud cloud;
  cloud.points.reserve(kept.size());
  cloud.weights.reserve(kept.size());
  const std::size_t sx = vol.dims[0];
  const std::size_t sxy = static_cast<std::size_t>(vol.dims[0]) * vol.dims[1];
  float max_intensity = 0.0f;
  for (std::uint32_t i : kept) max_intensity = std::max(max_intensity, vol.intensities[i]);
  for (std::uint32_t i : kept) {
    const std::size_t z = i / sxy;
    const std::size_t y = (i - z * sxy) / sx;
    const std::size_t x = i - z * sxy - y * sx;
    cloud.points.push_back({(x + 0.5) * vol.spacing[0], (y + 0.5) * vol.spacing[1],
                            (z + 0.5) * vol.spacing[2]});
    cloud.weights.push_back(static_cast<double>(vol.intensities[i]) / max_intensity);
  }
  normalize_unit_cube(cloud);
  return cloud;
}

}  // namespace whale
