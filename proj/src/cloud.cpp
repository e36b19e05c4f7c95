#include "whale/cloud.hpp"

#include <algorithm>
#include <cmath>

#include "whale/error.hpp"

namespace whale {

void validate_cloud(const PointCloud& cloud) {
  require(!cloud.points.empty(), Errc::invalid_argument, "point cloud is empty");
  require(cloud.points.size() == cloud.weights.size(), Errc::invalid_argument,
          "points/weights length mismatch");
  for (double w : cloud.weights)
    require(std::isfinite(w) && w > 0.0, Errc::invalid_argument,
            "weights must be positive and finite");
}

void normalize_unit_cube(PointCloud& cloud) {
  validate_cloud(cloud);
  Aabb box{cloud.points[0], cloud.points[0]};
  for (const Vec3& p : cloud.points) box.expand(p);

  double max_extent = 0.0;
  for (int a = 0; a < 3; ++a) max_extent = std::max(max_extent, box.extent(a));

  if (max_extent == 0.0) {
    // all points identical
    for (Vec3& p : cloud.points) p = {0.5, 0.5, 0.5};
    return;
  }

  const double s = 1.0 / max_extent;
  Vec3 offset;
  for (int a = 0; a < 3; ++a) offset[a] = 0.5 * (1.0 - box.extent(a) * s);
  for (Vec3& p : cloud.points) {
    for (int a = 0; a < 3; ++a) {
      double c = (p[a] - box.lo[a]) * s + offset[a];
      p[a] = std::clamp(c, 0.0, 1.0);
    }
  }
}

void validate_volume(const VolumeGrid& vol) {
  require(vol.dims[0] > 0 && vol.dims[1] > 0 && vol.dims[2] > 0, Errc::invalid_argument,
          "volume dims must be positive");
  require(vol.spacing[0] > 0.0f && vol.spacing[1] > 0.0f && vol.spacing[2] > 0.0f,
          Errc::invalid_argument, "volume spacing must be positive");
  require(vol.intensities.size() == vol.voxel_count(), Errc::invalid_argument,
          "intensity count does not match dims");
}

}  // namespace whale
