#pragma once

#include <cstdint>
#include <vector>

#include "whale/geometry.hpp"

namespace whale {

// Weighted 3-D point cloud. Generators and loaders produce clouds already
// normalized into the unit cube; hand-built clouds may live anywhere.
struct PointCloud {
  std::vector<Vec3> points;
  std::vector<double> weights;  // one per point, > 0

  std::size_t size() const { return points.size(); }
};

// throws invalid_argument on mismatched lengths, empty cloud, or nonpositive weights
void validate_cloud(const PointCloud& cloud);

// In-place isotropic map into [0,1]^3: the longest axis spans [0,1], the other
// axes are centered, a zero-extent axis collapses to 0.5. Idempotent.
void normalize_unit_cube(PointCloud& cloud);

// Scalar intensity grid; index (x,y,z) with x fastest.
struct VolumeGrid {
  std::array<std::uint32_t, 3> dims{0, 0, 0};
  std::array<float, 3> spacing{1.0f, 1.0f, 1.0f};
  std::vector<float> intensities;  // dims[0]*dims[1]*dims[2] values

  std::size_t voxel_count() const {
    return static_cast<std::size_t>(dims[0]) * dims[1] * dims[2];
  }
  std::size_t index(std::uint32_t x, std::uint32_t y, std::uint32_t z) const {
    return static_cast<std::size_t>(z) * dims[1] * dims[0] +
           static_cast<std::size_t>(y) * dims[0] + x;
  }
};

void validate_volume(const VolumeGrid& vol);

}  // namespace whale
