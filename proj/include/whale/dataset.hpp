#pragma once

#include <cstdint>
#include <vector>

#include "whale/cloud.hpp"

namespace whale {

// All generators return unit-cube normalized clouds with unit weights and are
// pure functions of their arguments.

// Spiral sheet: t in [1.5*pi, 4.5*pi], (t*cos t, height, t*sin t), height
// uniform in [0, 21], per-axis Gaussian noise of the given scale added before
// normalization.
PointCloud gen_swiss_roll(std::size_t n, double noise, std::uint64_t seed);

// Torus with uniform angle sampling; requires 0 < minor_radius < major_radius.
PointCloud gen_torus(std::size_t n, double major_radius, double minor_radius,
                     double noise, std::uint64_t seed);

// Isotropic Gaussian blobs around centers placed pairwise >= separation apart
// (before normalization); points are assigned to components round-robin.
PointCloud gen_gaussian_mixture(std::size_t n, std::size_t components,
                                double separation, std::uint64_t seed);

// Synthetic volume: three nested ellipsoid shells at intensities 0.3/0.6/0.9
// (dim outer band, bright core) plus seeded uniform noise in [0, 0.05].
// Every dim must be >= 8.
VolumeGrid gen_phantom(const std::array<std::uint32_t, 3>& dims, std::uint64_t seed);

// Nearest-rank quantile of v at q in (0, 1]: the ceil(q*n)-th smallest value.
float nearest_rank_quantile(std::vector<float> v, double q);

// Masks voxels with intensity strictly above the q-quantile, converts the
// survivors to spacing-scaled voxel-center points, thins to at most max_points
// via a seeded shuffle (kept indices re-sorted), normalizes to the unit cube,
// and carries intensities / max(retained intensities) as weights.
// Throws empty_selection when the mask keeps nothing.
PointCloud volume_to_cloud(const VolumeGrid& vol, double intensity_quantile,
                           std::size_t max_points, std::uint64_t seed);

}  // namespace whale
