#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "whale/geometry.hpp"

namespace whale {

// Exact k-nearest-neighbor queries against a fixed site set, accelerated by a
// uniform grid. Results are identical to a brute-force scan, including the
// tie rule: equal distances order by lower site ordinal.
class SiteGrid {
 public:
  explicit SiteGrid(const std::vector<Vec3>& sites);

  // k nearest sites to q, sorted by (distance, ordinal); size min(k, m)
  void knn(const Vec3& q, std::size_t k,
           std::vector<std::pair<std::uint32_t, double>>& out) const;

  double nearest_dist(const Vec3& q) const;

  std::size_t site_count() const { return sites_.size(); }

 private:
  struct Best;  // bounded candidate list, defined in the .cpp

  std::vector<Vec3> sites_;
  Aabb box_;
  std::array<int, 3> res_{1, 1, 1};
  Vec3 cell_size_{1.0, 1.0, 1.0};
  double min_cell_edge_ = 1.0;
  std::vector<std::uint32_t> cell_start_;  // CSR offsets, res^3 + 1
  std::vector<std::uint32_t> cell_sites_;  // site ordinals grouped by cell

  int cell_of(const Vec3& p, int axis) const;
  std::size_t flat(int cx, int cy, int cz) const;
};

}  // namespace whale
