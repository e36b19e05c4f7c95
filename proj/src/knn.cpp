#include "whale/knn.hpp"

#include <algorithm>
#include <cmath>

#include "whale/error.hpp"

namespace whale {

namespace {

// (squared distance, ordinal) candidate bounded to k entries, ordered so that
// exact distance ties resolve to the lower ordinal.
struct Candidate {
  double d2;
  std::uint32_t ord;
  bool operator<(const Candidate& o) const {
    return d2 != o.d2 ? d2 < o.d2 : ord < o.ord;
  }
};

}  // namespace

struct SiteGrid::Best {
  std::vector<Candidate> items;  // sorted ascending, size <= k
  std::size_t k;

  explicit Best(std::size_t k_) : k(k_) { items.reserve(k_); }

  bool full() const { return items.size() == k; }
  double worst_d2() const { return items.back().d2; }

  void offer(Candidate c) {
    if (full() && items.back() < c) return;
    auto it = std::lower_bound(items.begin(), items.end(), c);
    items.insert(it, c);
    if (items.size() > k) items.pop_back();
  }
};

SiteGrid::SiteGrid(const std::vector<Vec3>& sites) : sites_(sites) {
  require(!sites_.empty(), Errc::invalid_argument, "site grid needs at least one site");
  box_ = Aabb{sites_[0], sites_[0]};
  for (const Vec3& p : sites_) box_.expand(p);

  // Roughly cubical cells with ~2 sites apiece.
  double max_extent = 0.0;
  for (int a = 0; a < 3; ++a) max_extent = std::max(max_extent, box_.extent(a));
  const int target = std::clamp(
      static_cast<int>(std::ceil(std::cbrt(static_cast<double>(sites_.size()) / 2.0))), 1, 128);
  const double edge = max_extent > 0.0 ? max_extent / target : 1.0;

  min_cell_edge_ = std::numeric_limits<double>::infinity();
  for (int a = 0; a < 3; ++a) {
    const double ext = box_.extent(a);
    res_[a] = ext > 0.0 ? std::clamp(static_cast<int>(std::ceil(ext / edge)), 1, 128) : 1;
    cell_size_[a] = res_[a] > 0 && ext > 0.0 ? ext / res_[a] : 1.0;
    if (res_[a] > 1) min_cell_edge_ = std::min(min_cell_edge_, cell_size_[a]);
  }

  const std::size_t ncells =
      static_cast<std::size_t>(res_[0]) * res_[1] * res_[2];
  std::vector<std::uint32_t> counts(ncells, 0);
  std::vector<std::uint32_t> home(sites_.size());
  for (std::size_t i = 0; i < sites_.size(); ++i) {
    const Vec3& p = sites_[i];
    home[i] = static_cast<std::uint32_t>(
        flat(cell_of(p, 0), cell_of(p, 1), cell_of(p, 2)));
    ++counts[home[i]];
  }
  cell_start_.assign(ncells + 1, 0);
  for (std::size_t c = 0; c < ncells; ++c) cell_start_[c + 1] = cell_start_[c] + counts[c];
  cell_sites_.resize(sites_.size());
  std::vector<std::uint32_t> cursor(cell_start_.begin(), cell_start_.end() - 1);
  for (std::size_t i = 0; i < sites_.size(); ++i)
    cell_sites_[cursor[home[i]]++] = static_cast<std::uint32_t>(i);
}

int SiteGrid::cell_of(const Vec3& p, int axis) const {
  if (res_[axis] == 1) return 0;
  const double t = (p[axis] - box_.lo[axis]) / cell_size_[axis];
  return std::clamp(static_cast<int>(t), 0, res_[axis] - 1);
}

std::size_t SiteGrid::flat(int cx, int cy, int cz) const {
  return (static_cast<std::size_t>(cz) * res_[1] + cy) * res_[0] + cx;
}

void SiteGrid::knn(const Vec3& q, std::size_t k,
                   std::vector<std::pair<std::uint32_t, double>>& out) const {
  out.clear();
  if (k == 0) return;
  k = std::min(k, sites_.size());
  Best best(k);

  const int qx = cell_of(q, 0), qy = cell_of(q, 1), qz = cell_of(q, 2);
  const int max_ring = std::max({res_[0], res_[1], res_[2]});

  auto scan_cell = [&](int cx, int cy, int cz) {
    if (cx < 0 || cy < 0 || cz < 0 || cx >= res_[0] || cy >= res_[1] || cz >= res_[2])
      return;
    const std::size_t c = flat(cx, cy, cz);
    for (std::uint32_t s = cell_start_[c]; s < cell_start_[c + 1]; ++s) {
      const std::uint32_t ord = cell_sites_[s];
      best.offer({dist2(q, sites_[ord]), ord});
    }
  };

  for (int r = 0; r <= max_ring; ++r) {
    if (r == 0) {
      scan_cell(qx, qy, qz);
    } else {
      for (int sgn : {-1, 1}) {
        const int fx = qx + sgn * r;
        for (int dy = -r; dy <= r; ++dy)
          for (int dz = -r; dz <= r; ++dz) scan_cell(fx, qy + dy, qz + dz);
        const int fy = qy + sgn * r;
        for (int dx = -r + 1; dx <= r - 1; ++dx)
          for (int dz = -r; dz <= r; ++dz) scan_cell(qx + dx, fy, qz + dz);
        const int fz = qz + sgn * r;
        for (int dx = -r + 1; dx <= r - 1; ++dx)
          for (int dy = -r + 1; dy <= r - 1; ++dy) scan_cell(qx + dx, qy + dy, fz);
      }
    }
    // Every unvisited cell sits at Chebyshev offset > r, hence at least
    // r * min_cell_edge away in exact arithmetic; a whole cell width of slack
    // absorbs boundary rounding in the cell assignment so ties stay exact.
    if (best.full() && r >= 1 && std::isfinite(min_cell_edge_)) {
      const double bound = static_cast<double>(r - 1) * min_cell_edge_;
      if (best.worst_d2() < bound * bound) break;
    }
  }

  out.reserve(best.items.size());
  for (const Candidate& c : best.items) out.emplace_back(c.ord, std::sqrt(c.d2));
}

double SiteGrid::nearest_dist(const Vec3& q) const {
  std::vector<std::pair<std::uint32_t, double>> one;
  knn(q, 1, one);
  return one.front().second;
}

}  // namespace whale
