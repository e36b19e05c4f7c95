#include "whale/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "whale/error.hpp"
#include "whale/knn.hpp"

namespace whale {

CoverageReport coverage_report(const PointCloud& cloud, const LandmarkSet& landmarks,
                               double p, double reference_radius) {
  validate_cloud(cloud);
  require(!landmarks.indices.empty(), Errc::invalid_argument, "landmark set is empty");
  require(p > 0.0 && p <= 1.0, Errc::invalid_argument, "p must be in (0, 1]");
  require(reference_radius > 0.0, Errc::invalid_argument,
          "reference_radius must be positive");
  const std::size_t n = cloud.size();

  std::vector<Vec3> sites(landmarks.indices.size());
  for (std::size_t i = 0; i < sites.size(); ++i) {
    require(landmarks.indices[i] < n, Errc::invalid_argument,
            "landmark index out of range");
    sites[i] = cloud.points[landmarks.indices[i]];
  }
  SiteGrid grid(sites);

  std::vector<std::pair<double, double>> dw(n);  // (distance, weight), sorted later
  double total_weight = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    dw[i] = {grid.nearest_dist(cloud.points[i]), cloud.weights[i]};
    total_weight += cloud.weights[i];
  }
  std::sort(dw.begin(), dw.end());

  CoverageReport report;
  report.reference_radius = reference_radius;
  double sum = 0.0, wsum = 0.0, in_radius = 0.0;
  for (const auto& [dist_i, w] : dw) {
    sum += dist_i;
    wsum += dist_i * w;
    if (dist_i <= reference_radius) in_radius += w;
  }
  report.cov_mean = sum / static_cast<double>(n);
  report.cov_mean_weighted = wsum / total_weight;
  report.cov_ratio = in_radius / total_weight;

  // nearest rank: smallest attained distance whose cumulative fraction reaches p
  const std::size_t rank = static_cast<std::size_t>(
      std::ceil(p * static_cast<double>(n)));
  report.cov_p = dw[std::min(rank, n) - 1].first;
  double cum = 0.0;
  report.cov_p_weighted = dw.back().first;
  for (const auto& [dist_i, w] : dw) {
    cum += w / total_weight;
    if (cum >= p) {
      report.cov_p_weighted = dist_i;
      break;
    }
  }
  return report;
}

namespace {

double half_lifetime(const Feature& f) { return (f.death - f.birth) / 2.0; }

double pair_cost(const Feature& a, const Feature& b) {
  return std::max(std::fabs(a.birth - b.birth), std::fabs(a.death - b.death));
}

// Perfect-matching feasibility at threshold r. Left side: features of A then a
// diagonal slot per feature of B; right side: features of B then a diagonal
// slot per feature of A. A_i may take B_j (cost <= r) or its own slot
// (half lifetime <= r); B_j's slot takes B_j under the same rule; spare slots
// pair with each other freely.
class ThresholdMatcher {
 public:
  ThresholdMatcher(const std::vector<Feature>& a, const std::vector<Feature>& b)
      : a_(a), b_(b), na_(a.size()), nb_(b.size()) {}

  bool feasible(double r) {
    r_ = r;
    match_left_.assign(na_ + nb_, -1);
    match_right_.assign(nb_ + na_, -1);
    for (std::size_t u = 0; u < na_ + nb_; ++u) {
      visited_.assign(nb_ + na_, 0);
      if (!augment(u)) return false;
    }
    return true;
  }

 private:
  bool edge(std::size_t u, std::size_t v) const {
    if (u < na_) {
      if (v < nb_) return pair_cost(a_[u], b_[v]) <= r_;
      return v - nb_ == u && half_lifetime(a_[u]) <= r_;
    }
    const std::size_t j = u - na_;
    if (v < nb_) return v == j && half_lifetime(b_[j]) <= r_;
    return true;  // spare diagonal slots always pair
  }

  bool augment(std::size_t u) {
    for (std::size_t v = 0; v < nb_ + na_; ++v) {
      if (visited_[v] || !edge(u, v)) continue;
      visited_[v] = 1;
      if (match_right_[v] < 0 || augment(static_cast<std::size_t>(match_right_[v]))) {
        match_left_[u] = static_cast<std::int64_t>(v);
        match_right_[v] = static_cast<std::int64_t>(u);
        return true;
      }
    }
    return false;
  }

  const std::vector<Feature>& a_;
  const std::vector<Feature>& b_;
  std::size_t na_, nb_;
  double r_ = 0.0;
  std::vector<std::int64_t> match_left_, match_right_;
  std::vector<char> visited_;
};

}  // namespace

double bottleneck_distance(const std::vector<Feature>& a, const std::vector<Feature>& b) {
  std::vector<Feature> fin_a, fin_b;
  std::vector<double> ess_a, ess_b;
  for (const Feature& f : a) {
    if (f.essential())
      ess_a.push_back(f.birth);
    else
      fin_a.push_back(f);
  }
  for (const Feature& f : b) {
    if (f.essential())
      ess_b.push_back(f.birth);
    else
      fin_b.push_back(f);
  }

  if (ess_a.size() != ess_b.size()) return kInfDeath;
  double essential_cost = 0.0;
  std::sort(ess_a.begin(), ess_a.end());
  std::sort(ess_b.begin(), ess_b.end());
  for (std::size_t i = 0; i < ess_a.size(); ++i)
    essential_cost = std::max(essential_cost, std::fabs(ess_a[i] - ess_b[i]));

  if (fin_a.empty() && fin_b.empty()) return essential_cost;

  std::vector<double> candidates{0.0};
  for (const Feature& f : fin_a) candidates.push_back(half_lifetime(f));
  for (const Feature& f : fin_b) candidates.push_back(half_lifetime(f));
  for (const Feature& fa : fin_a)
    for (const Feature& fb : fin_b) candidates.push_back(pair_cost(fa, fb));
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  ThresholdMatcher matcher(fin_a, fin_b);
  std::size_t lo = 0, hi = candidates.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (matcher.feasible(candidates[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  return std::max(candidates[lo], essential_cost);
}

double bottleneck_distance(const PersistenceDiagram& a, const PersistenceDiagram& b,
                           int d) {
  require(d >= 0 && d <= 2, Errc::invalid_argument, "dimension must be 0, 1, or 2");
  return bottleneck_distance(a.dim(d), b.dim(d));
}

}  // namespace whale
