#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "whale/dataset.hpp"
#include "whale/density.hpp"
#include "whale/error.hpp"
#include "whale/landmarks.hpp"
#include "whale/rng.hpp"

using namespace whale;

namespace {

PointCloud random_cloud(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  PointCloud cloud;
  cloud.points.resize(n);
  cloud.weights.assign(n, 1.0);
  for (Vec3& p : cloud.points) p = {rng.uniform(), rng.uniform(), rng.uniform()};
  return cloud;
}

DensityEstimate uniform_density(std::size_t n, double value = 1.0) {
  DensityEstimate est;
  est.bandwidth = 1.0;
  est.densities.assign(n, value);
  est.reference_size = n;
  return est;
}

}  // namespace

TEST_CASE("auto_m reproduces the published preset sizes exactly") {
  const AutoMParams full{41.0, 0.27, 400, 2400};
  const AutoMParams fast{43.0, 0.26, 500, 2200};
  CHECK(auto_m(1000000, full) == 1709);
  CHECK(auto_m(1000000, fast) == 1561);
  CHECK(auto_m(133493, fast) == 925);
}

TEST_CASE("auto_m clamps into [m_min, m_max]") {
  const AutoMParams p{41.0, 0.27, 400, 2400};
  CHECK(auto_m(1, p) == 400);            // 41 * 1^0.27 = 41 -> floor clamp
  CHECK(auto_m(100, p) == 400);          // 41 * 100^0.27 = 143 -> floor clamp
  CHECK(auto_m(4000000000ull, p) == 2400);  // ceiling clamp
  CHECK_THROWS_AS(auto_m(0, p), Error);
  CHECK_THROWS_AS(auto_m(10, AutoMParams{0.0, 0.27, 1, 10}), Error);
  CHECK_THROWS_AS(auto_m(10, AutoMParams{41.0, -0.1, 1, 10}), Error);
  CHECK_THROWS_AS(auto_m(10, AutoMParams{41.0, 0.27, 10, 1}), Error);
}

TEST_CASE("select_random draws distinct indices deterministically") {
  const PointCloud cloud = random_cloud(100, 1);
  const LandmarkSet a = select_random(cloud, 30, 7);
  const LandmarkSet b = select_random(cloud, 30, 7);
  CHECK(a.indices == b.indices);
  CHECK(a.method == SelectionMethod::random);
  CHECK(a.selection_seconds >= 0.0);
  CHECK(a.indices.size() == 30);
  std::set<std::uint32_t> uniq(a.indices.begin(), a.indices.end());
  CHECK(uniq.size() == 30);
  for (auto i : a.indices) CHECK(i < 100);

  CHECK(select_random(cloud, 500, 7).indices.size() == 100);  // m > n saturates
  CHECK(select_random(cloud, 30, 8).indices != a.indices);
  CHECK_THROWS_AS(select_random(cloud, 0, 7), Error);
}

TEST_CASE("select_density favors high density-weight mass") {
  const PointCloud cloud = random_cloud(100, 2);
  const std::size_t m = 10;

  SUBCASE("weight pull at flat density") {
    PointCloud weighted = cloud;
    for (int i = 0; i < 10; ++i) weighted.weights[i] = 50.0;
    const DensityEstimate flat = uniform_density(100);
    double heavy = 0.0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const LandmarkSet picks = select_density(weighted, flat, m, seed);
      CHECK(picks.method == SelectionMethod::density);
      for (auto i : picks.indices)
        if (i < 10) heavy += 1.0;
    }
    // without-replacement depletion caps the pull near 7.7 of ten slots;
    // uniform selection would average 1.0
    CHECK(heavy / 100.0 > 6.5);
  }

  SUBCASE("density pull at flat weights") {
    DensityEstimate skewed = uniform_density(100);
    for (int i = 0; i < 10; ++i) skewed.densities[i] = 50.0;
    double dense = 0.0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const LandmarkSet picks = select_density(cloud, skewed, m, seed);
      for (auto i : picks.indices)
        if (i < 10) dense += 1.0;
    }
    CHECK(dense / 100.0 > 6.5);
  }
}

TEST_CASE("select_density validates its density input") {
  const PointCloud cloud = random_cloud(20, 3);
  DensityEstimate bad = uniform_density(19);
  CHECK_THROWS_AS(select_density(cloud, bad, 5, 0), Error);
  bad = uniform_density(20);
  bad.densities[4] = 0.0;
  CHECK_THROWS_AS(select_density(cloud, bad, 5, 0), Error);
}

TEST_CASE("hybrid at alpha=0 is farthest-point sampling") {
  HybridParams params;
  params.alpha = 0.0;
  params.pool_constant = 1e6;  // pool covers the whole cloud
  for (std::uint64_t trial = 0; trial < 10; ++trial) {
    const PointCloud cloud = random_cloud(40, 100 + trial);
    const DensityEstimate density = uniform_density(40);
    params.seed = trial;
    const LandmarkSet got = select_hybrid(cloud, density, 12, params);
    CHECK(got.method == SelectionMethod::hybrid);
    CHECK(got.indices == oracle::maxmin_select(cloud.points, 12));
  }
}

TEST_CASE("hybrid matches the rescanning greedy index-for-index") {
  HybridParams params;
  params.pool_constant = 1e6;
  for (std::uint64_t trial = 0; trial < 15; ++trial) {
    const PointCloud cloud = random_cloud(10 + trial, 200 + trial);
    const double h = silverman_bandwidth(cloud);
    const DensityEstimate density = kde_density(cloud, cloud.points, h);
    params.alpha = (trial % 3 == 0) ? 1.0 : 0.5;
    params.seed = trial;
    const std::size_t m = 3 + trial % 7;
    const LandmarkSet got = select_hybrid(cloud, density, m, params);
    const auto expect = oracle::hybrid_greedy_rescan(cloud.points, density.densities,
                                                     params.alpha, params.epsilon, m);
    CHECK(got.indices == expect);
  }
}

TEST_CASE("hybrid scoring is invariant to a common density rescale") {
  // (1/(c*rho + c*eps))^alpha rescales every score by the same constant.
  const PointCloud cloud = random_cloud(60, 9);
  const DensityEstimate density = kde_density(cloud, cloud.points, 0.2);
  DensityEstimate scaled = density;
  for (double& d : scaled.densities) d *= 1000.0;

  HybridParams params;
  params.pool_constant = 1e6;
  HybridParams scaled_params = params;
  scaled_params.epsilon = params.epsilon * 1000.0;

  CHECK(select_hybrid(cloud, density, 15, params).indices ==
        select_hybrid(cloud, scaled, 15, scaled_params).indices);
}

TEST_CASE("farthest-point gaps never increase along the pick order") {
  HybridParams params;
  params.alpha = 0.0;
  params.pool_constant = 1e6;
  const PointCloud cloud = random_cloud(120, 4);
  const LandmarkSet picks = select_hybrid(cloud, uniform_density(120), 30, params);

  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t t = 1; t < picks.indices.size(); ++t) {
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < t; ++s)
      gap = std::min(gap, dist(cloud.points[picks.indices[t]], cloud.points[picks.indices[s]]));
    CHECK(gap <= prev + 1e-12);
    prev = gap;
  }
}

TEST_CASE("hybrid validates parameters and exhausts gracefully") {
  const PointCloud cloud = random_cloud(10, 5);
  const DensityEstimate density = uniform_density(10);
  HybridParams params;
  CHECK(select_hybrid(cloud, density, 50, params).indices.size() == 10);  // m > n saturates

  params.alpha = -0.5;
  CHECK_THROWS_AS(select_hybrid(cloud, density, 5, params), Error);
  params = HybridParams{};
  params.epsilon = 0.0;
  CHECK_THROWS_AS(select_hybrid(cloud, density, 5, params), Error);
  params = HybridParams{};
  params.pool_constant = -1.0;
  CHECK_THROWS_AS(select_hybrid(cloud, density, 5, params), Error);
  CHECK_THROWS_AS(select_hybrid(cloud, density, 0, params), Error);
}

TEST_CASE("cycle_aware collapses to hybrid without usable cycles") {
  const PointCloud cloud = random_cloud(80, 6);
  const DensityEstimate density = kde_density(cloud, cloud.points, 0.2);
  HybridParams params;
  params.seed = 3;
  const LandmarkSet plain = select_hybrid(cloud, density, 20, params);

  PersistenceDiagram empty_prior;
  CycleAwareParams cycle;
  SUBCASE("no prior features") {
    const LandmarkSet got = select_cycle_aware(cloud, density, 20, params, empty_prior, cycle);
    CHECK(got.method == SelectionMethod::cycle_aware);
    CHECK(got.indices == plain.indices);
  }
  SUBCASE("threshold excludes every feature") {
    PersistenceDiagram prior;
    Feature f;
    f.birth = 0.1;
    f.death = 0.2;
    f.birth_vertex_points = {cloud.points[0], cloud.points[1]};
    prior.features_by_dim[1].push_back(f);
    cycle.lifetime_threshold = 10.0;
    CHECK(select_cycle_aware(cloud, density, 20, params, prior, cycle).indices == plain.indices);
  }
  SUBCASE("zero reserve") {
    PersistenceDiagram prior;
    Feature f;
    f.birth = 0.1;
    f.death = 0.9;
    f.birth_vertex_points = {cloud.points[0]};
    prior.features_by_dim[1].push_back(f);
    cycle.reserve_fraction = 0.0;
    CHECK(select_cycle_aware(cloud, density, 20, params, prior, cycle).indices == plain.indices);
  }
}

TEST_CASE("cycle_aware spends its reserve near surviving cycles") {
  const PointCloud cloud = random_cloud(200, 7);
  const DensityEstimate density = uniform_density(200);
  HybridParams params;
  params.alpha = 0.0;
  params.pool_constant = 1e6;

  PersistenceDiagram prior;
  Feature loop;
  loop.birth = 0.05;
  loop.death = 0.8;
  loop.birth_vertex_points = {Vec3{0.2, 0.2, 0.2}};
  prior.features_by_dim[1].push_back(loop);

  CycleAwareParams cycle;
  cycle.reserve_fraction = 0.25;
  cycle.locality_radius = 0.2;
  const std::size_t m = 20;
  std::size_t in_ball = 0;
  for (const Vec3& p : cloud.points)
    if (dist(p, loop.birth_vertex_points[0]) <= cycle.locality_radius) ++in_ball;
  const LandmarkSet got = select_cycle_aware(cloud, density, m, params, prior, cycle);
  REQUIRE(got.indices.size() == m);
  // reserve picks sit inside the locality ball until it runs dry
  const std::size_t reserved = std::min<std::size_t>(m / 4, in_ball);
  REQUIRE(reserved > 0);
  for (std::size_t i = 0; i < reserved; ++i)
    CHECK(dist(cloud.points[got.indices[i]], loop.birth_vertex_points[0]) <=
          cycle.locality_radius + 1e-12);
  std::set<std::uint32_t> uniq(got.indices.begin(), got.indices.end());
  CHECK(uniq.size() == m);

  CycleAwareParams bad = cycle;
  bad.reserve_fraction = 1.5;
  CHECK_THROWS_AS(select_cycle_aware(cloud, density, m, params, prior, bad), Error);
  bad = cycle;
  bad.locality_radius = -0.1;
  CHECK_THROWS_AS(select_cycle_aware(cloud, density, m, params, prior, bad), Error);
}

TEST_CASE("method_name labels every selector") {
  CHECK(std::string(method_name(SelectionMethod::random)) == "random");
  CHECK(std::string(method_name(SelectionMethod::density)) == "density");
  CHECK(std::string(method_name(SelectionMethod::hybrid)) == "hybrid");
  CHECK(std::string(method_name(SelectionMethod::cycle_aware)) == "cycle_aware");
}
