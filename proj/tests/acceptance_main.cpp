// Acceptance gate: eight checks printed one per line, nonzero exit when any
// fails. Every tolerance and protocol constant is pinned here, not in flags,
// so the gate cannot drift.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "whale/bench.hpp"
#include "whale/dataset.hpp"
#include "whale/density.hpp"
#include "whale/diagnostics.hpp"
#include "whale/landmarks.hpp"
#include "whale/persistence.hpp"
#include "whale/rng.hpp"
#include "whale/witness.hpp"

using namespace whale;

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

void report(int index, const char* name, bool pass, const std::string& detail) {
  if (!pass) ++failures;
  std::printf("[%d/8] %s  %s: %s\n", index, pass ? "PASS" : "FAIL", name, detail.c_str());
  std::fflush(stdout);
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

PointCloud random_box_cloud(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  PointCloud cloud;
  cloud.points.resize(n);
  cloud.weights.assign(n, 1.0);
  for (Vec3& p : cloud.points) p = {rng.uniform(), rng.uniform(), rng.uniform()};
  return cloud;
}

// Count of features whose lifetime exceeds three times the third-longest
// lifetime; essentials carry infinite lifetime, and with fewer than three
// features the reference drops to zero.
std::size_t dominant_count(const std::vector<Feature>& features) {
  std::vector<double> lifetimes;
  for (const Feature& f : features) lifetimes.push_back(f.lifetime());
  std::sort(lifetimes.rbegin(), lifetimes.rend());
  const double tau = lifetimes.size() >= 3 ? lifetimes[2] : 0.0;
  std::size_t count = 0;
  for (double v : lifetimes)
    if (v > 3.0 * tau) ++count;
  return count;
}

// ---------------------------------------------------------------------------

void criterion_1_auto_m() {
  const AutoMParams full{41.0, 0.27, 400, 2400};
  const AutoMParams fast{43.0, 0.26, 500, 2200};
  const auto t0 = Clock::now();
  const std::size_t a = auto_m(1000000, full);
  const std::size_t b = auto_m(1000000, fast);
  const std::size_t c = auto_m(133493, fast);
  const double ms = seconds_since(t0) * 1e3;
  const bool pass = a == 1709 && b == 1561 && c == 925 && ms < 1.0;
  report(1, "auto-m exactness", pass,
         fmt("got %zu/%zu/%zu, want 1709/1561/925, %.4f ms", a, b, c, ms));
}

void criterion_2_bottleneck_fidelity() {
  const DatasetSpec::Kind kinds[3] = {DatasetSpec::Kind::torus, DatasetSpec::Kind::swiss_roll,
                                      DatasetSpec::Kind::gaussian};
  const char* names[3] = {"torus", "swiss_roll", "gaussian"};
  bool pass = true;
  double slowest = 0.0;
  std::string detail;
  for (int k = 0; k < 3; ++k) {
    std::size_t hits = 0;
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      RunConfig config;
      config.preset = preset(PresetName::deep_dive_fast);
      config.dataset.kind = kinds[k];
      config.dataset.n = 5000;
      config.methods = {SelectionMethod::hybrid};
      config.seeds = {seed};
      config.explicit_m = 400;
      config.use_auto_m = false;
      config.rips_sample = 300;

      const auto t0 = Clock::now();
      const auto records = run_benchmark(config);
      slowest = std::max(slowest, seconds_since(t0));
      const double d = records.at(0).bottleneck_h1.value();
      worst = std::max(worst, d);
      if (d < 0.05) ++hits;
    }
    if (hits < 4) pass = false;
    detail += fmt("%s %zu/5 (max d_B %.4f) ", names[k], hits, worst);
  }
  if (slowest >= 60.0) pass = false;
  detail += fmt("slowest run %.1f s", slowest);
  report(2, "witness-vs-Rips H1 fidelity", pass, detail);
}

void criterion_3_topology_recovery() {
  // Protocol: hybrid with alpha = 0 (pure farthest-point over the density
  // pool) spaces landmarks evenly enough for the k=4 witness graph to close
  // its quadrilateral gaps; alpha is a free protocol choice here.
  HybridParams protocol;
  protocol.alpha = 0.0;

  std::size_t torus_hits = 0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const PointCloud cloud = gen_torus(5000, 1.0, 0.35, 0.0, seed);
    const double h = silverman_bandwidth(cloud);
    const DensityEstimate density = kde_density(cloud, cloud.points, h);
    HybridParams params = protocol;
    params.seed = seed;
    const LandmarkSet landmarks = select_hybrid(cloud, density, 400, params);
    WitnessParams wp;
    wp.k_witness = 4;
    wp.max_dim = 1;
    const PersistenceDiagram d =
        compute_persistence(build_witness_filtration(cloud, landmarks, wp));
    if (dominant_count(d.dim(1)) == 2) ++torus_hits;
  }

  std::size_t circle_hits = 0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng(seed);
    PointCloud cloud;
    cloud.points.resize(1000);
    cloud.weights.assign(1000, 1.0);
    for (Vec3& p : cloud.points) {
      const double t = rng.uniform(0.0, 6.283185307179586476925286766559);
      p = {std::cos(t) + 0.01 * rng.normal(), std::sin(t) + 0.01 * rng.normal(),
           0.01 * rng.normal()};
    }
    normalize_unit_cube(cloud);
    const double h = silverman_bandwidth(cloud);
    const DensityEstimate density = kde_density(cloud, cloud.points, h);
    HybridParams params = protocol;
    params.seed = seed;
    const LandmarkSet landmarks = select_hybrid(cloud, density, 60, params);
    WitnessParams wp;
    wp.k_witness = 4;
    wp.max_dim = 1;
    const PersistenceDiagram d =
        compute_persistence(build_witness_filtration(cloud, landmarks, wp));
    if (dominant_count(d.dim(1)) == 1) ++circle_hits;
  }

  const bool pass = torus_hits >= 4 && circle_hits == 5;
  report(3, "dominant-loop recovery", pass,
         fmt("torus 2 dominant on %zu/5 (need >=4), circle 1 dominant on %zu/5 (need 5)",
             torus_hits, circle_hits));
}

void criterion_4_coverage_advantage() {
  const DatasetSpec::Kind kinds[3] = {DatasetSpec::Kind::torus, DatasetSpec::Kind::swiss_roll,
                                      DatasetSpec::Kind::gaussian};
  const char* names[3] = {"torus", "swiss_roll", "gaussian"};
  bool pass = true;
  std::string detail;

  for (int k = 0; k < 3; ++k) {
    double mean_hybrid = 0.0, mean_random = 0.0, mean_density = 0.0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      PointCloud cloud;
      switch (kinds[k]) {
        case DatasetSpec::Kind::torus: cloud = gen_torus(5000, 1.0, 0.35, 0.0, seed); break;
        case DatasetSpec::Kind::swiss_roll: cloud = gen_swiss_roll(5000, 0.0, seed); break;
        default: cloud = gen_gaussian_mixture(5000, 250, 2.0, seed); break;
      }
      const double h = silverman_bandwidth(cloud);
      const DensityEstimate density = kde_density(cloud, cloud.points, h);
      HybridParams params;
      params.seed = seed;
      const std::size_t m = 400;
      const LandmarkSet lh = select_hybrid(cloud, density, m, params);
      const LandmarkSet lr = select_random(cloud, m, seed);
      const LandmarkSet ld = select_density(cloud, density, m, seed);
      mean_hybrid += coverage_report(cloud, lh, 0.95, 0.05).cov_mean / 5.0;
      mean_random += coverage_report(cloud, lr, 0.95, 0.05).cov_mean / 5.0;
      mean_density += coverage_report(cloud, ld, 0.95, 0.05).cov_mean / 5.0;
    }
    const double ratio = mean_hybrid / mean_random;
    const bool ratio_ok = mean_hybrid <= 0.75 * mean_random;
    const bool density_ok = mean_hybrid <= mean_density;
    if (!ratio_ok || !density_ok) pass = false;
    detail += fmt("%s h/r %.3f (need <=0.75)%s h<=d %s; ", names[k], ratio,
                  ratio_ok ? "" : " MISS", density_ok ? "yes" : "NO");
  }

  // Phantom substitute is directional: hybrid must beat density on cov_ratio
  // at the default radius.
  bool phantom_ok = true;
  std::string phantom_detail;
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const VolumeGrid vol = gen_phantom({64, 64, 64}, seed);
    const PointCloud cloud = volume_to_cloud(vol, 0.75, 1000000, seed);
    const double h = silverman_bandwidth(cloud);
    const DensityEstimate density = kde_density(cloud, cloud.points, h);
    HybridParams params;
    params.seed = seed;
    const std::size_t m = 5000;
    const double rh = coverage_report(cloud, select_hybrid(cloud, density, m, params),
                                      0.95, 0.05).cov_ratio;
    const double rd = coverage_report(cloud, select_density(cloud, density, m, seed),
                                      0.95, 0.05).cov_ratio;
    if (!(rh > rd)) phantom_ok = false;
    phantom_detail += fmt("%.3f>%.3f ", rh, rd);
  }
  if (!phantom_ok) pass = false;
  detail += fmt("phantom ratio %s(%s)", phantom_ok ? "ok " : "MISS ", phantom_detail.c_str());
  report(4, "hybrid coverage advantage", pass, detail);
}

void criterion_5_reduction_oracle() {
  std::size_t checks = 0, misses = 0;
  for (std::uint64_t trial = 0; trial < 50; ++trial) {
    const std::size_t n = 20 + trial % 29;
    const std::size_t m = 8 + trial % 13;
    const PointCloud cloud = random_box_cloud(n, 7000 + trial);
    auto indices = Rng(trial).sample_without_replacement(static_cast<std::uint32_t>(n),
                                                         static_cast<std::uint32_t>(m));
    std::sort(indices.begin(), indices.end());
    LandmarkSet landmarks;
    landmarks.indices = indices;
    WitnessParams wp;
    wp.k_witness = 3 + trial % 4;
    wp.max_dim = 2;
    const SimplicialFiltration f = build_witness_filtration(cloud, landmarks, wp);
    const PersistenceDiagram d = compute_persistence(f);

    std::vector<double> values;
    for (const FilteredSimplex& s : f.simplices) values.push_back(s.value);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());

    Rng rng(500 + trial);
    for (int probe = 0; probe < 20; ++probe) {
      double t = values[rng.below(values.size())];
      if (probe % 3 == 1) t += 1e-9;   // strictly between filtration values
      if (probe % 3 == 2) t -= 1e-12;  // just below an attained value
      const auto expect = oracle::betti_at(f, t);
      const auto got = oracle::betti_from_diagram(d, t);
      ++checks;
      if (got != expect) ++misses;
    }
  }
  report(5, "reduction equals GF(2) rank oracle", misses == 0,
         fmt("%zu/%zu threshold checks exact across 50 filtrations", checks - misses, checks));
}

void criterion_6_bottleneck_oracle() {
  Rng rng(808);
  std::size_t misses = 0;
  double worst_gap = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    auto draw = [&](std::size_t max_count, bool allow_essential) {
      std::vector<Feature> out(rng.below(max_count + 1));
      for (Feature& f : out) {
        f.birth = rng.uniform();
        const bool essential = allow_essential && rng.below(4) == 0;
        f.death = essential ? kInfDeath : f.birth + 0.01 + rng.uniform();
      }
      return out;
    };
    const auto a = draw(5, trial % 2 == 0);
    const auto b = draw(5, trial % 2 == 0);
    const double got = bottleneck_distance(a, b);
    const double expect = oracle::bottleneck_exhaustive(a, b);
    if (expect == kInfDeath) {
      if (got != kInfDeath) ++misses;
    } else {
      const double gap = std::fabs(got - expect);
      worst_gap = std::max(worst_gap, gap);
      if (gap > 1e-12) ++misses;
    }
  }
  report(6, "bottleneck equals exhaustive matching", misses == 0,
         fmt("100 random diagram pairs, worst gap %.2e (tolerance 1e-12)", worst_gap));
}

void criterion_7_greedy_oracle() {
  std::size_t misses = 0;
  for (std::uint64_t trial = 0; trial < 50; ++trial) {
    const std::size_t n = 10 + trial % 21;
    const PointCloud cloud = random_box_cloud(n, 9000 + trial);
    const double h = silverman_bandwidth(cloud);
    const DensityEstimate density = kde_density(cloud, cloud.points, h);

    HybridParams params;
    params.alpha = 0.5 * static_cast<double>(trial % 3);
    params.pool_constant = 1e6;  // candidate pool spans the whole cloud
    params.seed = trial;
    const std::size_t m = 3 + trial % 8;
    const LandmarkSet got = select_hybrid(cloud, density, m, params);
    const auto expect = oracle::hybrid_greedy_rescan(cloud.points, density.densities,
                                                     params.alpha, params.epsilon, m);
    if (got.indices != expect) ++misses;
  }
  report(7, "greedy equals rescanning oracle", misses == 0,
         fmt("%zu/50 clouds matched index-for-index", 50 - misses));
}

void criterion_8_invariants(double elapsed_so_far) {
  std::string detail;
  bool pass = true;

  // face-monotonicity on random witness filtrations
  bool faces_ok = true;
  for (std::uint64_t trial = 0; trial < 5; ++trial) {
    const PointCloud cloud = random_box_cloud(60 + trial * 10, 40 + trial);
    auto indices = Rng(trial).sample_without_replacement(
        static_cast<std::uint32_t>(cloud.size()), 15);
    std::sort(indices.begin(), indices.end());
    LandmarkSet landmarks;
    landmarks.indices = indices;
    WitnessParams wp;
    wp.k_witness = 5;
    wp.max_dim = 2;
    const SimplicialFiltration f = build_witness_filtration(cloud, landmarks, wp);
    try {
      validate_filtration(f);  // includes the face-closure and ordering checks
    } catch (...) {
      faces_ok = false;
    }
  }
  if (!faces_ok) pass = false;
  detail += fmt("face-monotone %s, ", faces_ok ? "ok" : "BROKEN");

  // coverage monotone in p and radius
  bool coverage_ok = true;
  {
    const PointCloud cloud = gen_swiss_roll(800, 0.05, 3);
    const LandmarkSet landmarks = select_random(cloud, 40, 5);
    double prev = -1.0;
    for (double p : {0.05, 0.25, 0.5, 0.75, 0.95, 1.0}) {
      const double v = coverage_report(cloud, landmarks, p, 0.05).cov_p;
      if (v < prev) coverage_ok = false;
      prev = v;
    }
    prev = -1.0;
    for (double radius : {0.01, 0.05, 0.1, 0.25, 0.5}) {
      const double v = coverage_report(cloud, landmarks, 0.95, radius).cov_ratio;
      if (v < prev) coverage_ok = false;
      prev = v;
    }
  }
  if (!coverage_ok) pass = false;
  detail += fmt("coverage monotone %s, ", coverage_ok ? "ok" : "BROKEN");

  // CSV determinism modulo the three timing columns
  bool determinism_ok = true;
  {
    RunConfig config;
    config.preset = preset(PresetName::deep_dive_fast);
    config.dataset.kind = DatasetSpec::Kind::gaussian;
    config.dataset.n = 800;
    config.methods = {SelectionMethod::hybrid, SelectionMethod::density};
    config.seeds = {0, 1};
    config.explicit_m = 60;
    config.use_auto_m = false;

    auto strip = [](std::string row) {
      int commas = 0;
      std::string out;
      for (char c : row) {
        if (c == ',') ++commas;
        const bool timing = commas >= 8 && commas <= 10 && c != ',';
        if (!timing) out += c;
      }
      return out;
    };
    const auto first = run_benchmark(config);
    const auto second = run_benchmark(config);
    if (first.size() != second.size()) determinism_ok = false;
    for (std::size_t i = 0; determinism_ok && i < first.size(); ++i)
      if (strip(record_to_csv_row(first[i])) != strip(record_to_csv_row(second[i])))
        determinism_ok = false;
  }
  if (!determinism_ok) pass = false;
  detail += fmt("csv deterministic %s, ", determinism_ok ? "ok" : "BROKEN");

  // KDE agrees with the direct sum at 1e-10 relative error
  bool kde_ok = true;
  {
    const PointCloud cloud = gen_gaussian_mixture(1200, 8, 2.0, 21);
    const double h = silverman_bandwidth(cloud);
    Rng rng(22);
    std::vector<Vec3> queries(64);
    for (Vec3& q : queries) q = {rng.uniform(), rng.uniform(), rng.uniform()};
    const DensityEstimate est = kde_density(cloud, queries, h);
    for (std::size_t i = 0; i < queries.size(); ++i) {
      const double brute = oracle::kde_at(cloud.points, h, queries[i]);
      if (std::fabs(est.densities[i] - brute) > 1e-10 * std::max(1.0, std::fabs(brute)))
        kde_ok = false;
    }
  }
  if (!kde_ok) pass = false;
  detail += fmt("kde 1e-10 %s, ", kde_ok ? "ok" : "BROKEN");

  const bool budget_ok = elapsed_so_far < 300.0;
  if (!budget_ok) pass = false;
  detail += fmt("suite %.0f s (budget 300)", elapsed_so_far);
  report(8, "invariant suites", pass, detail);
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  criterion_1_auto_m();
  criterion_2_bottleneck_fidelity();
  criterion_3_topology_recovery();
  criterion_4_coverage_advantage();
  criterion_5_reduction_oracle();
  criterion_6_bottleneck_oracle();
  criterion_7_greedy_oracle();
  criterion_8_invariants(seconds_since(t0));

  const double total = seconds_since(t0);
  std::printf("%d/8 criteria passed in %.1f s\n", 8 - failures, total);
  return failures == 0 ? 0 : 1;
}
