#include "whale/landmarks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "whale/error.hpp"
#include "whale/persistence.hpp"
#include "whale/rng.hpp"

namespace whale {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void check_density(const PointCloud& cloud, const DensityEstimate& density) {
  require(density.densities.size() == cloud.size(), Errc::invalid_argument,
          "density estimate is not aligned with the cloud");
  for (double d : density.densities)
    require(std::isfinite(d) && d > 0.0, Errc::invalid_argument,
            "densities must be positive and finite");
}

// Weighted sampling without replacement (successive-sampling order): draw an
// exponential key -log(u)/w per item and keep the k smallest.
std::vector<std::uint32_t> weighted_sample_without_replacement(
    const std::vector<double>& w, std::size_t k, Rng& rng) {
  struct Keyed {
    double key;
    std::uint32_t idx;
    bool operator<(const Keyed& o) const {
      return key != o.key ? key < o.key : idx < o.idx;
    }
  };
  std::vector<Keyed> keys(w.size());
  for (std::uint32_t i = 0; i < w.size(); ++i)
    keys[i] = {-std::log(1.0 - rng.uniform()) / w[i], i};
  k = std::min(k, w.size());
  std::partial_sort(keys.begin(), keys.begin() + k, keys.end());
  std::vector<std::uint32_t> out(k);
  for (std::size_t i = 0; i < k; ++i) out[i] = keys[i].idx;
  return out;
}

struct GreedyState {
  const PointCloud& cloud;
  std::vector<std::uint32_t> pool;     // candidate cloud indices
  std::vector<double> dmin;            // d(pool[i], L), +inf before first pick
  std::vector<double> factor;          // (1/(rho+eps))^alpha per pool entry
  std::vector<char> taken;

  GreedyState(const PointCloud& c, std::vector<std::uint32_t> p,
              const DensityEstimate& density, double alpha, double epsilon)
      : cloud(c), pool(std::move(p)) {
    dmin.assign(pool.size(), std::numeric_limits<double>::infinity());
    factor.resize(pool.size());
    taken.assign(pool.size(), 0);
    for (std::size_t i = 0; i < pool.size(); ++i)
      factor[i] = std::pow(1.0 / (density.densities[pool[i]] + epsilon), alpha);
  }

  void absorb(std::uint32_t cloud_idx) {
    const Vec3& q = cloud.points[cloud_idx];
    for (std::size_t i = 0; i < pool.size(); ++i) {
      const double d = dist(cloud.points[pool[i]], q);
      if (d < dmin[i]) dmin[i] = d;
    }
  }

  // Best remaining entry under pred; -1 when none qualifies. Ties break to
  // the lowest cloud index. Before any pick the density factor alone scores.
  template <typename Pred>
  long best(bool first_pick, Pred&& pred) const {
    long best_i = -1;
    double best_score = -1.0;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (taken[i] || !pred(i)) continue;
      const double score = first_pick ? factor[i] : dmin[i] * factor[i];
      if (best_i < 0 || score > best_score ||
          (score == best_score && pool[i] < pool[best_i])) {
        best_i = static_cast<long>(i);
        best_score = score;
      }
    }
    return best_i;
  }
};

std::vector<std::uint32_t> build_pool(const PointCloud& cloud, const DensityEstimate& density,
                                      std::size_t m, const HybridParams& params, Rng& rng) {
  const std::size_t n = cloud.size();
  std::size_t pool_size = n;
  if (n > 1) {
    const double raw = params.pool_constant * static_cast<double>(m) *
                       std::log(static_cast<double>(n));
    pool_size = std::min<std::size_t>(n, static_cast<std::size_t>(std::ceil(raw)));
  }
  if (m > pool_size) pool_size = n;  // widen so the request stays satisfiable
  if (pool_size >= n) {
    std::vector<std::uint32_t> all(n);
    std::iota(all.begin(), all.end(), 0u);
    return all;
  }
  std::vector<double> inv(n);
  for (std::size_t i = 0; i < n; ++i) inv[i] = 1.0 / (density.densities[i] + params.epsilon);
  return weighted_sample_without_replacement(inv, pool_size, rng);
}

void check_hybrid_params(const HybridParams& params) {
  require(params.alpha >= 0.0, Errc::invalid_argument, "alpha must be >= 0");
  require(params.epsilon > 0.0, Errc::invalid_argument, "epsilon must be > 0");
  require(params.pool_constant > 0.0, Errc::invalid_argument, "pool_constant must be > 0");
}

}  // namespace

const char* method_name(SelectionMethod m) {
  switch (m) {
    case SelectionMethod::random: return "random";
    case SelectionMethod::density: return "density";
    case SelectionMethod::hybrid: return "hybrid";
    case SelectionMethod::cycle_aware: return "cycle_aware";
  }
  return "unknown";
}

std::size_t auto_m(std::size_t n, const AutoMParams& params) {
  require(n >= 1, Errc::invalid_argument, "auto_m needs n >= 1");
  require(params.beta > 0.0 && params.gamma > 0.0, Errc::invalid_argument,
          "auto_m needs positive beta and gamma");
  require(params.m_min <= params.m_max, Errc::invalid_argument,
          "auto_m needs m_min <= m_max");
  const double raw = params.beta * std::pow(static_cast<double>(n), params.gamma);
  const auto rounded = static_cast<std::size_t>(std::llround(raw));
  return std::min(params.m_max, std::max(params.m_min, rounded));
}

LandmarkSet select_random(const PointCloud& cloud, std::size_t m, std::uint64_t seed) {
  const auto t0 = Clock::now();
  validate_cloud(cloud);
  require(m >= 1, Errc::invalid_argument, "m must be >= 1");
  Rng rng(seed);
  LandmarkSet out;
  out.method = SelectionMethod::random;
  out.indices = rng.sample_without_replacement(
      static_cast<std::uint32_t>(cloud.size()), static_cast<std::uint32_t>(std::min(m, cloud.size())));
  out.selection_seconds = seconds_since(t0);
  return out;
}

LandmarkSet select_density(const PointCloud& cloud, const DensityEstimate& density,
                           std::size_t m, std::uint64_t seed) {
  const auto t0 = Clock::now();
  validate_cloud(cloud);
  check_density(cloud, density);
  require(m >= 1, Errc::invalid_argument, "m must be >= 1");
  std::vector<double> w(cloud.size());
  for (std::size_t i = 0; i < w.size(); ++i)
    w[i] = density.densities[i] * cloud.weights[i];
  Rng rng(seed);
  LandmarkSet out;
  out.method = SelectionMethod::density;
  out.indices = weighted_sample_without_replacement(w, m, rng);
  out.selection_seconds = seconds_since(t0);
  return out;
}

LandmarkSet select_hybrid(const PointCloud& cloud, const DensityEstimate& density,
                          std::size_t m, const HybridParams& params) {
  const auto t0 = Clock::now();
  validate_cloud(cloud);
  check_density(cloud, density);
  check_hybrid_params(params);
  require(m >= 1, Errc::invalid_argument, "m must be >= 1");

  Rng rng(params.seed);
  GreedyState state(cloud, build_pool(cloud, density, m, params, rng), density,
                    params.alpha, params.epsilon);

  LandmarkSet out;
  out.method = SelectionMethod::hybrid;
  const std::size_t want = std::min(m, cloud.size());
  out.indices.reserve(want);
  while (out.indices.size() < want) {
    const long i = state.best(out.indices.empty(), [](std::size_t) { return true; });
    if (i < 0) break;  // pool exhausted (want > pool only when pool == cloud)
    state.taken[i] = 1;
    out.indices.push_back(state.pool[i]);
    state.absorb(state.pool[i]);
  }
  require(!out.indices.empty(), Errc::empty_selection, "hybrid selection picked nothing");
  out.selection_seconds = seconds_since(t0);
  return out;
}

LandmarkSet select_cycle_aware(const PointCloud& cloud, const DensityEstimate& density,
                               std::size_t m, const HybridParams& params,
                               const PersistenceDiagram& prior,
                               const CycleAwareParams& cycle) {
  const auto t0 = Clock::now();
  validate_cloud(cloud);
  check_density(cloud, density);
  check_hybrid_params(params);
  require(m >= 1, Errc::invalid_argument, "m must be >= 1");
  require(cycle.reserve_fraction >= 0.0 && cycle.reserve_fraction <= 1.0,
          Errc::invalid_argument, "reserve_fraction must lie in [0, 1]");
  require(cycle.locality_radius >= 0.0, Errc::invalid_argument,
          "locality_radius must be >= 0");

  // Representatives: birth-simplex vertex coordinates of qualifying H1 features.
  std::vector<Vec3> reps;
  for (const Feature& f : prior.dim(1)) {
    if (!(f.lifetime() > cycle.lifetime_threshold)) continue;
    for (const Vec3& p : f.birth_vertex_points) reps.push_back(p);
  }

  const std::size_t reserve_slots =
      static_cast<std::size_t>(cycle.reserve_fraction * static_cast<double>(m));

  // Pool construction consumes the seed stream exactly as select_hybrid does,
  // so reserve_fraction == 0 or an empty representative set reproduces it.
  Rng rng(params.seed);
  GreedyState state(cloud, build_pool(cloud, density, m, params, rng), density,
                    params.alpha, params.epsilon);

  std::vector<char> local(state.pool.size(), 0);
  bool any_local = false;
  if (reserve_slots > 0 && !reps.empty()) {
    const double r2 = cycle.locality_radius * cycle.locality_radius;
    for (std::size_t i = 0; i < state.pool.size(); ++i) {
      const Vec3& p = cloud.points[state.pool[i]];
      for (const Vec3& rep : reps) {
        if (dist2(p, rep) <= r2) {
          local[i] = 1;
          any_local = true;
          break;
        }
      }
    }
  }

  LandmarkSet out;
  out.method = SelectionMethod::cycle_aware;
  const std::size_t want = std::min(m, cloud.size());
  out.indices.reserve(want);

  if (any_local) {
    while (out.indices.size() < reserve_slots && out.indices.size() < want) {
      const long i = state.best(out.indices.empty(),
                                [&](std::size_t j) { return local[j] != 0; });
      if (i < 0) break;  // locality region exhausted; hand over to the full sweep
      state.taken[i] = 1;
      out.indices.push_back(state.pool[i]);
      state.absorb(state.pool[i]);
    }
  }
  while (out.indices.size() < want) {
    const long i = state.best(out.indices.empty(), [](std::size_t) { return true; });
    if (i < 0) break;
    state.taken[i] = 1;
    out.indices.push_back(state.pool[i]);
    state.absorb(state.pool[i]);
  }
  require(!out.indices.empty(), Errc::empty_selection, "cycle-aware selection picked nothing");
  out.selection_seconds = seconds_since(t0);
  return out;
}

}  // namespace whale
