#include "whale/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "whale/error.hpp"
#include "whale/rng.hpp"

namespace whale {

namespace {

// symmetric difference of sorted row-index columns (GF(2) column addition)
void xor_into(std::vector<std::int32_t>& col, const std::vector<std::int32_t>& other,
              std::vector<std::int32_t>& buf) {
  buf.clear();
  buf.reserve(col.size() + other.size());
  std::set_symmetric_difference(col.begin(), col.end(), other.begin(), other.end(),
                                std::back_inserter(buf));
  col.swap(buf);
}

std::uint64_t edge_code(std::int32_t a, std::int32_t b) {
  return (static_cast<std::uint64_t>(a) << 21) | static_cast<std::uint64_t>(b);
}

}  // namespace

PersistenceDiagram compute_persistence(const SimplicialFiltration& filtration) {
  const auto& simplices = filtration.simplices;
  require(!simplices.empty(), Errc::invalid_filtration, "filtration is empty");
  const std::size_t n = simplices.size();

  // ordering check + lookup tables for face resolution
  std::vector<std::int64_t> vertex_index(filtration.landmark_count, -1);
  std::vector<std::pair<std::uint64_t, std::int32_t>> edge_index;
  for (std::size_t i = 0; i < n; ++i) {
    const FilteredSimplex& s = simplices[i];
    require(s.dim >= 0 && s.dim <= 2, Errc::invalid_filtration, "simplex dim out of range");
    for (int v = 0; v <= s.dim; ++v) {
      require(s.v[v] >= 0 &&
                  static_cast<std::uint32_t>(s.v[v]) < filtration.landmark_count,
              Errc::invalid_filtration, "vertex ordinal out of range");
      if (v > 0)
        require(s.v[v - 1] < s.v[v], Errc::invalid_filtration,
                "simplex vertices must be ascending");
    }
    if (i > 0) {
      const FilteredSimplex& p = simplices[i - 1];
      const bool ordered = p.value < s.value ||
                           (p.value == s.value &&
                            (p.dim < s.dim || (p.dim == s.dim && p.v < s.v)));
      require(ordered, Errc::invalid_filtration,
              "filtration must be strictly sorted by (value, dim, vertices)");
    }
    if (s.dim == 0) {
      vertex_index[s.v[0]] = static_cast<std::int64_t>(i);
    } else if (s.dim == 1) {
      edge_index.emplace_back(edge_code(s.v[0], s.v[1]), static_cast<std::int32_t>(i));
    }
  }
  std::sort(edge_index.begin(), edge_index.end());

  auto find_vertex = [&](std::int32_t v) -> std::int32_t {
    const std::int64_t idx = vertex_index[v];
    require(idx >= 0, Errc::invalid_filtration, "missing vertex face");
    return static_cast<std::int32_t>(idx);
  };
  auto find_edge = [&](std::int32_t a, std::int32_t b) -> std::int32_t {
    const std::uint64_t code = edge_code(a, b);
    auto it = std::lower_bound(edge_index.begin(), edge_index.end(),
                               std::make_pair(code, std::int32_t{-1}));
    require(it != edge_index.end() && it->first == code, Errc::invalid_filtration,
            "missing edge face");
    return it->second;
  };

  std::vector<std::int32_t> pair_of(n, -1);   // birth index -> death index
  std::vector<char> cleared(n, 0);            // paired birth columns, skipped
  std::vector<char> positive(n, 0);           // column reduced to zero
  std::vector<std::int64_t> pivot_owner(n, -1);
  std::vector<std::vector<std::int32_t>> stored(n);

  std::vector<std::int32_t> col, buf;
  for (int d = 2; d >= 1; --d) {
    for (std::size_t j = 0; j < n; ++j) {
      const FilteredSimplex& s = simplices[j];
      if (s.dim != d || cleared[j]) continue;
      col.clear();
      if (d == 1) {
        col.push_back(find_vertex(s.v[0]));
        col.push_back(find_vertex(s.v[1]));
      } else {
        col.push_back(find_edge(s.v[0], s.v[1]));
        col.push_back(find_edge(s.v[0], s.v[2]));
        col.push_back(find_edge(s.v[1], s.v[2]));
      }
      std::sort(col.begin(), col.end());
      require(col.back() < static_cast<std::int32_t>(j), Errc::invalid_filtration,
              "face enters after its coface");
      while (!col.empty()) {
        const std::int64_t owner = pivot_owner[col.back()];
        if (owner < 0) break;
        xor_into(col, stored[owner], buf);
      }
      if (col.empty()) {
        positive[j] = 1;
      } else {
        const std::int32_t birth = col.back();
        pivot_owner[birth] = static_cast<std::int64_t>(j);
        stored[j] = col;
        pair_of[birth] = static_cast<std::int32_t>(j);
        cleared[birth] = 1;  // twist: the paired birth column need not reduce
      }
    }
  }

  PersistenceDiagram diagram;
  auto emit = [&](std::size_t birth_idx, double death) {
    const FilteredSimplex& b = simplices[birth_idx];
    Feature f;
    f.birth = b.value;
    f.death = death;
    f.birth_vertices.assign(b.v.begin(), b.v.begin() + b.vertex_count());
    diagram.features_by_dim[b.dim].push_back(std::move(f));
  };

  for (std::size_t i = 0; i < n; ++i) {
    const FilteredSimplex& s = simplices[i];
    if (pair_of[i] >= 0) {
      const double death = simplices[pair_of[i]].value;
      if (death == s.value)
        ++diagram.zero_lifetime_dropped;
      else
        emit(i, death);
    } else if (s.dim == 0 ? !cleared[i] : positive[i]) {
      emit(i, kInfDeath);
    }
  }

  for (auto& feats : diagram.features_by_dim)
    std::sort(feats.begin(), feats.end(), [](const Feature& a, const Feature& b) {
      return a.birth != b.birth ? a.birth < b.birth : a.death < b.death;
    });
  return diagram;
}

PersistenceDiagram rips_reference(const PointCloud& cloud, std::size_t sample_size,
                                  int max_dim, std::uint64_t seed,
                                  std::optional<double> cap) {
  validate_cloud(cloud);
  require(max_dim == 1 || max_dim == 2, Errc::invalid_argument, "max_dim must be 1 or 2");
  require(sample_size >= 2, Errc::invalid_argument, "sample_size must be >= 2");
  require(sample_size <= 1500, Errc::invalid_argument,
          "sample_size above the 1500-point guard");

  Rng rng(seed);
  std::vector<std::uint32_t> sample = rng.sample_without_replacement(
      static_cast<std::uint32_t>(cloud.size()),
      static_cast<std::uint32_t>(std::min(sample_size, cloud.size())));
  std::sort(sample.begin(), sample.end());
  const std::size_t s = sample.size();

  std::vector<Vec3> pts(s);
  for (std::size_t i = 0; i < s; ++i) pts[i] = cloud.points[sample[i]];

  double cap_value;
  if (cap.has_value()) {
    cap_value = *cap;
    require(cap_value > 0.0, Errc::invalid_argument, "cap must be positive");
  } else {
    Vec3 centroid{0.0, 0.0, 0.0};
    for (const Vec3& p : pts)
      for (int a = 0; a < 3; ++a) centroid[a] += p[a];
    for (int a = 0; a < 3; ++a) centroid[a] /= static_cast<double>(s);
    cap_value = 0.0;
    for (const Vec3& p : pts) cap_value = std::max(cap_value, dist(centroid, p));
  }

  SimplicialFiltration filtration;
  filtration.landmark_count = static_cast<std::uint32_t>(s);
  for (std::uint32_t v = 0; v < s; ++v)
    filtration.simplices.push_back({{static_cast<std::int32_t>(v), -1, -1}, 0, 0.0});

  // edges within the cap, then triangles over the capped edge graph
  std::vector<std::vector<std::pair<std::uint32_t, double>>> nbr(s);  // j > i only
  for (std::uint32_t i = 0; i < s; ++i)
    for (std::uint32_t j = i + 1; j < s; ++j) {
      const double dij = dist(pts[i], pts[j]);
      if (dij <= cap_value) {
        filtration.simplices.push_back(
            {{static_cast<std::int32_t>(i), static_cast<std::int32_t>(j), -1}, 1, dij});
        nbr[i].emplace_back(j, dij);
      }
    }
  for (std::uint32_t i = 0; i < s; ++i)
    for (std::size_t a = 0; a < nbr[i].size(); ++a)
      for (std::size_t b = a + 1; b < nbr[i].size(); ++b) {
        const auto [j, dij] = nbr[i][a];
        const auto [l, dil] = nbr[i][b];
        const double djl = dist(pts[j], pts[l]);
        if (djl <= cap_value)
          filtration.simplices.push_back(
              {{static_cast<std::int32_t>(i), static_cast<std::int32_t>(j),
                static_cast<std::int32_t>(l)},
               2, std::max({dij, dil, djl})});
      }

  std::sort(filtration.simplices.begin(), filtration.simplices.end(),
            [](const FilteredSimplex& a, const FilteredSimplex& b) {
              if (a.value != b.value) return a.value < b.value;
              if (a.dim != b.dim) return a.dim < b.dim;
              return a.v < b.v;
            });

  PersistenceDiagram diagram = compute_persistence(filtration);
  if (max_dim == 1) diagram.features_by_dim[2].clear();
  return diagram;
}

void resolve_representatives(PersistenceDiagram& diagram, const LandmarkSet& landmarks,
                             const PointCloud& cloud) {
  for (auto& feats : diagram.features_by_dim)
    for (Feature& f : feats) {
      f.birth_vertex_points.clear();
      for (std::int32_t v : f.birth_vertices) {
        require(v >= 0 && static_cast<std::size_t>(v) < landmarks.indices.size(),
                Errc::invalid_argument, "feature vertex outside the landmark set");
        f.birth_vertex_points.push_back(cloud.points[landmarks.indices[v]]);
      }
    }
}

std::vector<Feature> truncated_features(const PersistenceDiagram& diagram, int d, double T) {
  require(d >= 0 && d <= 2, Errc::invalid_argument, "dimension must be 0, 1, or 2");
  require(T > 0.0, Errc::invalid_argument, "truncation scale must be positive");
  std::vector<Feature> out;
  for (const Feature& f : diagram.dim(d)) {
    if (!(f.birth < T)) continue;
    Feature t = f;
    t.death = std::min(f.death, T);
    if (t.death > t.birth) out.push_back(std::move(t));
  }
  return out;
}

}  // namespace whale
