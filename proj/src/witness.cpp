#include "whale/witness.hpp"

#include <algorithm>
#include <cmath>

#include "whale/error.hpp"
#include "whale/knn.hpp"

namespace whale {

namespace {

void check_params(const WitnessParams& params) {
  require(params.max_dim == 1 || params.max_dim == 2, Errc::invalid_argument,
          "max_dim must be 1 or 2");
  require(params.k_witness >= static_cast<std::size_t>(params.max_dim) + 1,
          Errc::invalid_argument, "k_witness must be at least max_dim + 1");
}

void check_landmarks(const PointCloud& cloud, const LandmarkSet& landmarks) {
  require(!landmarks.indices.empty(), Errc::invalid_argument, "landmark set is empty");
  std::vector<std::uint32_t> sorted(landmarks.indices);
  std::sort(sorted.begin(), sorted.end());
  require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
          Errc::invalid_argument, "landmark indices must be distinct");
  require(sorted.back() < cloud.size(), Errc::invalid_argument,
          "landmark index out of range");
}

// simplex encodings for the (code, value) min-reduction; m < 2^21 keeps a
// triangle inside 64 bits
constexpr std::uint64_t kMaxLandmarks = 1u << 21;

std::uint64_t encode_edge(std::uint32_t a, std::uint32_t b) {
  return (static_cast<std::uint64_t>(a) << 21) | b;
}
std::uint64_t encode_triangle(std::uint32_t a, std::uint32_t b, std::uint32_t c) {
  return (((static_cast<std::uint64_t>(a) << 21) | b) << 21) | c;
}

}  // namespace

WitnessKnn landmark_knn(const PointCloud& cloud, const LandmarkSet& landmarks,
                        std::size_t k) {
  validate_cloud(cloud);
  check_landmarks(cloud, landmarks);
  require(k >= 1, Errc::invalid_argument, "k must be >= 1");

  std::vector<char> is_landmark(cloud.size(), 0);
  for (std::uint32_t idx : landmarks.indices) is_landmark[idx] = 1;

  std::vector<Vec3> sites(landmarks.indices.size());
  for (std::size_t j = 0; j < sites.size(); ++j) sites[j] = cloud.points[landmarks.indices[j]];
  SiteGrid grid(sites);

  WitnessKnn out;
  out.witness_indices.reserve(cloud.size() - landmarks.indices.size());
  for (std::uint32_t i = 0; i < cloud.size(); ++i)
    if (!is_landmark[i]) out.witness_indices.push_back(i);

  out.neighbors.resize(out.witness_indices.size());
  std::vector<std::pair<std::uint32_t, double>> buf;
  for (std::size_t w = 0; w < out.witness_indices.size(); ++w) {
    grid.knn(cloud.points[out.witness_indices[w]], k, buf);
    out.neighbors[w] = buf;
  }
  return out;
}

SimplicialFiltration build_witness_filtration(const PointCloud& cloud,
                                              const LandmarkSet& landmarks,
                                              const WitnessParams& params) {
  validate_cloud(cloud);
  check_params(params);
  check_landmarks(cloud, landmarks);
  const std::size_t m = landmarks.indices.size();
  require(m >= static_cast<std::size_t>(params.max_dim) + 1, Errc::invalid_argument,
          "need at least max_dim + 1 landmarks");
  require(m < kMaxLandmarks, Errc::invalid_argument, "landmark count exceeds encoding limit");
  require(m < cloud.size(), Errc::empty_witness,
          "every point is a landmark: no witnesses remain");

  const WitnessKnn knn = landmark_knn(cloud, landmarks, params.k_witness);

  // One (code, witness cost) entry per candidate subset of each witness's
  // list; a sort + sweep keeps the minimum cost per simplex. The list is
  // sorted by distance, so a subset's cost is the distance at its largest
  // position.
  struct Entry {
    std::uint64_t code;
    double value;
    bool operator<(const Entry& o) const {
      return code != o.code ? code < o.code : value < o.value;
    }
  };
  std::vector<Entry> edges;
  std::vector<Entry> triangles;
  const bool want_triangles = params.k_witness >= 3;
  for (const auto& list : knn.neighbors) {
    const std::size_t len = list.size();
    for (std::size_t j = 1; j < len; ++j) {
      const double cost = list[j].second;
      for (std::size_t i = 0; i < j; ++i) {
        auto [a, b] = std::minmax(list[i].first, list[j].first);
        edges.push_back({encode_edge(a, b), cost});
        if (want_triangles) {
          for (std::size_t l = 0; l < i; ++l) {
            std::array<std::uint32_t, 3> t{list[l].first, list[i].first, list[j].first};
            std::sort(t.begin(), t.end());
            triangles.push_back({encode_triangle(t[0], t[1], t[2]), cost});
          }
        }
      }
    }
  }

  SimplicialFiltration out;
  out.landmark_count = static_cast<std::uint32_t>(m);
  out.simplices.reserve(m + edges.size() / 2 + triangles.size() / 2);
  for (std::uint32_t v = 0; v < m; ++v)
    out.simplices.push_back({{static_cast<std::int32_t>(v), -1, -1}, 0, 0.0});

  auto reduce_min = [&](std::vector<Entry>& entries, std::int8_t dim) {
    std::sort(entries.begin(), entries.end());
    for (std::size_t i = 0; i < entries.size();) {
      std::size_t j = i;
      while (j < entries.size() && entries[j].code == entries[i].code) ++j;
      FilteredSimplex s;
      s.dim = dim;
      s.value = entries[i].value;  // sorted: first entry per code is the min
      if (dim == 1) {
        s.v = {static_cast<std::int32_t>(entries[i].code >> 21),
               static_cast<std::int32_t>(entries[i].code & (kMaxLandmarks - 1)), -1};
      } else {
        s.v = {static_cast<std::int32_t>(entries[i].code >> 42),
               static_cast<std::int32_t>((entries[i].code >> 21) & (kMaxLandmarks - 1)),
               static_cast<std::int32_t>(entries[i].code & (kMaxLandmarks - 1))};
      }
      out.simplices.push_back(s);
      i = j;
    }
  };
  reduce_min(edges, 1);
  reduce_min(triangles, 2);

  std::sort(out.simplices.begin(), out.simplices.end(),
            [](const FilteredSimplex& a, const FilteredSimplex& b) {
              if (a.value != b.value) return a.value < b.value;
              if (a.dim != b.dim) return a.dim < b.dim;
              return a.v < b.v;
            });
  return out;
}

void validate_filtration(const SimplicialFiltration& filtration) {
  const auto& simplices = filtration.simplices;
  require(!simplices.empty(), Errc::invalid_filtration, "filtration is empty");

  for (std::size_t i = 0; i < simplices.size(); ++i) {
    const FilteredSimplex& s = simplices[i];
    require(s.dim >= 0 && s.dim <= 2, Errc::invalid_filtration, "simplex dim out of range");
    for (int v = 0; v <= s.dim; ++v) {
      require(s.v[v] >= 0 && static_cast<std::uint32_t>(s.v[v]) < filtration.landmark_count,
              Errc::invalid_filtration, "vertex ordinal out of range");
      if (v > 0)
        require(s.v[v - 1] < s.v[v], Errc::invalid_filtration, "vertices must be ascending");
    }
    if (i > 0) {
      const FilteredSimplex& p = simplices[i - 1];
      const bool ordered = p.value < s.value ||
                           (p.value == s.value &&
                            (p.dim < s.dim || (p.dim == s.dim && p.v < s.v)));
      require(ordered, Errc::invalid_filtration,
              "simplices must be strictly sorted by (value, dim, vertices)");
    }
  }

  // face closure with face value <= coface value
  std::vector<std::pair<std::uint64_t, double>> by_code;
  by_code.reserve(simplices.size());
  auto code_of = [](const FilteredSimplex& s) -> std::uint64_t {
    if (s.dim == 0) return static_cast<std::uint64_t>(s.v[0]);
    if (s.dim == 1) return (std::uint64_t{1} << 62) | encode_edge(s.v[0], s.v[1]);
    return (std::uint64_t{2} << 62) | encode_triangle(s.v[0], s.v[1], s.v[2]);
  };
  for (const FilteredSimplex& s : simplices) by_code.emplace_back(code_of(s), s.value);
  std::sort(by_code.begin(), by_code.end());
  auto value_of = [&](std::uint64_t code) -> const double* {
    auto it = std::lower_bound(by_code.begin(), by_code.end(),
                               std::make_pair(code, -std::numeric_limits<double>::infinity()));
    if (it == by_code.end() || it->first != code) return nullptr;
    return &it->second;
  };
  for (const FilteredSimplex& s : simplices) {
    if (s.dim == 0) continue;
    for (int drop = 0; drop <= s.dim; ++drop) {
      FilteredSimplex f;
      f.dim = static_cast<std::int8_t>(s.dim - 1);
      int out_i = 0;
      for (int v = 0; v <= s.dim; ++v)
        if (v != drop) f.v[out_i++] = s.v[v];
      for (; out_i < 3; ++out_i) f.v[out_i] = -1;
      const double* fv = value_of(code_of(f));
      require(fv != nullptr, Errc::invalid_filtration, "missing face in filtration");
      require(*fv <= s.value, Errc::invalid_filtration,
              "face enters after its coface");
    }
  }
}

}  // namespace whale
