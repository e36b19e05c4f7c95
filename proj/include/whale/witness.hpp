#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "whale/cloud.hpp"
#include "whale/landmarks.hpp"

namespace whale {

struct WitnessParams {
  std::size_t k_witness = 8;  // nearest landmarks retained per witness
  int max_dim = 2;            // highest reported homology dimension, 1 or 2
};

struct FilteredSimplex {
  std::array<std::int32_t, 3> v{-1, -1, -1};  // sorted landmark ordinals, -1 padding
  std::int8_t dim = 0;                        // 0, 1, or 2
  double value = 0.0;

  int vertex_count() const { return dim + 1; }
};

// Simplices sorted by (value, dim, lexicographic vertices); face-monotone by
// construction. Vertex ordinals index into the landmark set that built it.
struct SimplicialFiltration {
  std::vector<FilteredSimplex> simplices;
  std::uint32_t landmark_count = 0;
};

struct WitnessKnn {
  std::vector<std::uint32_t> witness_indices;  // cloud indices of X minus L, ascending
  // per witness: (landmark ordinal, exact distance) sorted by (distance, ordinal)
  std::vector<std::vector<std::pair<std::uint32_t, double>>> neighbors;
};

// k nearest landmarks for every non-landmark point; lists have min(k, m) entries.
WitnessKnn landmark_knn(const PointCloud& cloud, const LandmarkSet& landmarks,
                        std::size_t k);

// Lazy witness filtration: all landmarks enter as vertices at 0; an edge or
// triangle sigma drawn from some witness's k-NN landmark list enters at
//   f(sigma) = min over such witnesses of max_{v in sigma} d(witness, v).
// Triangles are always generated (k permitting) so that loop deaths are
// observable; params.max_dim only caps the homology dimensions reported
// downstream. Requires k_witness >= max_dim + 1 and at least one witness.
SimplicialFiltration build_witness_filtration(const PointCloud& cloud,
                                              const LandmarkSet& landmarks,
                                              const WitnessParams& params);

// Checks ordering and face-closure; throws invalid_filtration on violation.
void validate_filtration(const SimplicialFiltration& filtration);

}  // namespace whale
