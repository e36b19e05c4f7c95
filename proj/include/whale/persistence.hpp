#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "whale/cloud.hpp"
#include "whale/landmarks.hpp"
#include "whale/witness.hpp"

namespace whale {

constexpr double kInfDeath = std::numeric_limits<double>::infinity();

struct Feature {
  double birth = 0.0;
  double death = kInfDeath;                 // infinity marks an essential class
  std::vector<std::int32_t> birth_vertices; // vertices of the birth simplex (ordinals)
  std::vector<Vec3> birth_vertex_points;    // resolved coordinates, may be empty

  double lifetime() const { return death - birth; }
  bool essential() const { return death == kInfDeath; }
};

struct PersistenceDiagram {
  std::array<std::vector<Feature>, 3> features_by_dim;
  std::size_t zero_lifetime_dropped = 0;

  const std::vector<Feature>& dim(int d) const { return features_by_dim[d]; }
  std::size_t count(int d) const { return features_by_dim[d].size(); }
};

// GF(2) boundary-matrix column reduction with the twist/clearing optimization.
// Input must be a valid filtration (sorted, face-closed); pairs with equal
// birth and death values are dropped (tallied in zero_lifetime_dropped);
// unpaired positive simplices become essential features with death infinity.
PersistenceDiagram compute_persistence(const SimplicialFiltration& filtration);

// Vietoris-Rips reference on a seeded subsample: vertices at 0, edges at their
// length, triangles at their diameter, everything beyond the distance cap
// omitted (classes still alive there surface as essential). cap defaults to
// the sample's enclosing radius (max distance to the sample centroid).
// sample_size is clamped to n and refused above 1500.
PersistenceDiagram rips_reference(const PointCloud& cloud, std::size_t sample_size,
                                  int max_dim, std::uint64_t seed,
                                  std::optional<double> cap = std::nullopt);

// Fills birth_vertex_points from the landmark set that produced the diagram.
void resolve_representatives(PersistenceDiagram& diagram, const LandmarkSet& landmarks,
                             const PointCloud& cloud);

// Finite view of one dimension up to scale T: deaths clamp to T, features born
// at or beyond T vanish, zero-lifetime leftovers vanish.
std::vector<Feature> truncated_features(const PersistenceDiagram& diagram, int d, double T);

}  // namespace whale
