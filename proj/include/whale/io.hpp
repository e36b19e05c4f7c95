#pragma once

#include <string>

#include "whale/cloud.hpp"
#include "whale/persistence.hpp"

namespace whale {

// Point-cloud CSV: header "x,y,z,weight", one point per row, plain decimal
// notation, row order preserved.
void write_cloud_csv(const PointCloud& cloud, const std::string& path);
PointCloud read_cloud_csv(const std::string& path);

// Volume container: magic "WVOL", three little-endian u32 dims, three f32
// spacings, then dims-product f32 intensities with x fastest.
void write_volume(const VolumeGrid& vol, const std::string& path);
VolumeGrid read_volume(const std::string& path);

// Diagram CSV: header "dim,birth,death", death "inf" for essential features,
// rows sorted by (dim, birth, death).
void write_diagram_csv(const PersistenceDiagram& diagram, const std::string& path);
PersistenceDiagram read_diagram_csv(const std::string& path);

// Debug dump, one simplex per line: "value dim v0 v1 [v2]", stored order.
void write_filtration_dump(const SimplicialFiltration& filtration, const std::string& path);

}  // namespace whale
