#include "whale/io.hpp"

#include <algorithm>
#include <bit>
#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

#include "whale/error.hpp"

namespace whale {

namespace {

std::string location(const std::string& path, std::size_t line_no) {
  return path + ":" + std::to_string(line_no);
}

double parse_number(const std::string& token, const std::string& path,
                    std::size_t line_no) {
  require(!token.empty(), Errc::parse_error, "empty field at " + location(path, line_no));
  errno = 0;
  char* end = nullptr;
  const double value = std::strtod(token.c_str(), &end);
  require(errno == 0 && end == token.c_str() + token.size(), Errc::parse_error,
          "bad number '" + token + "' at " + location(path, line_no));
  return value;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string::size_type start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

// getline with CRLF tolerance; returns false at EOF
bool next_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

void put_u32(std::ostream& out, std::uint32_t v) {
  const unsigned char bytes[4] = {
      static_cast<unsigned char>(v & 0xff), static_cast<unsigned char>((v >> 8) & 0xff),
      static_cast<unsigned char>((v >> 16) & 0xff),
      static_cast<unsigned char>((v >> 24) & 0xff)};
  out.write(reinterpret_cast<const char*>(bytes), 4);
}

void put_f32(std::ostream& out, float v) { put_u32(out, std::bit_cast<std::uint32_t>(v)); }

std::uint32_t take_u32(std::istream& in, const std::string& path) {
  unsigned char bytes[4];
  in.read(reinterpret_cast<char*>(bytes), 4);
  require(in.gcount() == 4, Errc::parse_error, "truncated volume file " + path);
  return static_cast<std::uint32_t>(bytes[0]) |
         (static_cast<std::uint32_t>(bytes[1]) << 8) |
         (static_cast<std::uint32_t>(bytes[2]) << 16) |
         (static_cast<std::uint32_t>(bytes[3]) << 24);
}

float take_f32(std::istream& in, const std::string& path) {
  return std::bit_cast<float>(take_u32(in, path));
}

}  // namespace

void write_cloud_csv(const PointCloud& cloud, const std::string& path) {
  validate_cloud(cloud);
  std::ofstream out(path);
  require(out.is_open(), Errc::io_error, "cannot open " + path + " for writing");
  out << "x,y,z,weight\n";
  char row[160];
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const Vec3& p = cloud.points[i];
    std::snprintf(row, sizeof(row), "%.12f,%.12f,%.12f,%.12f\n", p[0], p[1], p[2],
                  cloud.weights[i]);
    out << row;
  }
  require(out.good(), Errc::io_error, "write failed for " + path);
}

PointCloud read_cloud_csv(const std::string& path) {
  std::ifstream in(path);
  require(in.is_open(), Errc::io_error, "cannot open " + path);
  std::string line;
  require(next_line(in, line), Errc::parse_error, "empty file " + path);
  require(line == "x,y,z,weight", Errc::parse_error,
          "expected header 'x,y,z,weight' in " + path);
  PointCloud cloud;
  std::size_t line_no = 1;
  while (next_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_csv(line);
    require(fields.size() == 4, Errc::parse_error,
            "expected 4 fields at " + location(path, line_no));
    Vec3 p;
    for (int a = 0; a < 3; ++a) p[a] = parse_number(fields[a], path, line_no);
    const double w = parse_number(fields[3], path, line_no);
    require(std::isfinite(p[0]) && std::isfinite(p[1]) && std::isfinite(p[2]),
            Errc::parse_error, "non-finite coordinate at " + location(path, line_no));
    require(std::isfinite(w) && w > 0.0, Errc::parse_error,
            "weight must be positive and finite at " + location(path, line_no));
    cloud.points.push_back(p);
    cloud.weights.push_back(w);
  }
  require(!cloud.points.empty(), Errc::parse_error, "no data rows in " + path);
  return cloud;
}

void write_volume(const VolumeGrid& vol, const std::string& path) {
  validate_volume(vol);
  std::ofstream out(path, std::ios::binary);
  require(out.is_open(), Errc::io_error, "cannot open " + path + " for writing");
  out.write("WVOL", 4);
  for (int a = 0; a < 3; ++a) put_u32(out, vol.dims[a]);
  for (int a = 0; a < 3; ++a) put_f32(out, vol.spacing[a]);
  for (float v : vol.intensities) put_f32(out, v);
  require(out.good(), Errc::io_error, "write failed for " + path);
}

VolumeGrid read_volume(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.is_open(), Errc::io_error, "cannot open " + path);
  char magic[4];
  in.read(magic, 4);
  require(in.gcount() == 4 && std::memcmp(magic, "WVOL", 4) == 0, Errc::parse_error,
          "bad magic in " + path);
  VolumeGrid vol;
  std::uint64_t count = 1;
  for (int a = 0; a < 3; ++a) {
    vol.dims[a] = take_u32(in, path);
    require(vol.dims[a] > 0, Errc::parse_error, "zero dimension in " + path);
    count *= vol.dims[a];
    require(count <= (1u << 30), Errc::parse_error, "volume too large in " + path);
  }
  for (int a = 0; a < 3; ++a) {
    vol.spacing[a] = take_f32(in, path);
    require(std::isfinite(vol.spacing[a]) && vol.spacing[a] > 0.0f, Errc::parse_error,
            "spacing must be positive in " + path);
  }
  vol.intensities.resize(count);
  for (std::uint64_t i = 0; i < count; ++i) vol.intensities[i] = take_f32(in, path);
  require(in.peek() == std::ifstream::traits_type::eof(), Errc::parse_error,
          "trailing bytes in " + path);
  validate_volume(vol);
  return vol;
}

void write_diagram_csv(const PersistenceDiagram& diagram, const std::string& path) {
  std::ofstream out(path);
  require(out.is_open(), Errc::io_error, "cannot open " + path + " for writing");
  out << "dim,birth,death\n";
  char row[96], value[40];
  for (int d = 0; d <= 2; ++d)
    for (const Feature& f : diagram.dim(d)) {
      if (f.essential()) {
        std::snprintf(value, sizeof(value), "inf");
      } else {
        std::snprintf(value, sizeof(value), "%.17g", f.death);
      }
      std::snprintf(row, sizeof(row), "%d,%.17g,%s\n", d, f.birth, value);
      out << row;
    }
  require(out.good(), Errc::io_error, "write failed for " + path);
}

PersistenceDiagram read_diagram_csv(const std::string& path) {
  std::ifstream in(path);
  require(in.is_open(), Errc::io_error, "cannot open " + path);
  std::string line;
  require(next_line(in, line), Errc::parse_error, "empty file " + path);
  require(line == "dim,birth,death", Errc::parse_error,
          "expected header 'dim,birth,death' in " + path);
  PersistenceDiagram diagram;
  std::size_t line_no = 1;
  while (next_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_csv(line);
    require(fields.size() == 3, Errc::parse_error,
            "expected 3 fields at " + location(path, line_no));
    const double dim_value = parse_number(fields[0], path, line_no);
    require(dim_value == 0.0 || dim_value == 1.0 || dim_value == 2.0, Errc::parse_error,
            "dim must be 0, 1, or 2 at " + location(path, line_no));
    Feature f;
    f.birth = parse_number(fields[1], path, line_no);
    f.death = fields[2] == "inf" ? kInfDeath : parse_number(fields[2], path, line_no);
    require(std::isfinite(f.birth), Errc::parse_error,
            "non-finite birth at " + location(path, line_no));
    require(f.death > f.birth, Errc::parse_error,
            "death must exceed birth at " + location(path, line_no));
    diagram.features_by_dim[static_cast<int>(dim_value)].push_back(std::move(f));
  }
  for (auto& feats : diagram.features_by_dim)
    std::sort(feats.begin(), feats.end(), [](const Feature& a, const Feature& b) {
      return a.birth != b.birth ? a.birth < b.birth : a.death < b.death;
    });
  return diagram;
}

void write_filtration_dump(const SimplicialFiltration& filtration, const std::string& path) {
  std::ofstream out(path);
  require(out.is_open(), Errc::io_error, "cannot open " + path + " for writing");
  char row[120];
  for (const FilteredSimplex& s : filtration.simplices) {
    int len = std::snprintf(row, sizeof(row), "%.17g %d", s.value, s.dim);
    for (int v = 0; v <= s.dim; ++v)
      len += std::snprintf(row + len, sizeof(row) - static_cast<std::size_t>(len), " %d",
                           s.v[v]);
    out << row << '\n';
  }
  require(out.good(), Errc::io_error, "write failed for " + path);
}

}  // namespace whale
