#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace whale {

using Vec3 = std::array<double, 3>;

inline double dist2(const Vec3& a, const Vec3& b) {
  const double dx = a[0] - b[0];
  const double dy = a[1] - b[1];
  const double dz = a[2] - b[2];
  return dx * dx + dy * dy + dz * dz;
}

inline double dist(const Vec3& a, const Vec3& b) { return std::sqrt(dist2(a, b)); }

struct Aabb {
  Vec3 lo{0.0, 0.0, 0.0};
  Vec3 hi{0.0, 0.0, 0.0};

  void expand(const Vec3& p) {
    for (int a = 0; a < 3; ++a) {
      if (p[a] < lo[a]) lo[a] = p[a];
      if (p[a] > hi[a]) hi[a] = p[a];
    }
  }

  double extent(int axis) const { return hi[axis] - lo[axis]; }

  // squared distance from q to the box, 0 if inside
  double dist2_to(const Vec3& q) const {
    double s = 0.0;
    for (int a = 0; a < 3; ++a) {
      double d = 0.0;
      if (q[a] < lo[a]) d = lo[a] - q[a];
      else if (q[a] > hi[a]) d = q[a] - hi[a];
      s += d * d;
    }
    return s;
  }
};

}  // namespace whale
