#include "vimod/homography.hpp"

#include <cmath>

#include "vimod/errors.hpp"

namespace vimod {

namespace {
constexpr double kScaleEps = 1e-12;
}

Homography normalize(const Homography& h) {
  const double w = h.m(2, 2);
  if (std::abs(w) <= kScaleEps) {
    throw DegenerateHomography("cannot normalize, |m(2,2)| <= 1e-12");
  }
  return Homography{h.m / w};
}

Homography compose(const Homography& a, const Homography& b) {
  return normalize(Homography{a.m * b.m});
}

Homography invert(const Homography& h) {
  const double det = h.m.determinant();
  if (!std::isfinite(det) || std::abs(det) <= kScaleEps) {
    throw DegenerateHomography("matrix is singular");
  }
  return normalize(Homography{h.m.inverse()});
}

Eigen::Vector2d apply(const Homography& h, const Eigen::Vector2d& p) {
  const Eigen::Vector3d q = h.m * Eigen::Vector3d(p.x(), p.y(), 1.0);
  if (std::abs(q.z()) <= kScaleEps) {
    throw PointAtInfinity("homogeneous scale vanished under this map");
  }
  return {q.x() / q.z(), q.y() / q.z()};
}

Vec8 to_vec8(const Homography& h) {
  Vec8 v;
  v << h.m(0, 0), h.m(0, 1), h.m(0, 2), h.m(1, 0), h.m(1, 1), h.m(1, 2),
      h.m(2, 0), h.m(2, 1);
  return v;
}

Homography from_vec8(const Vec8& v) {
  Homography h;
  h.m << v(0), v(1), v(2), v(3), v(4), v(5), v(6), v(7), 1.0;
  return h;
}

}  // namespace vimod
