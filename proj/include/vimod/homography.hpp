#pragma once

#include <Eigen/Dense>

namespace vimod {

using Vec8 = Eigen::Matrix<double, 8, 1>;
using Matrix8d = Eigen::Matrix<double, 8, 8>;

// Plane-projective map between pixel coordinates. The matrix acts on
// homogeneous pixel vectors (x, y, 1).
struct Homography {
  Eigen::Matrix3d m = Eigen::Matrix3d::Identity();

  static Homography identity() { return {}; }
};

// Scales the matrix so m(2,2) == 1. Throws DegenerateHomography when
// |m(2,2)| <= 1e-12.
Homography normalize(const Homography& h);

// normalize(a.m * b.m): apply b first, then a.
Homography compose(const Homography& a, const Homography& b);

// Normalized matrix inverse. Throws DegenerateHomography when the matrix is
// not invertible.
Homography invert(const Homography& h);

// Maps a pixel through the homography. Throws PointAtInfinity when the
// homogeneous scale drops below 1e-12 in magnitude.
Eigen::Vector2d apply(const Homography& h, const Eigen::Vector2d& p);

// Row-major top eight entries (h11 h12 h13 h21 h22 h23 h31 h32). Round-trips
// exactly with from_vec8 when m(2,2) == 1.
Vec8 to_vec8(const Homography& h);
Homography from_vec8(const Vec8& v);

}  // namespace vimod
