#pragma once

#include <Eigen/Dense>

namespace vimod {

// Pinhole intrinsics. Pixel (x, y) sees the camera-frame ray
// ((x - cx) / fx, (y - cy) / fy, 1).
struct CameraModel {
  double fx = 500.0;
  double fy = 500.0;
  double cx = 320.0;
  double cy = 240.0;

  Eigen::Matrix3d matrix() const {
    Eigen::Matrix3d k;
    k << fx, 0.0, cx, 0.0, fy, cy, 0.0, 0.0, 1.0;
    return k;
  }
};

// Camera pose relative to a fixed reference frame whose z axis points down
// toward the ground plane (z = 0). A reference point x_ref appears in camera
// coordinates as r_cam * (x_ref - t_cam); t_cam is the camera position in the
// reference frame and height is the distance above the ground plane.
struct PoseSample {
  int frame_index = 0;
  double t = 0.0;
  Eigen::Matrix3d r_cam = Eigen::Matrix3d::Identity();
  Eigen::Vector3d t_cam = Eigen::Vector3d::Zero();
  double height = 0.0;
};

// Ground-plane normal in the reference frame, pointing from the camera side
// toward the plane. (0,0,1) matches the z-down reference frame above.
struct PlaneModel {
  Eigen::Vector3d n{0.0, 0.0, 1.0};
};

inline bool is_rotation(const Eigen::Matrix3d& r, double tol = 1e-6) {
  const Eigen::Matrix3d e = r * r.transpose() - Eigen::Matrix3d::Identity();
  return e.cwiseAbs().maxCoeff() <= tol && r.determinant() > 0.0;
}

}  // namespace vimod
