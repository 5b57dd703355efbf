#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "vimod/camera.hpp"
#include "vimod/config.hpp"
#include "vimod/flow.hpp"
#include "vimod/homography.hpp"

namespace vimod {

// Matched pixel pairs between the previous and current frame.
struct CorrespondenceSet {
  std::vector<Eigen::Vector2d> prev;
  std::vector<Eigen::Vector2d> cur;

  std::size_t size() const { return prev.size(); }
};

CorrespondenceSet correspondences_from_flow(const SampleGrid& grid,
                                            const FlowField& flow);

// Mean of forward and backward transfer distances for one pair, in pixels.
double symmetric_transfer_error(const Homography& h, const Homography& h_inv,
                                const Eigen::Vector2d& p,
                                const Eigen::Vector2d& q);

// Normalized direct linear transform over >= 4 pairs (Hartley scaling, SVD
// null vector). Throws InsufficientCorrespondences / DegenerateHomography.
Homography fit_homography_dlt(const std::vector<Eigen::Vector2d>& prev,
                              const std::vector<Eigen::Vector2d>& cur);

struct RansacResult {
  Homography h;
  std::vector<int> inliers;  // indices into the correspondence set
};

// Four-point RANSAC with symmetric transfer gating and a final normalized DLT
// refit over the consensus set. Deterministic for a fixed seed. Throws
// NoConsensus when the best consensus stays under max(min_consensus,
// 10% of the set size); InsufficientCorrespondences when size < 4.
RansacResult ransac_homography(const CorrespondenceSet& c, double threshold,
                               int max_iters, std::uint64_t seed,
                               int min_consensus = 12);

// Ground-plane homography between two posed frames, previous pixels to
// current pixels: K * R * (I + T n^T / h) * K^-1 with R = R_cur R_prev^T and
// T = R_prev (C_prev - C_cur) in the previous camera frame; n is the
// plane-ward ground normal rotated into that frame. Throws InvalidPose for
// non-orthonormal rotations or height <= 0.
Homography inertial_ground_homography(const PoseSample& pose_prev,
                                      const PoseSample& pose_cur,
                                      const CameraModel& cam,
                                      const PlaneModel& plane);

// Layered assignment of correspondences: ground inliers under ground_h, an
// optional second (front) plane fitted to the remainder, and what is left.
struct PlaneSplit {
  Homography ground_h;
  std::optional<Homography> front_h;
  std::vector<int> ground_inliers;
  std::vector<int> front_inliers;
  std::vector<int> residual_outliers;
  double outlier_ratio = 0.0;  // non-ground over ground count; +inf if none
};

PlaneSplit split_planes(const CorrespondenceSet& c, const Homography& ground_h,
                        const PipelineConfig& cfg, std::uint64_t seed,
                        bool fit_front = true);

}  // namespace vimod
