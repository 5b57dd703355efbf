#pragma once

#include "vimod/config.hpp"
#include "vimod/homography.hpp"

namespace vimod {

// Kalman state over the cumulative ground homography since the first frame.
// The eight state entries are the row-major homography entries with the
// bottom-right fixed at one. vision_chain accumulates the vision-only
// estimate that supplies observations; after a skipped frame it is
// re-anchored to the fused estimate.
struct FusionState {
  Vec8 x;
  Matrix8d sigma = Matrix8d::Zero();
  Matrix8d q = Matrix8d::Zero();
  Matrix8d p0 = Matrix8d::Zero();
  Homography vision_chain;
};

FusionState initial_fusion_state(const PipelineConfig& cfg);

// Composes the per-frame inertial homography onto the cumulative state and
// propagates covariance through a central-difference linearization of the
// composition.
void predict(FusionState& s, const Homography& inertial_step);

// Observation covariance inflated by the fraction of correspondences the
// ground plane failed to explain. Throws InvalidRatio when ratio is negative
// or not finite.
Matrix8d adaptive_obs_covariance(const Matrix8d& p0, double ratio);

// Extends the vision chain by the frame's vision homography and corrects the
// state against it.
void update(FusionState& s, const Homography& h_vision, double ratio);

// Handles a frame with no usable vision estimate: the state keeps its
// prediction and the vision chain restarts from the fused estimate.
void skip_update(FusionState& s);

// Per-frame ground homography implied by two consecutive cumulative states.
Homography fused_frame_homography(const Vec8& x_cur, const Vec8& x_prev);

}  // namespace vimod
