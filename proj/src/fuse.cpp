#include "vimod/fuse.hpp"

#include <cmath>

#include "vimod/errors.hpp"

namespace vimod {

FusionState initial_fusion_state(const PipelineConfig& cfg) {
  FusionState s;
  s.x = to_vec8(Homography::identity());
  s.sigma = Matrix8d::Zero();
  s.q = cfg.q_diag.asDiagonal();
  s.p0 = cfg.p0_diag.asDiagonal();
  s.vision_chain = Homography::identity();
  return s;
}

void predict(FusionState& s, const Homography& inertial_step) {
  const auto step = [&inertial_step](const Vec8& v) {
    return to_vec8(compose(inertial_step, from_vec8(v)));
  };
  constexpr double kFdStep = 1e-6;
  Matrix8d f;
  for (int j = 0; j < 8; ++j) {
    Vec8 plus = s.x;
    Vec8 minus = s.x;
    plus(j) += kFdStep;
    minus(j) -= kFdStep;
    f.col(j) = (step(plus) - step(minus)) / (2.0 * kFdStep);
  }
  s.x = step(s.x);
  s.sigma = f * s.sigma * f.transpose() + s.q;
  s.sigma = 0.5 * (s.sigma + s.sigma.transpose()).eval();
}

Matrix8d adaptive_obs_covariance(const Matrix8d& p0, double ratio) {
  if (!std::isfinite(ratio) || ratio < 0.0) {
    throw InvalidRatio("outlier ratio must be finite and non-negative");
  }
  return p0 * (1.0 + ratio);
}

void update(FusionState& s, const Homography& h_vision, double ratio) {
  const Matrix8d p_t = adaptive_obs_covariance(s.p0, ratio);
  s.vision_chain = compose(h_vision, s.vision_chain);
  const Vec8 z = to_vec8(s.vision_chain);
  const Matrix8d innovation_cov = s.sigma + p_t;
  // gain = sigma * innovation_cov^-1, via one symmetric solve
  const Matrix8d gain =
      innovation_cov.ldlt().solve(s.sigma).transpose();
  s.x += gain * (z - s.x);
  s.sigma = (Matrix8d::Identity() - gain) * s.sigma;
  s.sigma = 0.5 * (s.sigma + s.sigma.transpose()).eval();
}

void skip_update(FusionState& s) { s.vision_chain = from_vec8(s.x); }

Homography fused_frame_homography(const Vec8& x_cur, const Vec8& x_prev) {
  return compose(from_vec8(x_cur), invert(from_vec8(x_prev)));
}

}  // namespace vimod
