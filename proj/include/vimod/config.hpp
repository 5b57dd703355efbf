#pragma once

#include <cstdint>
#include <string>

#include "vimod/homography.hpp"

namespace vimod {

// Tunables for the detection pipeline. Defaults reproduce the reference
// configuration used by the bundled benchmark suite.
struct PipelineConfig {
  int sample_stride = 16;    // flow sample spacing in pixels
  int histogram_bins = 12;   // orientation bins (30 degrees each)
  int grid_span = 4;         // sample points per entropy cell side
  double alpha = 0.4;        // temporal map rate
  double beta = 0.4;         // spatial map rate
  double gamma = 0.6;        // entropy map rate
  Vec8 q_diag;               // process noise diagonal
  Vec8 p0_diag;              // base observation noise diagonal
  double ransac_threshold = 3.0;  // symmetric transfer inlier gate, pixels
  int ransac_max_iters = 500;
  int min_ground_inliers = 12;
  int min_front_inliers = 12;
  double fg_threshold = 0.05;  // foreground probability cut
  int spatial_w = 5;           // spatial map box window side
  double entropy_floor = 0.1;  // lower clamp on entropy, bits
  double flow_min_mag = 0.5;   // minimum flow magnitude entering histograms
  std::uint64_t seed = 1;

  // Process noise reflects the per-frame uncertainty of the inertial
  // prediction, observation noise that of a clean vision fit, both in the
  // units of the corresponding state entry (the two large q entries are the
  // pixel-translation coordinates). The balance leaves vision dominant on
  // clean frames while a high outlier ratio can push a frame's observation
  // weight well below the prediction's.
  PipelineConfig() {
    q_diag << 2e-3, 2e-3, 1.0, 2e-3, 2e-3, 1.0, 1e-6, 1e-6;
    p0_diag << 1e-3, 1e-3, 0.25, 1e-3, 1e-3, 0.25, 1e-5, 1e-5;
  }

  // Throws ConfigError when a value is out of range.
  void validate() const;
};

// Parses a flat "key = value" file. '#' starts a comment, blank lines are
// skipped, unknown keys raise ConfigError. q_diag / p0_diag take eight
// comma-separated values.
PipelineConfig load_config(const std::string& path);

}  // namespace vimod
