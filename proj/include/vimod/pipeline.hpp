#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "vimod/bgmodel.hpp"
#include "vimod/camera.hpp"
#include "vimod/config.hpp"
#include "vimod/flow.hpp"
#include "vimod/fuse.hpp"
#include "vimod/image.hpp"
#include "vimod/refine.hpp"

namespace vimod {

// Feature switches for the ablation study. All combinations are valid.
struct AblationFlags {
  bool use_front_plane = true;
  bool use_inertial_fusion = true;
  bool use_refinement = true;
};

struct StageTimings {
  double flow_ms = 0.0;
  double homography_ms = 0.0;
  double fusion_ms = 0.0;
  double subtraction_ms = 0.0;
  double refinement_ms = 0.0;
  double total_ms = 0.0;
};

struct FrameResult {
  int frame_index = 0;
  PixelMask raw_mask;    // dual-plane subtraction output
  PixelMask final_mask;  // after refinement and morphology
  ImageF p_fg;           // foreground probability; all ones when refinement off
  Homography h_ground;   // per-frame ground homography, prev to cur pixels
  std::optional<Homography> h_front;
  double outlier_ratio = 0.0;  // vision fit outliers per inlier; +inf if none
  bool vision_used = false;    // false when the frame fell back to prediction
  StageTimings timings;
};

// Everything carried between frames. Models and maps are sized lazily from
// the first processed frame.
struct PipelineState {
  FusionState fusion;
  GmmModel ground_model;
  GmmModel front_model;
  ProbabilityMaps maps;
  std::vector<ImageF> prev_pyramid;
  Homography prev_frame_h;  // fallback when vision-only mode loses consensus
  int frames_processed = 0;
};

PipelineState initial_pipeline_state(const PipelineConfig& cfg);

// One full detection step from frame `prev` to frame `cur`. Poses are
// required exactly when inertial fusion is enabled. A frame whose vision
// estimate finds no consensus falls back to the predicted homography (or the
// previous frame's homography without fusion) and skips the filter update.
FrameResult process_frame(const ImageBuffer& prev, const ImageBuffer& cur,
                          const std::optional<PoseSample>& pose_prev,
                          const std::optional<PoseSample>& pose_cur,
                          PipelineState& state, const CameraModel& cam,
                          const PipelineConfig& cfg,
                          const AblationFlags& flags);

struct ThroughputSummary {
  int frames = 0;  // results produced (one less than input frames)
  double mean_fps = 0.0;
  StageTimings mean;
  StageTimings p95;
  double peak_memory_mb = 0.0;  // analytic working-set estimate
};

using FrameSink = std::function<void(const FrameResult&)>;

// Folds process_frame over a sequence, streaming each result to `sink`.
// Throws InputMismatch when fusion is on and the poses do not cover every
// frame index, or when fewer than two frames are given.
ThroughputSummary process_sequence(
    int frame_count, const std::function<ImageBuffer(int)>& frame_at,
    const std::vector<PoseSample>& poses, const CameraModel& cam,
    const PipelineConfig& cfg, const AblationFlags& flags,
    const FrameSink& sink);

ThroughputSummary process_sequence(const std::vector<ImageBuffer>& frames,
                                   const std::vector<PoseSample>& poses,
                                   const CameraModel& cam,
                                   const PipelineConfig& cfg,
                                   const AblationFlags& flags,
                                   const FrameSink& sink);

}  // namespace vimod
