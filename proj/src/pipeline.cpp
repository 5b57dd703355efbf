#include "vimod/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>

#include "vimod/errors.hpp"
#include "vimod/planes.hpp"
#include "vimod/texture.hpp"

namespace vimod {

namespace {

constexpr int kPyramidLevels = 3;

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

}  // namespace

PipelineState initial_pipeline_state(const PipelineConfig& cfg) {
  PipelineState s;
  s.fusion = initial_fusion_state(cfg);
  return s;
}

FrameResult process_frame(const ImageBuffer& prev, const ImageBuffer& cur,
                          const std::optional<PoseSample>& pose_prev,
                          const std::optional<PoseSample>& pose_cur,
                          PipelineState& state, const CameraModel& cam,
                          const PipelineConfig& cfg,
                          const AblationFlags& flags) {
  if (!prev.same_size(cur)) {
    throw SizeMismatch("consecutive frames differ in size");
  }
  if (flags.use_inertial_fusion && (!pose_prev || !pose_cur)) {
    throw InputMismatch("inertial fusion needs poses for both frames");
  }

  FrameResult res;
  res.frame_index =
      pose_cur ? pose_cur->frame_index : state.frames_processed + 1;
  const auto frame_start = Clock::now();

  if (state.ground_model.empty()) {
    state.ground_model = GmmModel(cur.width, cur.height);
    state.front_model = GmmModel(cur.width, cur.height);
    state.maps = ProbabilityMaps::zeros(cur.width, cur.height);
  }

  auto t0 = Clock::now();
  if (state.prev_pyramid.empty()) {
    state.prev_pyramid = build_pyramid(luma(prev), kPyramidLevels);
  }
  std::vector<ImageF> cur_pyr = build_pyramid(luma(cur), kPyramidLevels);
  const SampleGrid grid = make_sample_grid(cur.width, cur.height,
                                           cfg.sample_stride,
                                           flow_grid_margin());
  const FlowField flow = track(state.prev_pyramid, cur_pyr, grid);
  res.timings.flow_ms = ms_since(t0);

  t0 = Clock::now();
  const CorrespondenceSet corr = correspondences_from_flow(grid, flow);
  std::optional<RansacResult> vision;
  // A frame with violent motion can lose vision entirely: too few surviving
  // tracks, no consensus among them, or a degenerate fit. All of these leave
  // `vision` empty and the fusion filter coasts on the inertial prediction.
  try {
    vision = ransac_homography(
        corr, cfg.ransac_threshold, cfg.ransac_max_iters,
        hash_combine(cfg.seed, std::uint64_t(res.frame_index) * 2),
        cfg.min_ground_inliers);
  } catch (const InsufficientCorrespondences&) {
  } catch (const NoConsensus&) {
  } catch (const DegenerateHomography&) {
  }
  double ratio = std::numeric_limits<double>::infinity();
  if (vision) {
    ratio = double(corr.size() - vision->inliers.size()) /
            double(vision->inliers.size());
  }
  res.outlier_ratio = ratio;
  res.vision_used = vision.has_value();
  res.timings.homography_ms = ms_since(t0);

  t0 = Clock::now();
  Homography h_frame;
  if (flags.use_inertial_fusion) {
    const Vec8 x_prev = state.fusion.x;
    const Homography h_inertial =
        inertial_ground_homography(*pose_prev, *pose_cur, cam, PlaneModel{});
    predict(state.fusion, h_inertial);
    if (vision) {
      update(state.fusion, vision->h, ratio);
    } else {
      skip_update(state.fusion);
    }
    h_frame = fused_frame_homography(state.fusion.x, x_prev);
  } else {
    h_frame = vision ? vision->h : state.prev_frame_h;
  }
  state.prev_frame_h = h_frame;
  res.h_ground = h_frame;
  res.timings.fusion_ms = ms_since(t0);

  t0 = Clock::now();
  const PlaneSplit split = split_planes(
      corr, h_frame, cfg,
      hash_combine(cfg.seed, std::uint64_t(res.frame_index) * 2 + 1),
      flags.use_front_plane);
  res.h_front = split.front_h;
  res.timings.homography_ms += ms_since(t0);

  t0 = Clock::now();
  const PixelMask d_t =
      dual_plane_mask(prev, cur, state.ground_model, state.front_model,
                      h_frame, split.front_h);
  res.raw_mask = d_t;
  res.timings.subtraction_ms = ms_since(t0);

  t0 = Clock::now();
  if (flags.use_refinement) {
    const EntropyGrid entropy = grid_entropy(grid, flow, cfg);
    update_maps(state.maps, d_t, entropy, cfg);
    res.final_mask = threshold_and_clean(state.maps, d_t, cfg.fg_threshold);
    res.p_fg = state.maps.p_fg;
  } else {
    res.final_mask = close3(open3(d_t));
    res.p_fg = ImageF::Ones(cur.height, cur.width);
  }
  res.timings.refinement_ms = ms_since(t0);

  state.prev_pyramid = std::move(cur_pyr);
  state.frames_processed += 1;
  res.timings.total_ms = ms_since(frame_start);
  return res;
}

namespace {

double percentile95(std::vector<double> v) {
  if (v.empty()) {
    return 0.0;
  }
  std::sort(v.begin(), v.end());
  const std::size_t idx = std::min(
      v.size() - 1,
      std::size_t(std::ceil(0.95 * double(v.size()))) - std::size_t(1));
  return v[idx];
}

double working_set_mb(int w, int h) {
  const double px = double(w) * h;
  const double pyr = 2.0 * px * 4.0 * (1.0 + 0.25 + 0.0625);
  const double grads = 2.0 * px * 4.0 * (1.0 + 0.25 + 0.0625);
  const double gmm = 2.0 * px * (GmmModel::kMaxModes * 3.0 * 4.0 + 1.0);
  const double maps = 4.0 * px * 4.0;
  const double integral = px * 4.0;
  const double frames = 2.0 * px * 3.0;
  const double result = px * 4.0 + 3.0 * px / 8.0;
  return (pyr + grads + gmm + maps + integral + frames + result) / 1048576.0;
}

}  // namespace

ThroughputSummary process_sequence(
    int frame_count, const std::function<ImageBuffer(int)>& frame_at,
    const std::vector<PoseSample>& poses, const CameraModel& cam,
    const PipelineConfig& cfg, const AblationFlags& flags,
    const FrameSink& sink) {
  if (frame_count < 2) {
    throw InputMismatch("need at least two frames");
  }
  std::vector<const PoseSample*> pose_of(frame_count, nullptr);
  if (flags.use_inertial_fusion) {
    for (const PoseSample& p : poses) {
      if (p.frame_index >= 0 && p.frame_index < frame_count) {
        pose_of[p.frame_index] = &p;
      }
    }
    for (int t = 0; t < frame_count; ++t) {
      if (pose_of[t] == nullptr) {
        throw InputMismatch("missing pose for frame " + std::to_string(t));
      }
    }
  }

  PipelineState state = initial_pipeline_state(cfg);
  ImageBuffer prev = frame_at(0);
  const int w = prev.width;
  const int h = prev.height;

  std::vector<StageTimings> timings;
  timings.reserve(frame_count - 1);
  for (int t = 1; t < frame_count; ++t) {
    ImageBuffer cur = frame_at(t);
    std::optional<PoseSample> pp;
    std::optional<PoseSample> pc;
    if (flags.use_inertial_fusion) {
      pp = *pose_of[t - 1];
      pc = *pose_of[t];
    }
    FrameResult r =
        process_frame(prev, cur, pp, pc, state, cam, cfg, flags);
    timings.push_back(r.timings);
    if (sink) {
      sink(r);
    }
    prev = std::move(cur);
  }

  ThroughputSummary s;
  s.frames = int(timings.size());
  const auto collect = [&](double StageTimings::*field) {
    std::vector<double> v;
    v.reserve(timings.size());
    for (const StageTimings& t : timings) {
      v.push_back(t.*field);
    }
    return v;
  };
  const auto mean_of = [](const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) {
      acc += x;
    }
    return v.empty() ? 0.0 : acc / double(v.size());
  };
  const auto fill = [&](double StageTimings::*field) {
    const std::vector<double> v = collect(field);
    s.mean.*field = mean_of(v);
    s.p95.*field = percentile95(v);
  };
  fill(&StageTimings::flow_ms);
  fill(&StageTimings::homography_ms);
  fill(&StageTimings::fusion_ms);
  fill(&StageTimings::subtraction_ms);
  fill(&StageTimings::refinement_ms);
  fill(&StageTimings::total_ms);
  s.mean_fps = s.mean.total_ms > 0.0 ? 1000.0 / s.mean.total_ms : 0.0;
  s.peak_memory_mb = working_set_mb(w, h);
  return s;
}

ThroughputSummary process_sequence(const std::vector<ImageBuffer>& frames,
                                   const std::vector<PoseSample>& poses,
                                   const CameraModel& cam,
                                   const PipelineConfig& cfg,
                                   const AblationFlags& flags,
                                   const FrameSink& sink) {
  return process_sequence(
      int(frames.size()), [&](int i) { return frames[std::size_t(i)]; },
      poses, cam, cfg, flags, sink);
}

}  // namespace vimod
