#include "vimod/evalkit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "vimod/csvio.hpp"
#include "vimod/errors.hpp"
#include "vimod/parallel.hpp"
#include "vimod/pipeline.hpp"
#include "vimod/pnm.hpp"
#include "vimod/simgen.hpp"

namespace vimod {

std::vector<double> default_thresholds() {
  std::vector<double> t(64);
  for (int i = 0; i < 64; ++i) {
    t[i] = i / 63.0;
  }
  return t;
}

namespace {

void accumulate_counts(const PixelMask& pred, const PixelMask& gt,
                       PrPoint* p) {
  const auto tp = static_cast<long long>(mask_and(pred, gt).count());
  p->tp += tp;
  p->fp += static_cast<long long>(pred.count()) - tp;
  p->fn += static_cast<long long>(gt.count()) - tp;
}

void finish_rates(PrPoint* p) {
  p->precision =
      (p->tp + p->fp) == 0 ? 1.0 : double(p->tp) / double(p->tp + p->fp);
  p->recall =
      (p->tp + p->fn) == 0 ? 1.0 : double(p->tp) / double(p->tp + p->fn);
}

}  // namespace

PrCurve precision_recall(const std::vector<EvalFrame>& frames,
                         const std::vector<double>& thresholds,
                         int annotation_stride) {
  if (annotation_stride <= 0) {
    throw ConfigError("annotation stride must be positive");
  }
  for (std::size_t i = 1; i < thresholds.size(); ++i) {
    if (!(thresholds[i] > thresholds[i - 1])) {
      throw ConfigError("thresholds must be strictly increasing");
    }
  }
  PrCurve curve(thresholds.size());
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    curve[i].threshold = thresholds[i];
  }
  int used = 0;
  for (const EvalFrame& f : frames) {
    if (f.frame_index % annotation_stride != 0) {
      continue;
    }
    if (f.gt == nullptr) {
      throw MissingGroundTruth("frame " + std::to_string(f.frame_index));
    }
    if (f.maps == nullptr || f.d_t == nullptr) {
      throw InputMismatch("missing prediction data for frame " +
                          std::to_string(f.frame_index));
    }
    ++used;
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
      const PixelMask pred =
          threshold_and_clean(*f.maps, *f.d_t, thresholds[i]);
      accumulate_counts(pred, *f.gt, &curve[i]);
    }
  }
  if (used == 0) {
    throw MissingGroundTruth("no annotated frames in the selection");
  }
  for (PrPoint& p : curve) {
    finish_rates(&p);
  }
  return curve;
}

ErrorAt50 error_at_50(const PrCurve& curve) {
  if (curve.empty()) {
    throw ConfigError("empty precision-recall curve");
  }
  int i = -1;
  for (int k = 0; k < static_cast<int>(curve.size()); ++k) {
    if (curve[k].recall >= 0.5) {
      i = k;
    }
  }
  ErrorAt50 e;
  if (i < 0) {
    e.unreachable = true;
    e.value = 1.0;
    return e;
  }
  double precision = curve[i].precision;
  if (curve[i].recall > 0.5 && i + 1 < static_cast<int>(curve.size())) {
    const PrPoint& a = curve[i];
    const PrPoint& b = curve[i + 1];  // first point with recall < 0.5
    const double w = (a.recall - 0.5) / (a.recall - b.recall);
    precision = a.precision + w * (b.precision - a.precision);
  }
  e.value = 1.0 - precision;
  return e;
}

double macro_error_at_50(const std::vector<ErrorAt50>& errors) {
  if (errors.empty()) {
    throw ConfigError("no sequences to aggregate");
  }
  double sum = 0.0;
  for (const ErrorAt50& e : errors) {
    sum += e.unreachable ? 1.0 : e.value;
  }
  return sum / static_cast<double>(errors.size());
}

double f1_score(long long tp, long long fp, long long fn) {
  const double p = (tp + fp) == 0 ? 1.0 : double(tp) / double(tp + fp);
  const double r = (tp + fn) == 0 ? 1.0 : double(tp) / double(tp + fn);
  return (p + r) == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

void write_pr_csv(const std::string& path, const PrCurve& curve) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot write " + path);
  }
  out << "threshold,precision,recall\n";
  for (const PrPoint& p : curve) {
    out << format_double(p.threshold) << ',' << format_double(p.precision)
        << ',' << format_double(p.recall) << '\n';
  }
  if (!out) {
    throw IoError("failed writing " + path);
  }
}

PrCurve read_pr_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open " + path);
  }
  PrCurve curve;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') {
      continue;
    }
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    const auto f = split_fields(line, ',');
    if (f.size() != 3) {
      throw IoError("bad row in " + path + ": " + line);
    }
    PrPoint p;
    p.threshold = parse_double(f[0]);
    p.precision = parse_double(f[1]);
    p.recall = parse_double(f[2]);
    curve.push_back(p);
  }
  return curve;
}

namespace {

namespace fs = std::filesystem;

std::string six_digit(const std::string& dir, const char* stem, int frame,
                      const char* ext) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s_%06d.%s", stem, frame, ext);
  return dir + "/" + buf;
}

void write_pfg16(const std::string& path, const ImageF& p_fg) {
  const int w = static_cast<int>(p_fg.cols());
  const int h = static_cast<int>(p_fg.rows());
  std::vector<std::uint16_t> v(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const float p = std::clamp(p_fg(y, x), 0.0f, 1.0f);
      v[static_cast<std::size_t>(y) * w + x] =
          static_cast<std::uint16_t>(std::lround(p * 65535.0f));
    }
  }
  write_pgm16(path, v, w, h);
}

ImageF read_pfg16(const std::string& path) {
  int w = 0;
  int h = 0;
  const std::vector<std::uint16_t> v = read_pgm16(path, &w, &h);
  ImageF img(h, w);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      img(y, x) = v[static_cast<std::size_t>(y) * w + x] / 65535.0f;
    }
  }
  return img;
}

PipelineConfig load_cfg(const std::string& path, std::uint64_t seed,
                        bool seed_given) {
  PipelineConfig cfg;
  if (!path.empty()) {
    cfg = load_config(path);
  }
  if (seed_given) {
    cfg.seed = seed;
  }
  cfg.validate();
  return cfg;
}

const std::vector<PoseSample>& maybe_poses(
    const std::vector<PoseSample>& poses, bool fusion) {
  static const std::vector<PoseSample> none;
  return fusion ? poses : none;
}

// ---- detect ----------------------------------------------------------------

struct DetectOptions {
  std::string seq_dir;
  std::string out_dir;
  std::string config_path;
  AblationFlags flags;
  int mask_stride = 1;
  std::uint64_t seed = 1;
  bool seed_given = false;
};

int run_detect(const DetectOptions& opt) {
  const SequenceDir seq = open_sequence(opt.seq_dir);
  const PipelineConfig cfg =
      load_cfg(opt.config_path, opt.seed, opt.seed_given);
  fs::create_directories(opt.out_dir + "/masks");
  fs::create_directories(opt.out_dir + "/prob");

  std::ofstream timings(opt.out_dir + "/timings.csv", std::ios::binary);
  if (!timings) {
    throw IoError("cannot write " + opt.out_dir + "/timings.csv");
  }
  timings << "frame,flow_ms,homography_ms,fusion_ms,subtraction_ms,"
             "refinement_ms,total_ms\n";

  const FrameSink sink = [&](const FrameResult& r) {
    if (r.frame_index % opt.mask_stride == 0) {
      write_mask_pgm(six_digit(opt.out_dir + "/masks", "raw", r.frame_index,
                               "pgm"),
                     r.raw_mask);
      write_mask_pgm(six_digit(opt.out_dir + "/masks", "final", r.frame_index,
                               "pgm"),
                     r.final_mask);
    }
    if (r.frame_index % kAnnotationStride == 0) {
      write_pfg16(six_digit(opt.out_dir + "/prob", "pfg", r.frame_index,
                            "pgm"),
                  r.p_fg);
    }
    timings << r.frame_index << ',' << format_double(r.timings.flow_ms) << ','
            << format_double(r.timings.homography_ms) << ','
            << format_double(r.timings.fusion_ms) << ','
            << format_double(r.timings.subtraction_ms) << ','
            << format_double(r.timings.refinement_ms) << ','
            << format_double(r.timings.total_ms) << '\n';
  };

  const ThroughputSummary s = process_sequence(
      seq.frame_count, [&](int i) { return load_frame(seq, i); },
      maybe_poses(seq.poses_imu, opt.flags.use_inertial_fusion), seq.camera,
      cfg, opt.flags, sink);

  std::ofstream sum(opt.out_dir + "/summary_timing.csv", std::ios::binary);
  sum << "frames,mean_fps,peak_memory_mb,flow_ms_mean,homography_ms_mean,"
         "fusion_ms_mean,subtraction_ms_mean,refinement_ms_mean,total_ms_mean,"
         "flow_ms_p95,homography_ms_p95,fusion_ms_p95,subtraction_ms_p95,"
         "refinement_ms_p95,total_ms_p95\n";
  sum << s.frames << ',' << format_double(s.mean_fps) << ','
      << format_double(s.peak_memory_mb);
  for (const StageTimings* t : {&s.mean, &s.p95}) {
    sum << ',' << format_double(t->flow_ms) << ','
        << format_double(t->homography_ms) << ','
        << format_double(t->fusion_ms) << ','
        << format_double(t->subtraction_ms) << ','
        << format_double(t->refinement_ms) << ','
        << format_double(t->total_ms);
  }
  sum << '\n';

  std::cout << seq.name << ": " << s.frames << " frames, "
            << std::lround(s.mean_fps * 10.0) / 10.0 << " fps mean\n";
  return 0;
}

// ---- eval ------------------------------------------------------------------

struct EvalOptions {
  std::string data_dir;
  std::string pred_dir;
  std::string out_dir;
  int stride = kAnnotationStride;
};

int run_eval(const EvalOptions& opt) {
  const SequenceDir seq = open_sequence(opt.data_dir);
  std::deque<ProbabilityMaps> maps_store;
  std::deque<PixelMask> raw_store;
  std::deque<PixelMask> gt_store;
  std::vector<EvalFrame> frames;
  for (int f = 1; f < seq.frame_count; ++f) {
    if (f % opt.stride != 0) {
      continue;
    }
    gt_store.push_back(load_gt(seq, f));
    raw_store.push_back(
        read_mask_pgm(six_digit(opt.pred_dir + "/masks", "raw", f, "pgm")));
    ProbabilityMaps m = ProbabilityMaps::zeros(seq.width, seq.height);
    m.p_fg = read_pfg16(six_digit(opt.pred_dir + "/prob", "pfg", f, "pgm"));
    maps_store.push_back(std::move(m));
    frames.push_back(
        {f, &maps_store.back(), &raw_store.back(), &gt_store.back()});
  }

  const PrCurve curve =
      precision_recall(frames, default_thresholds(), opt.stride);
  const ErrorAt50 err = error_at_50(curve);

  fs::create_directories(opt.out_dir);
  write_pr_csv(opt.out_dir + "/pr.csv", curve);

  std::ofstream rep(opt.out_dir + "/report.txt", std::ios::binary);
  rep << "sequence: " << seq.name << '\n';
  rep << "annotated_frames: " << frames.size() << '\n';
  rep << "error_at_50: "
      << (err.unreachable ? "unreachable" : format_double(err.value)) << '\n';
  // Timing context, if the prediction directory has it.
  std::ifstream sum(opt.pred_dir + "/summary_timing.csv");
  if (sum) {
    std::string header;
    std::string row;
    if (std::getline(sum, header) && std::getline(sum, row)) {
      const auto f = split_fields(row, ',');
      if (f.size() >= 3) {
        rep << "mean_fps: " << f[1] << '\n';
        rep << "peak_memory_mb: " << f[2] << '\n';
      }
    }
  }
  std::cout << seq.name << " error_at_50: "
            << (err.unreachable ? "unreachable" : format_double(err.value))
            << '\n';
  return 0;
}

// ---- ablate / sweep --------------------------------------------------------

struct AblationConfig {
  std::string name;
  AblationFlags flags;
};

std::vector<AblationConfig> ablation_configs() {
  return {
      {"proposed", {true, true, true}},
      {"wo_front_plane", {false, true, true}},
      {"wo_inertial_fusion", {true, false, true}},
      {"wo_foreground_refinement", {true, true, false}},
  };
}

// A sequence fully resident in memory, either rendered or loaded from disk.
struct SceneData {
  std::string name;
  int frame_count = 0;
  CameraModel camera;
  std::vector<ImageBuffer> frames;
  std::vector<PixelMask> gt;
  std::vector<PoseSample> poses_imu;
};

SceneData render_scene(const SceneSpec& spec, std::uint64_t seed) {
  SceneData d;
  d.name = spec.name;
  d.frame_count = spec.frame_count;
  d.camera = spec.camera;
  d.frames.reserve(spec.frame_count);
  d.gt.reserve(spec.frame_count);
  d.poses_imu.reserve(spec.frame_count);
  for (int f = 0; f < spec.frame_count; ++f) {
    RenderedFrame r = render_frame(spec, seed, f);
    d.frames.push_back(std::move(r.rgb));
    d.gt.push_back(std::move(r.gt));
    d.poses_imu.push_back(noisy_pose_at(spec, seed, f));
  }
  return d;
}

SceneData load_scene_dir(const std::string& dir) {
  const SequenceDir seq = open_sequence(dir);
  SceneData d;
  d.name = seq.name;
  d.frame_count = seq.frame_count;
  d.camera = seq.camera;
  d.poses_imu = seq.poses_imu;
  d.frames.reserve(seq.frame_count);
  d.gt.reserve(seq.frame_count);
  for (int f = 0; f < seq.frame_count; ++f) {
    d.frames.push_back(load_frame(seq, f));
    d.gt.push_back(load_gt(seq, f));
  }
  return d;
}

struct RunOutput {
  PrCurve curve;
  ErrorAt50 err;
  double mean_fps = 0.0;
  double peak_memory_mb = 0.0;
};

RunOutput run_config_on_scene(const SceneData& d, const PipelineConfig& cfg,
                              const AblationFlags& flags,
                              const std::vector<double>& thresholds,
                              const std::string& mask_dir, int mask_stride) {
  RunOutput out;
  out.curve.resize(thresholds.size());
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    out.curve[i].threshold = thresholds[i];
  }
  if (!mask_dir.empty()) {
    fs::create_directories(mask_dir);
  }
  const FrameSink sink = [&](const FrameResult& r) {
    if (!mask_dir.empty() && r.frame_index % mask_stride == 0) {
      write_mask_pgm(six_digit(mask_dir, "final", r.frame_index, "pgm"),
                     r.final_mask);
    }
    if (r.frame_index % kAnnotationStride != 0) {
      return;
    }
    ProbabilityMaps pm =
        ProbabilityMaps::zeros(r.raw_mask.width, r.raw_mask.height);
    pm.p_fg = r.p_fg;
    const PixelMask& gtm = d.gt[r.frame_index];
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
      const PixelMask pred = threshold_and_clean(pm, r.raw_mask, thresholds[i]);
      accumulate_counts(pred, gtm, &out.curve[i]);
    }
  };
  const ThroughputSummary ts = process_sequence(
      d.frame_count, [&](int i) { return d.frames[i]; },
      maybe_poses(d.poses_imu, flags.use_inertial_fusion), d.camera, cfg,
      flags, sink);
  for (PrPoint& p : out.curve) {
    finish_rates(&p);
  }
  out.err = error_at_50(out.curve);
  out.mean_fps = ts.mean_fps;
  out.peak_memory_mb = ts.peak_memory_mb;
  return out;
}

struct SuiteOptions {
  std::string out_dir;
  std::string data_dir;  // empty renders the suite in memory
  std::string config_path;
  std::uint64_t seed = 1;
  bool seed_given = false;
  int mask_stride = 20;
  int frame_cap = 0;  // 0 keeps every frame
};

int run_ablate(const SuiteOptions& opt) {
  const PipelineConfig cfg =
      load_cfg(opt.config_path, opt.seed, opt.seed_given);
  const std::vector<AblationConfig> configs = ablation_configs();
  std::vector<SceneSpec> specs = standard_suite_specs();
  if (opt.frame_cap > 0) {
    for (SceneSpec& s : specs) {
      s.frame_count = std::min(s.frame_count, opt.frame_cap);
    }
  }
  const std::vector<double> thresholds = default_thresholds();

  fs::create_directories(opt.out_dir + "/pr");

  // results[config][scene]
  std::vector<std::vector<RunOutput>> results(
      configs.size(), std::vector<RunOutput>(specs.size()));
  for (std::size_t s = 0; s < specs.size(); ++s) {
    SceneData data = opt.data_dir.empty()
                         ? render_scene(specs[s], opt.seed)
                         : load_scene_dir(opt.data_dir + "/" + specs[s].name);
    if (opt.frame_cap > 0 && data.frame_count > opt.frame_cap) {
      data.frame_count = opt.frame_cap;
      data.frames.resize(opt.frame_cap);
      data.gt.resize(opt.frame_cap);
      data.poses_imu.resize(opt.frame_cap);
    }
    for (std::size_t c = 0; c < configs.size(); ++c) {
      const std::string mask_dir =
          opt.out_dir + "/masks/" + configs[c].name + "/" + data.name;
      results[c][s] =
          run_config_on_scene(data, cfg, configs[c].flags, thresholds,
                              mask_dir, opt.mask_stride);
      write_pr_csv(opt.out_dir + "/pr/" + configs[c].name + "_" + data.name +
                       ".csv",
                   results[c][s].curve);
      std::cout << configs[c].name << " / " << data.name << ": error_at_50 "
                << (results[c][s].err.unreachable
                        ? "unreachable"
                        : format_double(results[c][s].err.value))
                << '\n';
    }
  }

  std::ofstream csv(opt.out_dir + "/table.csv", std::ios::binary);
  csv << "config,sequence,error_at_50,reachable\n";
  std::vector<double> macro(configs.size());
  for (std::size_t c = 0; c < configs.size(); ++c) {
    std::vector<ErrorAt50> errs;
    for (std::size_t s = 0; s < specs.size(); ++s) {
      const ErrorAt50& e = results[c][s].err;
      csv << configs[c].name << ',' << specs[s].name << ','
          << format_double(e.unreachable ? 1.0 : e.value) << ','
          << (e.unreachable ? 0 : 1) << '\n';
      errs.push_back(e);
    }
    macro[c] = macro_error_at_50(errs);
    csv << configs[c].name << ",macro," << format_double(macro[c]) << ",1\n";
  }

  std::ofstream txt(opt.out_dir + "/table.txt", std::ios::binary);
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%-26s", "error_at_50");
  txt << buf;
  for (const SceneSpec& s : specs) {
    std::snprintf(buf, sizeof(buf), " %16s", s.name.c_str());
    txt << buf;
  }
  txt << "            macro\n";
  for (std::size_t c = 0; c < configs.size(); ++c) {
    std::snprintf(buf, sizeof(buf), "%-26s", configs[c].name.c_str());
    txt << buf;
    for (std::size_t s = 0; s < specs.size(); ++s) {
      const ErrorAt50& e = results[c][s].err;
      if (e.unreachable) {
        std::snprintf(buf, sizeof(buf), " %16s", "unreachable");
      } else {
        std::snprintf(buf, sizeof(buf), " %16.3f", e.value);
      }
      txt << buf;
    }
    std::snprintf(buf, sizeof(buf), " %16.3f\n", macro[c]);
    txt << buf;
  }

  std::ofstream tim(opt.out_dir + "/ablate_timings.csv", std::ios::binary);
  tim << "config,sequence,mean_fps,peak_memory_mb\n";
  for (std::size_t c = 0; c < configs.size(); ++c) {
    for (std::size_t s = 0; s < specs.size(); ++s) {
      tim << configs[c].name << ',' << specs[s].name << ','
          << format_double(results[c][s].mean_fps) << ','
          << format_double(results[c][s].peak_memory_mb) << '\n';
    }
  }
  return 0;
}

int run_sweep(const SuiteOptions& opt) {
  const PipelineConfig cfg =
      load_cfg(opt.config_path, opt.seed, opt.seed_given);
  const std::vector<SceneSpec> specs = standard_suite_specs();
  const std::vector<double> thresholds = default_thresholds();
  const AblationFlags all_on;

  std::vector<PrCurve> curves;
  for (const SceneSpec& spec : specs) {
    const SceneData data = opt.data_dir.empty()
                               ? render_scene(spec, opt.seed)
                               : load_scene_dir(opt.data_dir + "/" +
                                                spec.name);
    curves.push_back(run_config_on_scene(data, cfg, all_on, thresholds, "", 0)
                         .curve);
    std::cout << "swept " << spec.name << '\n';
  }

  fs::create_directories(opt.out_dir);
  std::ofstream csv(opt.out_dir + "/sweep.csv", std::ios::binary);
  csv << "threshold,macro_f1";
  for (const SceneSpec& s : specs) {
    csv << ",f1_" << s.name;
  }
  csv << '\n';
  double best_f1 = -1.0;
  double best_thr = 0.0;
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    double sum = 0.0;
    std::string row;
    for (const PrCurve& c : curves) {
      const double f1 = f1_score(c[i].tp, c[i].fp, c[i].fn);
      sum += f1;
      row += ',' + format_double(f1);
    }
    const double macro = sum / double(curves.size());
    if (macro > best_f1) {
      best_f1 = macro;
      best_thr = thresholds[i];
    }
    csv << format_double(thresholds[i]) << ',' << format_double(macro) << row
        << '\n';
  }
  std::cout << "best fg_threshold " << format_double(best_thr)
            << " with macro F1 " << format_double(best_f1) << '\n';
  return 0;
}

// ---- simgen ----------------------------------------------------------------

int run_simgen(const std::string& out, std::uint64_t seed, bool suite,
               const std::string& scene) {
  const std::vector<SceneSpec> specs = standard_suite_specs();
  int written = 0;
  for (const SceneSpec& s : specs) {
    if (!suite && s.name != scene) {
      continue;
    }
    write_sequence(s, seed, out + "/" + s.name);
    std::cout << "wrote " << out << "/" << s.name << " (" << s.frame_count
              << " frames)\n";
    ++written;
  }
  if (written == 0) {
    throw ConfigError("unknown scene '" + scene + "'");
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"moving-object detection for a moving camera with inertial-"
               "aided dual-plane background compensation"};
  app.require_subcommand(1);

  int threads = 4;
  app.add_option("--threads", threads, "worker threads")
      ->capture_default_str();
  app.fallthrough();

  std::vector<std::string> scene_names;
  for (const SceneSpec& s : standard_suite_specs()) {
    scene_names.push_back(s.name);
  }

  // simgen
  std::string sim_out;
  std::uint64_t sim_seed = 1;
  bool sim_suite = false;
  std::string sim_scene;
  CLI::App* sim = app.add_subcommand("simgen", "render synthetic sequences");
  sim->add_option("--out", sim_out, "output directory")->required();
  sim->add_option("--seed", sim_seed, "render seed")->capture_default_str();
  sim->add_flag("--suite", sim_suite, "render the whole 6-sequence suite");
  sim->add_option("--scene", sim_scene, "render one named sequence")
      ->check(CLI::IsMember(scene_names));

  // detect
  DetectOptions det;
  bool det_no_front = false;
  bool det_no_fusion = false;
  bool det_no_refine = false;
  CLI::App* detect =
      app.add_subcommand("detect", "run the detector over a sequence");
  detect->add_option("sequence", det.seq_dir, "sequence directory")
      ->required();
  detect->add_option("--out", det.out_dir, "output directory")->required();
  detect->add_option("--config", det.config_path, "key=value config file");
  detect->add_option("--seed", det.seed, "override the config seed");
  detect->add_option("--mask-stride", det.mask_stride,
                     "write masks every N frames")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  detect->add_flag("--no-front-plane", det_no_front,
                   "disable the second background plane");
  detect->add_flag("--no-fusion", det_no_fusion,
                   "disable inertial fusion (vision only)");
  detect->add_flag("--no-refine", det_no_refine,
                   "disable probabilistic refinement (morphology only)");

  // eval
  EvalOptions ev;
  CLI::App* eval =
      app.add_subcommand("eval", "score detector output against ground truth");
  eval->add_option("--data", ev.data_dir, "sequence directory")->required();
  eval->add_option("--pred", ev.pred_dir, "detect output directory")
      ->required();
  eval->add_option("--out", ev.out_dir, "output directory")->required();
  eval->add_option("--stride", ev.stride, "annotation stride")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  // ablate
  SuiteOptions ab;
  CLI::App* ablate = app.add_subcommand(
      "ablate", "run the four module configurations over the standard suite");
  ablate->add_option("--out", ab.out_dir, "output directory")->required();
  ablate->add_option("--seed", ab.seed, "suite seed")->capture_default_str();
  ablate->add_option("--data", ab.data_dir,
                     "pre-rendered suite directory (default: render in "
                     "memory)");
  ablate->add_option("--config", ab.config_path, "key=value config file");
  ablate->add_option("--frames", ab.frame_cap,
                     "cap the frames taken from each sequence")
      ->check(CLI::PositiveNumber);
  ablate->add_option("--mask-stride", ab.mask_stride,
                     "write final masks every N frames")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  // sweep
  SuiteOptions sw;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "grid-search fg_threshold by macro F1 over the suite");
  sweep->add_option("--out", sw.out_dir, "output directory")->required();
  sweep->add_option("--seed", sw.seed, "suite seed")->capture_default_str();
  sweep->add_option("--data", sw.data_dir, "pre-rendered suite directory");
  sweep->add_option("--config", sw.config_path, "key=value config file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    set_worker_threads(threads);
    if (sim->parsed()) {
      if (!sim_suite && sim_scene.empty()) {
        std::cerr << "simgen: pass --suite or --scene NAME\n";
        return 2;
      }
      return run_simgen(sim_out, sim_seed, sim_suite, sim_scene);
    }
    if (detect->parsed()) {
      det.flags.use_front_plane = !det_no_front;
      det.flags.use_inertial_fusion = !det_no_fusion;
      det.flags.use_refinement = !det_no_refine;
      det.seed_given = detect->count("--seed") > 0;
      return run_detect(det);
    }
    if (eval->parsed()) {
      return run_eval(ev);
    }
    if (ablate->parsed()) {
      ab.seed_given = ablate->count("--seed") > 0;
      return run_ablate(ab);
    }
    if (sweep->parsed()) {
      sw.seed_given = sweep->count("--seed") > 0;
      return run_sweep(sw);
    }
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace vimod
