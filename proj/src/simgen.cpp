#include "vimod/simgen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "vimod/csvio.hpp"
#include "vimod/errors.hpp"
#include "vimod/parallel.hpp"
#include "vimod/pnm.hpp"
#include "vimod/texture.hpp"

namespace vimod {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Sub-seed tags so the true-pose shake, the inertial noise and the per-frame
// wave phase never share draws.
constexpr std::uint64_t kTagTruePose = 0x74727565;
constexpr std::uint64_t kTagImu = 0x696d7531;
constexpr std::uint64_t kTagWaves = 0x77617665;

double noise_draw(std::uint64_t seed, std::uint64_t tag, int frame, int slot) {
  const std::uint64_t s =
      hash_combine(hash_combine(seed, tag), static_cast<std::uint64_t>(frame));
  return hash_normal(s, static_cast<std::uint64_t>(slot));
}

// Camera looks along reference +x, pitched down toward the z-down ground by
// pitch_deg. Camera x axis = reference +y, so the image is level.
Eigen::Matrix3d pitched_rotation(double pitch_deg) {
  const double th = pitch_deg * kPi / 180.0;
  Eigen::Matrix3d r;
  r << 0.0, 1.0, 0.0,                     //
      -std::sin(th), 0.0, std::cos(th),   //
      std::cos(th), 0.0, std::sin(th);
  return r;
}

// Heading offset about the vertical axis: dwell at -amp, cosine-ease to +amp
// over the swing frames, dwell, ease back. The eased endpoints land exactly
// on +-amp, so dwells are perfectly still.
double yaw_at(const SceneSpec& spec, int frame) {
  if (spec.yaw_amp_deg == 0.0) {
    return 0.0;
  }
  const int half = spec.yaw_dwell_frames + spec.yaw_swing_frames;
  int ph = frame % (2 * half);
  double sign = -1.0;
  if (ph >= half) {
    ph -= half;
    sign = 1.0;
  }
  if (ph < spec.yaw_dwell_frames) {
    return sign * spec.yaw_amp_deg;
  }
  const int j = ph - spec.yaw_dwell_frames;
  const double u = kPi * (j + 1) / (spec.yaw_swing_frames + 1);
  return sign * spec.yaw_amp_deg * std::cos(u);
}

Eigen::Matrix3d heading_rotation(double pitch_deg, double yaw_deg) {
  const double ps = yaw_deg * kPi / 180.0;
  Eigen::Matrix3d rz;
  rz << std::cos(ps), std::sin(ps), 0.0,   //
      -std::sin(ps), std::cos(ps), 0.0,    //
      0.0, 0.0, 1.0;
  return pitched_rotation(pitch_deg) * rz;
}

Eigen::Vector3d position_at(const SceneSpec& spec, double t) {
  Eigen::Vector3d p = spec.start_pos;
  switch (spec.trajectory) {
    case Trajectory::kHover:
      break;
    case Trajectory::kLateralPan:
      p.y() += spec.pan_speed * t;
      break;
    case Trajectory::kVerticalDescent:
      p.y() += spec.pan_speed * t;
      p.z() += spec.descent_speed * t;
      break;
    case Trajectory::kMixed: {
      const double total = spec.frame_count / spec.fps;
      p.x() += spec.forward_speed * t;
      p.y() += spec.pan_speed * t + 0.5 * spec.ramp_vy_max * t * t / total;
      p.z() += spec.descent_speed * t;
      break;
    }
  }
  return p;
}

void apply_pose_noise(PoseSample& p, double sigma_t, double sigma_rot_deg,
                      std::uint64_t seed, std::uint64_t tag, int frame) {
  for (int a = 0; a < 3; ++a) {
    p.t_cam[a] += sigma_t * noise_draw(seed, tag, frame, a);
  }
  Eigen::Vector3d axis(noise_draw(seed, tag, frame, 3),
                       noise_draw(seed, tag, frame, 4),
                       noise_draw(seed, tag, frame, 5));
  const double n = axis.norm();
  if (n > 1e-12) {
    const double ang =
        sigma_rot_deg * kPi / 180.0 * noise_draw(seed, tag, frame, 6);
    p.r_cam = Eigen::AngleAxisd(ang, axis / n).toRotationMatrix() * p.r_cam;
  }
  p.height = -p.t_cam.z();
}

struct SceneTextures {
  std::uint64_t ground;
  std::uint64_t wall;
  std::uint64_t wave_frame;  // already mixed with the frame index
};

double static_ground_value(const SceneSpec& spec, const SceneTextures& tex,
                           double gx, double gy) {
  return 140.0 * fractal_noise(gx / spec.ground_scale, gy / spec.ground_scale,
                               spec.ground_octaves, tex.ground);
}

// Shades a ground-plane point and reports whether a moving object owns it.
double ground_value(const SceneSpec& spec, const SceneTextures& tex,
                    const std::vector<Eigen::Vector2d>& centers, double gx,
                    double gy, bool* object) {
  for (std::size_t i = 0; i < spec.objects.size(); ++i) {
    const MovingObject& o = spec.objects[i];
    const double dx = gx - centers[i].x();
    const double dy = gy - centers[i].y();
    if (std::abs(dx) <= o.half_size.x() && std::abs(dy) <= o.half_size.y()) {
      *object = true;
      const std::uint64_t s = hash_combine(tex.ground, o.texture_seed);
      // Feature size well under the per-frame travel, so a ground pixel the
      // object slides across keeps jumping instead of letting a background
      // mode track the drift.
      return 160.0 + 95.0 * fractal_noise(dx / 0.07, dy / 0.07, 3, s);
    }
  }
  *object = false;
  if (spec.waves && gx >= spec.waves->min_xy.x() &&
      gx <= spec.waves->max_xy.x() && gy >= spec.waves->min_xy.y() &&
      gy <= spec.waves->max_xy.y()) {
    const double still = static_ground_value(spec, tex, gx, gy);
    const double churn =
        140.0 * value_noise(gx / 0.35, gy / 0.35, tex.wave_frame);
    return (1.0 - spec.waves->blend) * still + spec.waves->blend * churn;
  }
  return static_ground_value(spec, tex, gx, gy);
}

std::string six_digit(const char* stem, int frame, const char* ext) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s_%06d.%s", stem, frame, ext);
  return buf;
}

std::map<std::string, std::string> read_kv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open " + path);
  }
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw IoError("malformed line in " + path + ": " + line);
    }
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return kv;
}

const std::string& kv_get(const std::map<std::string, std::string>& kv,
                          const std::string& key, const std::string& path) {
  const auto it = kv.find(key);
  if (it == kv.end()) {
    throw IoError("missing key '" + key + "' in " + path);
  }
  return it->second;
}

}  // namespace

void validate_spec(const SceneSpec& spec) {
  if (spec.width < 64 || spec.height < 64) {
    throw InvalidSpec("frame size must be at least 64x64");
  }
  if (spec.frame_count < 2 || spec.fps <= 0.0) {
    throw InvalidSpec("need at least 2 frames and a positive frame rate");
  }
  if (spec.pitch_deg <= 5.0 || spec.pitch_deg > 90.0) {
    throw InvalidSpec("pitch must be in (5, 90] degrees");
  }
  const double total = (spec.frame_count - 1) / spec.fps;
  for (int f = 0; f < spec.frame_count; ++f) {
    const Eigen::Vector3d p = position_at(spec, f / spec.fps);
    if (p.z() + 5.0 * spec.jitter_pos > -0.2) {
      throw InvalidSpec("camera reaches the ground at frame " +
                        std::to_string(f));
    }
    if (spec.wall_x && p.x() >= *spec.wall_x - 0.2) {
      throw InvalidSpec("camera crosses the front wall at frame " +
                        std::to_string(f));
    }
  }
  for (const MovingObject& o : spec.objects) {
    for (const double t : {0.0, total}) {
      const Eigen::Vector2d c = object_center(o, t);
      if (std::abs(c.x()) + o.half_size.x() > spec.ground_extent ||
          std::abs(c.y()) + o.half_size.y() > spec.ground_extent) {
        throw InvalidSpec("object leaves the ground extent");
      }
    }
    if (o.half_size.minCoeff() <= 0.0) {
      throw InvalidSpec("object half size must be positive");
    }
  }
  if (spec.waves &&
      (spec.waves->max_xy.x() <= spec.waves->min_xy.x() ||
       spec.waves->max_xy.y() <= spec.waves->min_xy.y() ||
       spec.waves->blend < 0.0 || spec.waves->blend > 1.0)) {
    throw InvalidSpec("malformed dynamic region");
  }
  if (spec.yaw_amp_deg < 0.0 || spec.yaw_amp_deg > 80.0) {
    throw InvalidSpec("yaw amplitude must be in [0, 80] degrees");
  }
  if (spec.yaw_amp_deg > 0.0 &&
      (spec.yaw_dwell_frames < 1 || spec.yaw_swing_frames < 1)) {
    throw InvalidSpec("yaw sweeps need positive dwell and swing lengths");
  }
  if (spec.ground_scale <= 0.0 || spec.ground_octaves < 1) {
    throw InvalidSpec("ground texture needs a positive scale and octaves");
  }
}

PoseSample pose_at(const SceneSpec& spec, std::uint64_t seed, int frame) {
  PoseSample p;
  p.frame_index = frame;
  p.t = frame / spec.fps;
  p.t_cam = position_at(spec, p.t);
  p.r_cam = heading_rotation(spec.pitch_deg, yaw_at(spec, frame));
  p.height = -p.t_cam.z();
  if (spec.jitter_pos != 0.0 || spec.jitter_rot_deg != 0.0) {
    apply_pose_noise(p, spec.jitter_pos, spec.jitter_rot_deg, seed,
                     kTagTruePose, frame);
  }
  return p;
}

PoseSample noisy_pose_at(const SceneSpec& spec, std::uint64_t seed,
                         int frame) {
  PoseSample p = pose_at(spec, seed, frame);
  apply_pose_noise(p, spec.imu_sigma_t, spec.imu_sigma_rot_deg, seed, kTagImu,
                   frame);
  return p;
}

Eigen::Vector2d object_center(const MovingObject& obj, double t) {
  return obj.center0 + t * obj.velocity;
}

Eigen::Vector2d project_point(const PoseSample& pose, const CameraModel& cam,
                              const Eigen::Vector3d& x_ref) {
  const Eigen::Vector3d xc = pose.r_cam * (x_ref - pose.t_cam);
  if (xc.z() <= 1e-9) {
    throw PointAtInfinity("point at or behind the camera plane");
  }
  return {cam.fx * xc.x() / xc.z() + cam.cx,
          cam.fy * xc.y() / xc.z() + cam.cy};
}

std::optional<Eigen::Vector3d> pixel_to_ground(const PoseSample& pose,
                                               const CameraModel& cam,
                                               const Eigen::Vector2d& px) {
  const Eigen::Vector3d dir_cam((px.x() - cam.cx) / cam.fx,
                                (px.y() - cam.cy) / cam.fy, 1.0);
  const Eigen::Vector3d dir = pose.r_cam.transpose() * dir_cam;
  if (dir.z() <= 1e-9) {
    return std::nullopt;
  }
  const double s = -pose.t_cam.z() / dir.z();
  if (s <= 0.0) {
    return std::nullopt;
  }
  return pose.t_cam + s * dir;
}

RenderedFrame render_frame(const SceneSpec& spec, std::uint64_t seed,
                           int frame) {
  const PoseSample pose = pose_at(spec, seed, frame);
  const double t = pose.t;

  SceneTextures tex;
  tex.ground = hash_combine(seed, spec.ground_seed);
  tex.wall = hash_combine(seed, spec.wall_seed);
  tex.wave_frame = hash_combine(hash_combine(seed, kTagWaves),
                                static_cast<std::uint64_t>(frame));

  std::vector<Eigen::Vector2d> centers;
  centers.reserve(spec.objects.size());
  for (const MovingObject& o : spec.objects) {
    centers.push_back(object_center(o, t));
  }

  RenderedFrame out;
  out.rgb.width = spec.width;
  out.rgb.height = spec.height;
  out.rgb.channels = 3;
  out.rgb.timestamp = t;
  out.rgb.data.resize(static_cast<std::size_t>(spec.width) * spec.height * 3);
  out.gt = PixelMask::zeros(spec.width, spec.height);

  const Eigen::Matrix3d r_t = pose.r_cam.transpose();
  const Eigen::Vector3d c = pose.t_cam;

  parallel_for(0, spec.height, [&](int y) {
    for (int x = 0; x < spec.width; ++x) {
      const Eigen::Vector3d dir_cam((x - spec.camera.cx) / spec.camera.fx,
                                    (y - spec.camera.cy) / spec.camera.fy,
                                    1.0);
      const Eigen::Vector3d dir = r_t * dir_cam;

      double s_ground = -1.0;
      if (dir.z() > 1e-9) {
        const double s = -c.z() / dir.z();
        if (s > 1e-9) {
          s_ground = s;
        }
      }
      double s_wall = -1.0;
      if (spec.wall_x && std::abs(dir.x()) > 1e-12) {
        const double s = (*spec.wall_x - c.x()) / dir.x();
        if (s > 1e-9 && c.z() + s * dir.z() <= 1e-9) {
          s_wall = s;
        }
      }

      double v = 128.0;  // sky
      bool object = false;
      if (s_wall > 0.0 && (s_ground < 0.0 || s_wall < s_ground)) {
        const Eigen::Vector3d hit = c + s_wall * dir;
        v = 140.0 * fractal_noise(hit.y() / 0.5, hit.z() / 0.5, 4, tex.wall);
      } else if (s_ground > 0.0) {
        const Eigen::Vector3d hit = c + s_ground * dir;
        v = ground_value(spec, tex, centers, hit.x(), hit.y(), &object);
      }

      const auto g = static_cast<std::uint8_t>(
          std::lround(std::clamp(v, 0.0, 255.0)));
      const std::size_t base =
          (static_cast<std::size_t>(y) * spec.width + x) * 3;
      out.rgb.data[base] = g;
      out.rgb.data[base + 1] = g;
      out.rgb.data[base + 2] = g;
      if (object) {
        out.gt.set(x, y, true);
      }
    }
  });
  return out;
}

std::vector<SceneSpec> standard_suite_specs() {
  std::vector<SceneSpec> suite;

  {  // Fast pan past a close frontal wall: strong two-plane parallax.
    SceneSpec s;
    s.name = "parallax_pan";
    s.trajectory = Trajectory::kLateralPan;
    s.start_pos = {0.0, -7.0, -6.0};
    s.pitch_deg = 48.0;
    s.pan_speed = 2.8;
    s.jitter_pos = 0.002;
    s.jitter_rot_deg = 0.015;
    s.imu_sigma_rot_deg = 0.01;
    s.imu_sigma_t = 0.002;
    s.ground_seed = 11;
    s.wall_x = 3.5;
    s.wall_seed = 12;
    s.objects = {
        {{2.4, -6.2}, {0.0, 1.25}, {0.26, 0.22}, 21},
        {{2.0, 1.6}, {0.0, 1.2}, {0.25, 0.21}, 22},
        {{2.8, 9.1}, {0.0, 1.3}, {0.26, 0.22}, 23},
    };
    suite.push_back(s);
  }
  {  // Descent toward the same wall geometry; parallax grows over time.
     // Descent rate keeps the wall the dominant plane all the way down, so
     // the plane roles never flap between frames.
    SceneSpec s;
    s.name = "parallax_descent";
    s.trajectory = Trajectory::kVerticalDescent;
    s.start_pos = {0.0, -7.0, -7.0};
    s.pitch_deg = 48.0;
    s.pan_speed = 2.5;
    s.descent_speed = 0.15;
    s.jitter_pos = 0.002;
    s.jitter_rot_deg = 0.015;
    s.imu_sigma_rot_deg = 0.01;
    s.imu_sigma_t = 0.002;
    s.ground_seed = 13;
    s.wall_x = 3.5;
    s.wall_seed = 14;
    s.objects = {
        {{2.4, -6.0}, {0.0, 1.15}, {0.17, 0.15}, 24},
        {{2.1, 0.8}, {0.0, 1.1}, {0.17, 0.15}, 25},
        {{2.6, 7.4}, {0.0, 1.2}, {0.17, 0.15}, 26},
    };
    suite.push_back(s);
  }
  {  // Hover over water: one coherent mover at a time beside a wave band.
    SceneSpec s;
    s.name = "waves_calm";
    s.trajectory = Trajectory::kHover;
    s.start_pos = {0.0, 0.0, -10.0};
    s.pitch_deg = 90.0;
    s.jitter_pos = 0.004;
    s.jitter_rot_deg = 0.02;
    s.imu_sigma_rot_deg = 0.01;
    s.imu_sigma_t = 0.002;
    s.ground_seed = 15;
    s.waves = DynamicRegion{{-5.4, -6.8}, {-0.6, 6.8}, 0.5};
    s.objects = {
        {{2.6, -6.0}, {-1.43, 5.34}, {0.9, 0.9}, 27},
        {{-3.4, 19.4}, {1.43, -5.34}, {0.9, 0.9}, 28},
    };
    suite.push_back(s);
  }
  {  // Lower hover, stronger shake, a second wave band orientation.
    SceneSpec s;
    s.name = "waves_busy";
    s.trajectory = Trajectory::kHover;
    s.start_pos = {1.0, 0.5, -9.0};
    s.pitch_deg = 90.0;
    s.jitter_pos = 0.005;
    s.jitter_rot_deg = 0.025;
    s.imu_sigma_rot_deg = 0.01;
    s.imu_sigma_t = 0.002;
    s.ground_seed = 16;
    s.waves = DynamicRegion{{-5.2, -6.5}, {5.2, -1.5}, 0.5};
    s.objects = {
        {{-3.0, -2.4}, {4.71, 4.71}, {0.8, 0.8}, 29},
        {{12.3, 14.2}, {-4.71, -4.71}, {0.8, 0.8}, 30},
    };
    suite.push_back(s);
  }
  {  // Plain textured ground under a steady pan.
    SceneSpec s;
    s.name = "plain_pan";
    s.trajectory = Trajectory::kLateralPan;
    s.start_pos = {0.0, 0.0, -10.0};
    s.pitch_deg = 65.0;
    s.pan_speed = 1.5;
    s.jitter_pos = 0.003;
    s.jitter_rot_deg = 0.02;
    s.imu_sigma_rot_deg = 0.01;
    s.imu_sigma_t = 0.002;
    s.ground_seed = 17;
    s.objects = {
        {{4.6, -5.5}, {0.0, 3.3}, {0.50, 0.44}, 31},
        {{5.2, 40.0}, {0.0, -3.3}, {0.50, 0.44}, 32},
    };
    suite.push_back(s);
  }
  {  // Steady pan broken by violent heading sweeps. Mid-swing the image
     // moves on the order of a hundred pixels per frame, far past what the
     // tracker can follow, so vision drops out for a few frames at a time
     // and only the inertial stream knows where the ground went. Coarse
     // texture keeps the warped model tolerant of resampling jitter.
    SceneSpec s;
    s.name = "plain_mixed";
    s.trajectory = Trajectory::kLateralPan;
    s.start_pos = {0.0, -5.0, -10.0};
    s.pitch_deg = 65.0;
    s.pan_speed = 1.0;
    s.yaw_amp_deg = 35.0;
    s.yaw_dwell_frames = 20;
    s.yaw_swing_frames = 5;
    s.jitter_pos = 0.003;
    s.jitter_rot_deg = 0.02;
    s.imu_sigma_rot_deg = 0.01;
    s.imu_sigma_t = 0.002;
    s.ground_seed = 18;
    s.ground_scale = 2.0;
    s.ground_octaves = 2;
    s.objects = {
        {{4.2, -8.0}, {0.0, 2.6}, {0.45, 0.40}, 33},
        {{5.5, 3.0}, {0.0, -2.6}, {0.45, 0.40}, 34},
        {{4.8, -23.4}, {0.0, 2.5}, {0.45, 0.40}, 35},
        {{3.6, 20.8}, {0.0, -2.7}, {0.45, 0.40}, 36},
    };
    suite.push_back(s);
  }

  for (const SceneSpec& s : suite) {
    validate_spec(s);
  }
  return suite;
}

std::string frame_path(const std::string& dir, int frame) {
  return dir + "/frames/" + six_digit("frame", frame, "ppm");
}

std::string gt_path(const std::string& dir, int frame) {
  return dir + "/gt/" + six_digit("mask", frame, "pgm");
}

void write_pose_csv(const std::string& path,
                    const std::vector<PoseSample>& poses) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot write " + path);
  }
  out << "# camera-from-reference: x_cam = r * (x_ref - t), z-down reference\n";
  out << "frame,t,r11,r12,r13,r21,r22,r23,r31,r32,r33,tx,ty,tz,height\n";
  for (const PoseSample& p : poses) {
    out << p.frame_index << ',' << format_double(p.t);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        out << ',' << format_double(p.r_cam(i, j));
      }
    }
    for (int i = 0; i < 3; ++i) {
      out << ',' << format_double(p.t_cam[i]);
    }
    out << ',' << format_double(p.height) << '\n';
  }
  if (!out) {
    throw IoError("failed writing " + path);
  }
}

std::vector<PoseSample> read_pose_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open " + path);
  }
  std::vector<PoseSample> poses;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') {
      continue;
    }
    if (!header_seen) {
      header_seen = true;  // column header
      continue;
    }
    const std::vector<std::string> f = split_fields(line, ',');
    if (f.size() != 15) {
      throw IoError("bad pose row in " + path + ": " + line);
    }
    PoseSample p;
    p.frame_index = static_cast<int>(parse_long(f[0]));
    p.t = parse_double(f[1]);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        p.r_cam(i, j) = parse_double(f[2 + i * 3 + j]);
      }
    }
    p.t_cam = {parse_double(f[11]), parse_double(f[12]), parse_double(f[13])};
    p.height = parse_double(f[14]);
    poses.push_back(p);
  }
  return poses;
}

void write_sequence(const SceneSpec& spec, std::uint64_t seed,
                    const std::string& dir) {
  validate_spec(spec);
  namespace fs = std::filesystem;
  fs::create_directories(dir + "/frames");
  fs::create_directories(dir + "/gt");

  std::vector<PoseSample> poses_true;
  std::vector<PoseSample> poses_imu;
  poses_true.reserve(spec.frame_count);
  poses_imu.reserve(spec.frame_count);
  for (int f = 0; f < spec.frame_count; ++f) {
    poses_true.push_back(pose_at(spec, seed, f));
    poses_imu.push_back(noisy_pose_at(spec, seed, f));
    const RenderedFrame r = render_frame(spec, seed, f);
    write_ppm(frame_path(dir, f), r.rgb);
    write_mask_pgm(gt_path(dir, f), r.gt);
  }
  write_pose_csv(dir + "/poses_true.csv", poses_true);
  write_pose_csv(dir + "/poses_imu.csv", poses_imu);

  std::ofstream cfg(dir + "/scene.cfg", std::ios::binary);
  if (!cfg) {
    throw IoError("cannot write " + dir + "/scene.cfg");
  }
  cfg << "name=" << spec.name << '\n';
  cfg << "width=" << spec.width << '\n';
  cfg << "height=" << spec.height << '\n';
  cfg << "frame_count=" << spec.frame_count << '\n';
  cfg << "fps=" << format_double(spec.fps) << '\n';
  cfg << "fx=" << format_double(spec.camera.fx) << '\n';
  cfg << "fy=" << format_double(spec.camera.fy) << '\n';
  cfg << "cx=" << format_double(spec.camera.cx) << '\n';
  cfg << "cy=" << format_double(spec.camera.cy) << '\n';
  cfg << "seed=" << seed << '\n';
  if (!cfg) {
    throw IoError("failed writing " + dir + "/scene.cfg");
  }
}

SequenceDir open_sequence(const std::string& dir) {
  const std::string cfg_path = dir + "/scene.cfg";
  const auto kv = read_kv_file(cfg_path);
  SequenceDir s;
  s.dir = dir;
  s.name = kv_get(kv, "name", cfg_path);
  s.width = static_cast<int>(parse_long(kv_get(kv, "width", cfg_path)));
  s.height = static_cast<int>(parse_long(kv_get(kv, "height", cfg_path)));
  s.frame_count =
      static_cast<int>(parse_long(kv_get(kv, "frame_count", cfg_path)));
  s.fps = parse_double(kv_get(kv, "fps", cfg_path));
  s.camera.fx = parse_double(kv_get(kv, "fx", cfg_path));
  s.camera.fy = parse_double(kv_get(kv, "fy", cfg_path));
  s.camera.cx = parse_double(kv_get(kv, "cx", cfg_path));
  s.camera.cy = parse_double(kv_get(kv, "cy", cfg_path));
  s.poses_true = read_pose_csv(dir + "/poses_true.csv");
  s.poses_imu = read_pose_csv(dir + "/poses_imu.csv");
  if (static_cast<int>(s.poses_true.size()) != s.frame_count ||
      static_cast<int>(s.poses_imu.size()) != s.frame_count) {
    throw IoError("pose files do not cover every frame in " + dir);
  }
  return s;
}

ImageBuffer load_frame(const SequenceDir& s, int frame) {
  ImageBuffer img = read_pnm(frame_path(s.dir, frame));
  img.timestamp = frame / s.fps;
  return img;
}

PixelMask load_gt(const SequenceDir& s, int frame) {
  return read_mask_pgm(gt_path(s.dir, frame));
}

}  // namespace vimod
