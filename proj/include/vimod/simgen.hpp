#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "vimod/camera.hpp"
#include "vimod/image.hpp"

namespace vimod {

// Textured rectangle sliding over the ground plane at constant velocity.
// Its texture rides along with it and stays in a gray range disjoint from
// every background surface, so ground-truth masks are exact by construction.
struct MovingObject {
  Eigen::Vector2d center0{0.0, 0.0};   // ground position at t = 0, meters
  Eigen::Vector2d velocity{0.0, 0.0};  // m/s
  Eigen::Vector2d half_size{0.5, 0.4};
  std::uint64_t texture_seed = 7;
};

// Ground rectangle whose texture phase is redrawn every frame, blended over
// the static texture. Mimics water: real image motion with no coherent
// direction.
struct DynamicRegion {
  Eigen::Vector2d min_xy{0.0, 0.0};
  Eigen::Vector2d max_xy{0.0, 0.0};
  double blend = 0.5;  // share of the per-frame random layer
};

enum class Trajectory { kHover, kLateralPan, kVerticalDescent, kMixed };

// Full description of a synthetic sequence. The reference frame has z
// pointing down, the ground plane at z = 0, and the camera looking along +x
// pitched down by pitch_deg.
//
// When yaw_amp_deg > 0 the heading snaps between -amp and +amp about the
// vertical axis: it holds for yaw_dwell_frames, then swings to the other
// side over yaw_swing_frames (cosine-eased). Mid-swing image motion can be
// made fast enough that feature tracking fails outright, which is the whole
// point: only the inertial stream knows what happened during the swing.
struct SceneSpec {
  std::string name = "scene";
  int width = 640;
  int height = 480;
  int frame_count = 240;
  double fps = 24.0;
  CameraModel camera;
  Trajectory trajectory = Trajectory::kHover;
  Eigen::Vector3d start_pos{0.0, 0.0, -10.0};
  double pitch_deg = 65.0;     // optical axis below the horizon
  double pan_speed = 0.0;      // m/s along +y
  double forward_speed = 0.0;  // m/s along +x (mixed only)
  double descent_speed = 0.0;  // m/s toward the ground (mixed/descent)
  double ramp_vy_max = 0.0;    // mixed: lateral speed reached at the end
  double yaw_amp_deg = 0.0;
  int yaw_dwell_frames = 0;
  int yaw_swing_frames = 0;
  double jitter_pos = 0.0;  // true-pose shake, meters per axis
  double jitter_rot_deg = 0.0;
  double ground_extent = 200.0;  // half size of the textured ground
  std::uint64_t ground_seed = 1;
  double ground_scale = 0.5;  // lattice pitch of the ground texture, meters
  int ground_octaves = 4;
  std::optional<double> wall_x;  // vertical front plane at x = wall_x
  std::uint64_t wall_seed = 2;
  std::vector<MovingObject> objects;
  std::optional<DynamicRegion> waves;
  double imu_sigma_rot_deg = 0.05;
  double imu_sigma_t = 0.005;
};

// Throws InvalidSpec for a camera at or below the ground anywhere on the
// trajectory, or objects leaving the ground extent.
void validate_spec(const SceneSpec& spec);

// Exact camera pose for a frame, including the seeded true-pose jitter.
PoseSample pose_at(const SceneSpec& spec, std::uint64_t seed, int frame);

// pose_at plus the seeded inertial measurement noise (axis-angle rotation of
// magnitude ~N(0, imu_sigma_rot_deg), translation ~N(0, imu_sigma_t) per
// axis).
PoseSample noisy_pose_at(const SceneSpec& spec, std::uint64_t seed, int frame);

// Ground position of the object at a time, seconds.
Eigen::Vector2d object_center(const MovingObject& obj, double t);

// Pixel of a reference-frame point. Throws PointAtInfinity behind the camera.
Eigen::Vector2d project_point(const PoseSample& pose, const CameraModel& cam,
                              const Eigen::Vector3d& x_ref);

// Ground-plane (z = 0) point seen by a pixel; empty when the ray misses the
// plane.
std::optional<Eigen::Vector3d> pixel_to_ground(const PoseSample& pose,
                                               const CameraModel& cam,
                                               const Eigen::Vector2d& px);

struct RenderedFrame {
  ImageBuffer rgb;
  PixelMask gt;  // 1 exactly where the visible surface is a moving object
};

// Deterministic random-access rendering: a pure function of (spec, seed,
// frame).
RenderedFrame render_frame(const SceneSpec& spec, std::uint64_t seed,
                           int frame);

// Six benchmark sequences: two strong-parallax scenes with a front plane,
// two dynamic-region scenes, two plain scenes (one panning steadily, one
// whose periodic fast yaw sweeps starve the tracker mid-swing).
std::vector<SceneSpec> standard_suite_specs();

// Materializes a sequence directory: frames/frame_%06d.ppm,
// gt/mask_%06d.pgm, poses_true.csv, poses_imu.csv, scene.cfg.
void write_sequence(const SceneSpec& spec, std::uint64_t seed,
                    const std::string& dir);

std::string frame_path(const std::string& dir, int frame);
std::string gt_path(const std::string& dir, int frame);

void write_pose_csv(const std::string& path,
                    const std::vector<PoseSample>& poses);
std::vector<PoseSample> read_pose_csv(const std::string& path);

// What detect/eval need back from a sequence directory.
struct SequenceDir {
  std::string dir;
  std::string name;
  int frame_count = 0;
  int width = 0;
  int height = 0;
  double fps = 24.0;
  CameraModel camera;
  std::vector<PoseSample> poses_true;
  std::vector<PoseSample> poses_imu;
};

SequenceDir open_sequence(const std::string& dir);
ImageBuffer load_frame(const SequenceDir& s, int frame);
PixelMask load_gt(const SequenceDir& s, int frame);

}  // namespace vimod
