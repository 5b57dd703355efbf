#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "vimod/errors.hpp"
#include "vimod/planes.hpp"
#include "vimod/simgen.hpp"

using namespace vimod;

namespace {

Homography gen_h() {
  Homography h;
  h.m << 1.03, 0.02, 4.0, -0.01, 0.97, -3.0, 2e-5, -1e-5, 1.0;
  return h;
}

CorrespondenceSet exact_set(const Homography& h, int n, std::uint64_t seed) {
  CorrespondenceSet c;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(0.0, 640.0);
  std::uniform_real_distribution<double> uy(0.0, 480.0);
  for (int i = 0; i < n; ++i) {
    const Eigen::Vector2d p(ux(rng), uy(rng));
    c.prev.push_back(p);
    c.cur.push_back(apply(h, p));
  }
  return c;
}

double fit_error(const Homography& fit, const Homography& truth) {
  // Mean disagreement of the two maps over a fixed evaluation grid.
  double sum = 0.0;
  int n = 0;
  for (int x = 0; x <= 640; x += 160) {
    for (int y = 0; y <= 480; y += 160) {
      const Eigen::Vector2d p(x, y);
      sum += (apply(fit, p) - apply(truth, p)).norm();
      ++n;
    }
  }
  return sum / n;
}

}  // namespace

TEST_SUITE("planes") {

TEST_CASE("correspondences keep only tracked grid points") {
  SampleGrid grid;
  grid.points = {{16, 16}, {32, 16}, {48, 16}};
  grid.cols = 3;
  grid.rows = 1;
  grid.x0 = 16;
  grid.y0 = 16;
  FlowField f;
  f.d = {{1.0f, 2.0f}, {0.0f, 0.0f}, {-3.0f, 0.5f}};
  f.tracked = {1, 0, 1};
  f.residual = {1.0f, 0.0f, 2.0f};
  const CorrespondenceSet c = correspondences_from_flow(grid, f);
  REQUIRE(c.size() == 2);
  CHECK(c.prev[0] == Eigen::Vector2d(16, 16));
  CHECK(c.cur[0] == Eigen::Vector2d(17, 18));
  CHECK(c.prev[1] == Eigen::Vector2d(48, 16));
  CHECK(c.cur[1] == Eigen::Vector2d(45, 16.5));
}

TEST_CASE("symmetric transfer error of a pure translation") {
  Homography h;
  h.m(0, 2) = 5.0;
  const Homography hi = invert(h);
  // Identical points: forward error 5, backward error 5, mean 5.
  CHECK(symmetric_transfer_error(h, hi, {100, 100}, {100, 100}) ==
        doctest::Approx(5.0));
  // A perfect correspondence scores zero.
  CHECK(symmetric_transfer_error(h, hi, {100, 100}, {105, 100}) ==
        doctest::Approx(0.0));
}

TEST_CASE("dlt recovers an exact homography") {
  const Homography h = gen_h();
  const CorrespondenceSet c = exact_set(h, 12, 3);
  const Homography fit = fit_homography_dlt(c.prev, c.cur);
  CHECK(fit_error(fit, h) < 1e-9);
}

TEST_CASE("dlt needs four pairs") {
  const Homography h = gen_h();
  CorrespondenceSet c = exact_set(h, 3, 4);
  CHECK_THROWS_AS(fit_homography_dlt(c.prev, c.cur),
                  InsufficientCorrespondences);
}

TEST_CASE("ransac recovers the model behind gross outliers") {
  const Homography h = gen_h();
  CorrespondenceSet c = exact_set(h, 70, 5);
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.0, 480.0);
  for (int i = 0; i < 30; ++i) {
    c.prev.push_back({u(rng), u(rng)});
    c.cur.push_back({u(rng), u(rng)});
  }
  const RansacResult r = ransac_homography(c, 3.0, 500, 42);
  CHECK(fit_error(r.h, h) < 1e-6);
  // All 70 structured pairs are inliers; random pairs land inside only by
  // fluke, so the count stays close.
  CHECK(r.inliers.size() >= 70);
  CHECK(r.inliers.size() <= 76);
}

TEST_CASE("ransac is deterministic in the seed") {
  const Homography h = gen_h();
  CorrespondenceSet c = exact_set(h, 40, 8);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 480.0);
  for (int i = 0; i < 20; ++i) {
    c.prev.push_back({u(rng), u(rng)});
    c.cur.push_back({u(rng), u(rng)});
  }
  const RansacResult a = ransac_homography(c, 3.0, 500, 1234);
  const RansacResult b = ransac_homography(c, 3.0, 500, 1234);
  CHECK(a.inliers == b.inliers);
  CHECK((a.h.m - b.h.m).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("pure noise finds no consensus") {
  CorrespondenceSet c;
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(0.0, 480.0);
  for (int i = 0; i < 50; ++i) {
    c.prev.push_back({u(rng), u(rng)});
    c.cur.push_back({u(rng), u(rng)});
  }
  CHECK_THROWS_AS(ransac_homography(c, 3.0, 500, 77), NoConsensus);
}

TEST_CASE("consensus requirement scales with the set size") {
  // 15 structured pairs inside 200 would pass the absolute floor, but 10%
  // of 200 is 20, so the fit must be refused.
  const Homography h = gen_h();
  CorrespondenceSet c = exact_set(h, 15, 11);
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 480.0);
  for (int i = 0; i < 185; ++i) {
    c.prev.push_back({u(rng), u(rng)});
    c.cur.push_back({u(rng), u(rng)});
  }
  CHECK_THROWS_AS(ransac_homography(c, 3.0, 500, 13), NoConsensus);
}

TEST_CASE("ransac needs four pairs") {
  CorrespondenceSet c;
  c.prev = {{0, 0}, {10, 0}, {0, 10}};
  c.cur = c.prev;
  CHECK_THROWS_AS(ransac_homography(c, 3.0, 100, 1),
                  InsufficientCorrespondences);
}

TEST_CASE("inertial homography of a lateral step is a pixel translation") {
  CameraModel cam;
  PoseSample prev;
  prev.t_cam = {0.0, 0.0, -10.0};
  prev.height = 10.0;
  PoseSample cur = prev;
  cur.t_cam = {-0.1, 0.0, -10.0};
  const Homography h = inertial_ground_homography(prev, cur, cam, PlaneModel{});
  // Camera moved 0.1 m against +x at height 10: ground pixels slide by
  // fx * 0.1 / 10 = 5 px in +x.
  CHECK(h.m(0, 2) == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(h.m(0, 0) == doctest::Approx(1.0));
  CHECK(h.m(1, 1) == doctest::Approx(1.0));
  CHECK(h.m(1, 2) == doctest::Approx(0.0));
  CHECK(h.m(2, 0) == doctest::Approx(0.0));
}

TEST_CASE("inertial homography agrees with projecting ground points") {
  // Independent oracle: push reference ground points through both posed
  // projections and compare with mapping the first pixel through the
  // homography.
  SceneSpec spec;
  spec.trajectory = Trajectory::kLateralPan;
  spec.pan_speed = 2.0;
  spec.pitch_deg = 55.0;
  spec.start_pos = {0.0, -3.0, -8.0};
  spec.jitter_pos = 0.004;
  spec.jitter_rot_deg = 0.03;
  const CameraModel cam;
  for (int f = 1; f <= 20; ++f) {
    const PoseSample a = pose_at(spec, 91, f - 1);
    const PoseSample b = pose_at(spec, 91, f);
    const Homography h = inertial_ground_homography(a, b, cam, PlaneModel{});
    for (double gx : {6.0, 9.0, 14.0}) {
      for (double gy : {-4.0, 0.5, 3.0}) {
        const Eigen::Vector3d g(gx, spec.start_pos.y() + gy + 2.0 * f / 24.0,
                                0.0);
        const Eigen::Vector2d pa = project_point(a, cam, g);
        const Eigen::Vector2d pb = project_point(b, cam, g);
        CHECK((apply(h, pa) - pb).norm() < 1e-8);
      }
    }
  }
}

TEST_CASE("inertial homography validates its inputs") {
  CameraModel cam;
  PoseSample a;
  a.t_cam = {0, 0, -5};
  a.height = 5;
  PoseSample b = a;
  SUBCASE("bad rotation") {
    b.r_cam(0, 0) = 2.0;
    CHECK_THROWS_AS(inertial_ground_homography(a, b, cam, PlaneModel{}),
                    InvalidPose);
  }
  SUBCASE("nonpositive height") {
    a.height = 0.0;
    CHECK_THROWS_AS(inertial_ground_homography(a, b, cam, PlaneModel{}),
                    InvalidPose);
  }
  SUBCASE("non-unit plane normal") {
    PlaneModel plane;
    plane.n = {0, 0, 2};
    CHECK_THROWS_AS(inertial_ground_homography(a, b, cam, plane), InvalidPose);
  }
}

TEST_CASE("split assigns both planes and the leftovers") {
  Homography hg;
  hg.m(0, 2) = 5.0;
  Homography hf;
  hf.m(0, 2) = 30.0;
  CorrespondenceSet c;
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> ux(0.0, 600.0);
  std::uniform_real_distribution<double> uy(0.0, 440.0);
  for (int i = 0; i < 60; ++i) {
    const Eigen::Vector2d p(ux(rng), uy(rng));
    c.prev.push_back(p);
    c.cur.push_back(apply(hg, p));
  }
  for (int i = 0; i < 30; ++i) {
    const Eigen::Vector2d p(ux(rng), uy(rng));
    c.prev.push_back(p);
    c.cur.push_back(apply(hf, p));
  }
  for (int i = 0; i < 6; ++i) {
    const Eigen::Vector2d p(ux(rng), uy(rng));
    c.prev.push_back(p);
    c.cur.push_back(p + Eigen::Vector2d(100.0 + 20.0 * i, -60.0));
  }
  PipelineConfig cfg;
  const PlaneSplit split = split_planes(c, hg, cfg, 5);
  CHECK(split.ground_inliers.size() == 60);
  REQUIRE(split.front_h.has_value());
  CHECK(fit_error(*split.front_h, hf) < 1e-6);
  CHECK(split.front_inliers.size() == 30);
  CHECK(split.residual_outliers.size() == 6);
  CHECK(split.outlier_ratio == doctest::Approx(36.0 / 60.0));

  SUBCASE("front fitting can be disabled") {
    const PlaneSplit flat = split_planes(c, hg, cfg, 5, false);
    CHECK(!flat.front_h.has_value());
    CHECK(flat.residual_outliers.size() == 36);
  }
}

TEST_CASE("tiny remainders never produce a front plane") {
  Homography hg;
  hg.m(0, 2) = 2.0;
  CorrespondenceSet c;
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(0.0, 400.0);
  for (int i = 0; i < 40; ++i) {
    const Eigen::Vector2d p(u(rng), u(rng));
    c.prev.push_back(p);
    c.cur.push_back(apply(hg, p));
  }
  for (int i = 0; i < 8; ++i) {  // below the 12-point front floor
    const Eigen::Vector2d p(u(rng), u(rng));
    c.prev.push_back(p);
    c.cur.push_back(p + Eigen::Vector2d(40, 0));
  }
  PipelineConfig cfg;
  const PlaneSplit split = split_planes(c, hg, cfg, 7);
  CHECK(!split.front_h.has_value());
  CHECK(split.residual_outliers.size() == 8);
}

TEST_CASE("no ground inliers reports an infinite ratio") {
  Homography hg;
  hg.m(0, 2) = 500.0;
  CorrespondenceSet c;
  for (int i = 0; i < 16; ++i) {
    c.prev.push_back({10.0 * i, 5.0 * i});
    c.cur.push_back({10.0 * i, 5.0 * i});
  }
  PipelineConfig cfg;
  const PlaneSplit split = split_planes(c, hg, cfg, 3);
  CHECK(split.ground_inliers.empty());
  CHECK(std::isinf(split.outlier_ratio));
}

}  // TEST_SUITE
