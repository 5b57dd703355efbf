#include <doctest.h>

#include <random>

#include "vimod/errors.hpp"
#include "vimod/homography.hpp"

using namespace vimod;

namespace {

Homography sample_h() {
  Homography h;
  h.m << 1.02, 0.01, 3.0, -0.008, 0.98, -2.0, 1e-5, -2e-5, 1.0;
  return h;
}

// Reference projective application: plain homogeneous multiply and divide.
Eigen::Vector2d apply_ref(const Eigen::Matrix3d& m, double x, double y) {
  const Eigen::Vector3d v = m * Eigen::Vector3d(x, y, 1.0);
  return {v.x() / v.z(), v.y() / v.z()};
}

}  // namespace

TEST_SUITE("homography") {

TEST_CASE("apply matches the homogeneous-multiply reference") {
  const Homography h = sample_h();
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> ux(0.0, 640.0);
  std::uniform_real_distribution<double> uy(0.0, 480.0);
  for (int i = 0; i < 200; ++i) {
    const double x = ux(rng);
    const double y = uy(rng);
    const Eigen::Vector2d got = apply(h, {x, y});
    const Eigen::Vector2d want = apply_ref(h.m, x, y);
    CHECK(got.x() == doctest::Approx(want.x()).epsilon(1e-12));
    CHECK(got.y() == doctest::Approx(want.y()).epsilon(1e-12));
  }
}

TEST_CASE("identity maps points to themselves") {
  const Homography h = Homography::identity();
  const Eigen::Vector2d p = apply(h, {12.5, -3.25});
  CHECK(p.x() == 12.5);
  CHECK(p.y() == -3.25);
}

TEST_CASE("compose applies the right factor first") {
  Homography t;  // translation by (5, 0)
  t.m(0, 2) = 5.0;
  Homography s;  // scale by 2
  s.m(0, 0) = 2.0;
  s.m(1, 1) = 2.0;
  // compose(s, t): translate, then scale.
  const Eigen::Vector2d p = apply(compose(s, t), {1.0, 1.0});
  CHECK(p.x() == doctest::Approx(12.0));
  CHECK(p.y() == doctest::Approx(2.0));
  // The other order scales first.
  const Eigen::Vector2d q = apply(compose(t, s), {1.0, 1.0});
  CHECK(q.x() == doctest::Approx(7.0));
  CHECK(q.y() == doctest::Approx(2.0));
}

TEST_CASE("invert round-trips points") {
  const Homography h = sample_h();
  const Homography hi = invert(h);
  for (double x : {0.0, 100.0, 639.0}) {
    for (double y : {0.0, 200.0, 479.0}) {
      const Eigen::Vector2d p = apply(hi, apply(h, {x, y}));
      CHECK(p.x() == doctest::Approx(x).epsilon(1e-10));
      CHECK(p.y() == doctest::Approx(y).epsilon(1e-10));
    }
  }
}

TEST_CASE("normalize rescales so the corner entry is one") {
  Homography h = sample_h();
  h.m *= -3.7;
  const Homography n = normalize(h);
  CHECK(n.m(2, 2) == 1.0);
  // Same projective map.
  const Eigen::Vector2d a = apply_ref(h.m, 10.0, 20.0);
  const Eigen::Vector2d b = apply(n, {10.0, 20.0});
  CHECK(a.x() == doctest::Approx(b.x()).epsilon(1e-12));
  CHECK(a.y() == doctest::Approx(b.y()).epsilon(1e-12));
}

TEST_CASE("normalize rejects a vanishing corner entry") {
  Homography h;
  h.m(2, 2) = 0.0;
  CHECK_THROWS_AS(normalize(h), DegenerateHomography);
}

TEST_CASE("apply rejects points mapped to infinity") {
  Homography h;
  h.m.row(2) << 0.0, 0.0, 0.0;
  h.m(2, 0) = 1.0;  // w = x, so x = 0 blows up
  CHECK_THROWS_AS(apply(h, {0.0, 5.0}), PointAtInfinity);
}

TEST_CASE("vec8 layout is row-major with unit corner") {
  const Homography h = sample_h();
  const Vec8 v = to_vec8(h);
  CHECK(v(0) == 1.02);
  CHECK(v(1) == 0.01);
  CHECK(v(2) == 3.0);
  CHECK(v(3) == -0.008);
  CHECK(v(4) == 0.98);
  CHECK(v(5) == -2.0);
  CHECK(v(6) == 1e-5);
  CHECK(v(7) == -2e-5);
  const Homography back = from_vec8(v);
  CHECK(back.m(2, 2) == 1.0);
  CHECK((back.m - h.m).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("compose against matrix product on random maps") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-0.05, 0.05);
  for (int i = 0; i < 50; ++i) {
    Homography a = sample_h();
    Homography b;
    b.m << 1 + u(rng), u(rng), 40 * u(rng), u(rng), 1 + u(rng), 40 * u(rng),
        u(rng) * 1e-3, u(rng) * 1e-3, 1.0;
    const Eigen::Matrix3d prod = a.m * b.m;
    const Homography c = compose(a, b);
    const Eigen::Matrix3d want = prod / prod(2, 2);
    CHECK((c.m - want).cwiseAbs().maxCoeff() < 1e-12);
  }
}

}  // TEST_SUITE
