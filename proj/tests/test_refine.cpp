#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "vimod/flow.hpp"
#include "vimod/refine.hpp"

using namespace vimod;

namespace {

constexpr double kPi = 3.14159265358979323846;

// 4x4 grid points, all inside a single entropy cell.
SampleGrid one_cell_grid() {
  SampleGrid g;
  g.cols = 4;
  g.rows = 4;
  g.x0 = 16;
  g.y0 = 16;
  g.stride = 16;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      g.points.push_back({16.0 + 16.0 * c, 16.0 + 16.0 * r});
    }
  }
  return g;
}

FlowField flows_at_angles(const std::vector<double>& degs, double mag,
                          std::size_t total) {
  FlowField f;
  f.d.resize(total, {0.0f, 0.0f});
  f.tracked.assign(total, 0);
  f.residual.assign(total, 0.0f);
  for (std::size_t i = 0; i < degs.size() && i < total; ++i) {
    const double rad = degs[i] * kPi / 180.0;
    f.d[i] = {float(mag * std::cos(rad)), float(mag * std::sin(rad))};
    f.tracked[i] = 1;
  }
  return f;
}

PixelMask random_mask(int w, int h, double density, std::uint32_t seed) {
  PixelMask m = PixelMask::zeros(w, h);
  std::mt19937 rng(seed);
  std::bernoulli_distribution coin(density);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      m.set(x, y, coin(rng));
    }
  }
  return m;
}

}  // namespace

TEST_SUITE("refine") {

TEST_CASE("coherent cells score one") {
  const SampleGrid grid = one_cell_grid();
  std::vector<double> degs(16, 40.0);
  const FlowField f = flows_at_angles(degs, 3.0, 16);
  PipelineConfig cfg;
  const EntropyGrid e = grid_entropy(grid, f, cfg);
  REQUIRE(e.cells_x == 1);
  REQUIRE(e.cells_y == 1);
  CHECK(e.valid[0] == 16);
  CHECK(e.h_bits[0] == doctest::Approx(cfg.entropy_floor));
  CHECK(e.e[0] == doctest::Approx(1.0));
}

TEST_CASE("maximally scattered directions score near zero") {
  const SampleGrid grid = one_cell_grid();
  std::vector<double> degs;
  for (int b = 0; b < 12; ++b) {
    degs.push_back(15.0 + 30.0 * b);  // one flow per orientation bin
  }
  const FlowField f = flows_at_angles(degs, 2.0, 16);
  PipelineConfig cfg;
  const EntropyGrid e = grid_entropy(grid, f, cfg);
  CHECK(e.valid[0] == 12);
  CHECK(e.h_bits[0] == doctest::Approx(std::log2(12.0)));
  CHECK(e.e[0] == doctest::Approx(0.1 / std::log2(12.0)));
}

TEST_CASE("fewer than four usable flows give zero") {
  const SampleGrid grid = one_cell_grid();
  const FlowField f = flows_at_angles({10.0, 10.0, 10.0}, 2.0, 16);
  PipelineConfig cfg;
  const EntropyGrid e = grid_entropy(grid, f, cfg);
  CHECK(e.valid[0] == 3);
  CHECK(e.e[0] == 0.0);
}

TEST_CASE("slow flows stay out of the histogram") {
  const SampleGrid grid = one_cell_grid();
  std::vector<double> degs(16, 120.0);
  FlowField f = flows_at_angles(degs, 0.4, 16);  // below the 0.5 px gate
  PipelineConfig cfg;
  const EntropyGrid e = grid_entropy(grid, f, cfg);
  CHECK(e.valid[0] == 0);
  CHECK(e.e[0] == 0.0);
}

TEST_CASE("negative directions wrap into the last bins") {
  const SampleGrid grid = one_cell_grid();
  std::vector<double> degs(4, -15.0);
  const FlowField f = flows_at_angles(degs, 2.0, 16);
  PipelineConfig cfg;
  const EntropyGrid e = grid_entropy(grid, f, cfg);
  CHECK(e.valid[0] == 4);
  CHECK(e.counts[11] == 4);
  CHECK(e.e[0] == doctest::Approx(1.0));
}

TEST_CASE("cell lookup matches the benchmark geometry") {
  const SampleGrid grid = make_sample_grid(640, 480, 16, flow_grid_margin());
  FlowField f;
  f.d.assign(grid.points.size(), {1.0f, 0.0f});
  f.tracked.assign(grid.points.size(), 1);
  f.residual.assign(grid.points.size(), 0.0f);
  PipelineConfig cfg;
  const EntropyGrid e = grid_entropy(grid, f, cfg);
  CHECK(e.cells_x == 10);
  CHECK(e.cells_y == 8);
  CHECK(e.cell_of_x(0) == 0);
  CHECK(e.cell_of_x(16) == 0);
  // Grid point index for x=300 is 18, cell 4.
  CHECK(e.cell_of_x(300) == 4);
  CHECK(e.cell_of_x(639) == 9);
  CHECK(e.cell_of_y(479) == 7);
  CHECK(e.e_at(300, 100) == e.e[std::size_t(1) * 10 + 4]);
}

TEST_CASE("temporal map charges and discharges at rate alpha") {
  PipelineConfig cfg;
  ProbabilityMaps maps = ProbabilityMaps::zeros(32, 24);
  const SampleGrid grid = one_cell_grid();
  const FlowField f = flows_at_angles(std::vector<double>(16, 0.0), 2.0, 16);
  const EntropyGrid e = grid_entropy(grid, f, cfg);
  PixelMask on = PixelMask::zeros(32, 24);
  for (int y = 8; y < 16; ++y) {
    for (int x = 8; x < 16; ++x) {
      on.set(x, y, true);
    }
  }
  update_maps(maps, on, e, cfg);
  CHECK(maps.p_t(10, 10) == doctest::Approx(0.4));
  CHECK(maps.p_t(0, 0) == 0.0f);
  for (int i = 0; i < 19; ++i) {
    update_maps(maps, on, e, cfg);
  }
  CHECK(maps.p_t(10, 10) > 0.9999f);
  const PixelMask off = PixelMask::zeros(32, 24);
  update_maps(maps, off, e, cfg);
  CHECK(maps.p_t(10, 10) == doctest::Approx(0.6 * 0.99996).epsilon(1e-3));
}

TEST_CASE("spatial map is the clipped box mean oracle") {
  PipelineConfig cfg;
  ProbabilityMaps maps = ProbabilityMaps::zeros(41, 19);
  const SampleGrid grid = one_cell_grid();
  const FlowField f = flows_at_angles(std::vector<double>(16, 0.0), 2.0, 16);
  const EntropyGrid e = grid_entropy(grid, f, cfg);
  const PixelMask m = random_mask(41, 19, 0.25, 77);
  update_maps(maps, m, e, cfg);
  for (int y = 0; y < 19; ++y) {
    for (int x = 0; x < 41; ++x) {
      const float want =
          float(cfg.beta) * testutil::naive_box_mean(m, x, y, cfg.spatial_w);
      CHECK(maps.p_s(y, x) == doctest::Approx(want).epsilon(1e-5));
    }
  }
}

TEST_CASE("one isolated pixel spreads as a twenty-fifth") {
  PipelineConfig cfg;
  ProbabilityMaps maps = ProbabilityMaps::zeros(32, 24);
  const SampleGrid grid = one_cell_grid();
  const FlowField f = flows_at_angles(std::vector<double>(16, 0.0), 2.0, 16);
  const EntropyGrid e = grid_entropy(grid, f, cfg);
  PixelMask m = PixelMask::zeros(32, 24);
  m.set(16, 12, true);
  update_maps(maps, m, e, cfg);
  CHECK(maps.p_s(12, 16) == doctest::Approx(0.4 / 25.0));
  CHECK(maps.p_s(12, 18) == doctest::Approx(0.4 / 25.0));
  CHECK(maps.p_s(12, 19) == 0.0f);
}

TEST_CASE("entropy map relaxes toward the cell value") {
  PipelineConfig cfg;
  ProbabilityMaps maps = ProbabilityMaps::zeros(8, 8);
  const SampleGrid grid = one_cell_grid();
  const FlowField f = flows_at_angles(std::vector<double>(16, 25.0), 2.0, 16);
  const EntropyGrid e = grid_entropy(grid, f, cfg);  // e = 1 everywhere here
  const PixelMask m = PixelMask::zeros(8, 8);
  update_maps(maps, m, e, cfg);
  CHECK(maps.p_e(3, 3) == doctest::Approx(0.6));
  update_maps(maps, m, e, cfg);
  CHECK(maps.p_e(3, 3) == doctest::Approx(0.84));
}

TEST_CASE("foreground probability is the elementwise product") {
  PipelineConfig cfg;
  ProbabilityMaps maps = ProbabilityMaps::zeros(24, 16);
  const SampleGrid grid = one_cell_grid();
  const FlowField f = flows_at_angles(std::vector<double>(16, 0.0), 2.0, 16);
  const EntropyGrid e = grid_entropy(grid, f, cfg);
  const PixelMask m = random_mask(24, 16, 0.4, 3);
  update_maps(maps, m, e, cfg);
  update_maps(maps, random_mask(24, 16, 0.4, 4), e, cfg);
  for (int y = 0; y < 16; ++y) {
    for (int x = 0; x < 24; ++x) {
      CHECK(maps.p_fg(y, x) ==
            maps.p_t(y, x) * maps.p_s(y, x) * maps.p_e(y, x));
    }
  }
}

TEST_CASE("morphology matches the naive oracle bit for bit") {
  for (std::uint32_t seed = 0; seed < 30; ++seed) {
    const PixelMask m = random_mask(83, 37, 0.35, 1000 + seed);
    CHECK(erode3(m) == testutil::naive_erode3(m));
    CHECK(dilate3(m) == testutil::naive_dilate3(m));
    CHECK(open3(m) == testutil::naive_dilate3(testutil::naive_erode3(m)));
    CHECK(close3(m) == testutil::naive_erode3(testutil::naive_dilate3(m)));
  }
}

TEST_CASE("threshold and clean keeps solid blobs and drops specks") {
  PipelineConfig cfg;
  const int w = 48;
  const int h = 32;
  ProbabilityMaps maps = ProbabilityMaps::zeros(w, h);
  maps.p_t.setConstant(1.0f);
  maps.p_s.setConstant(1.0f);
  maps.p_e.setConstant(1.0f);
  maps.p_fg = maps.p_t;
  PixelMask d = PixelMask::zeros(w, h);
  for (int y = 10; y < 17; ++y) {
    for (int x = 20; x < 27; ++x) {
      d.set(x, y, true);
    }
  }
  d.set(5, 5, true);  // isolated speck
  const PixelMask out = threshold_and_clean(maps, d, 0.5);
  CHECK(!out.test(5, 5));
  CHECK(out.test(23, 13));
  CHECK(out.count() == 49);

  // Below-threshold probability wipes the mask.
  maps.p_fg.setConstant(0.3f);
  const PixelMask none = threshold_and_clean(maps, d, 0.5);
  CHECK(none.count() == 0);
}

}  // TEST_SUITE
