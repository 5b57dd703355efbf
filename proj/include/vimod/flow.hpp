#pragma once

#include <Eigen/Dense>
#include <vector>

#include "vimod/image.hpp"

namespace vimod {

// Regular grid of track points: every multiple of `stride` that keeps at
// least `margin` pixels to each image border. Points are stored row-major.
struct SampleGrid {
  std::vector<Eigen::Vector2d> points;
  int cols = 0;
  int rows = 0;
  int x0 = 0;
  int y0 = 0;
  int stride = 16;
};

SampleGrid make_sample_grid(int width, int height, int stride, int margin);

// Per-point displacement aligned with SampleGrid::points. d maps a previous
// frame point p to p + d in the current frame when tracked.
struct FlowField {
  std::vector<Eigen::Vector2f> d;
  std::vector<std::uint8_t> tracked;
  std::vector<float> residual;  // mean abs intensity error over the window

  std::size_t size() const { return d.size(); }
};

// Margin that keeps the tracker window plus interpolation guard bands inside
// the image for grid points.
int flow_grid_margin();

// Gaussian-weighted (1 4 6 4 1)/16 downsampling pyramid; level 0 is the input
// converted to float. Throws ImageTooSmall when any requested level drops
// under 16x16.
std::vector<ImageF> build_pyramid(const ImageBuffer& gray, int levels);

// Coarse-to-fine Lucas-Kanade with a 15x15 window: at most 20 iterations per
// level, 0.03 px convergence. Points are dropped (tracked = 0) for flat
// texture, divergence past 64 px, window leaving the image, or a large final
// residual.
FlowField track(const std::vector<ImageF>& prev_pyr,
                const std::vector<ImageF>& cur_pyr, const SampleGrid& grid);

}  // namespace vimod
