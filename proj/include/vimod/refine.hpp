#pragma once

#include <vector>

#include "vimod/config.hpp"
#include "vimod/flow.hpp"
#include "vimod/image.hpp"

namespace vimod {

// Flow-direction statistics over square cells of grid_span x grid_span
// sample points. e is the normalized reciprocal entropy: 1 for perfectly
// coherent motion, small for scattered directions, 0 when a cell has fewer
// than four usable flows.
struct EntropyGrid {
  int cells_x = 0;
  int cells_y = 0;
  int bins = 0;
  std::vector<int> counts;   // cells_x*cells_y*bins orientation histogram
  std::vector<int> valid;    // usable flows per cell
  std::vector<double> h_bits;  // clamped entropy per cell, bits
  std::vector<double> e;       // reciprocal entropy per cell, in [0,1]

  // geometry carried over from the sample grid for pixel lookups
  int x0 = 0;
  int y0 = 0;
  int stride = 0;
  int span = 0;
  int grid_cols = 0;
  int grid_rows = 0;

  int cell_of_x(int x) const {
    const int gx = x <= x0 ? 0
                           : std::min((x - x0 + stride / 2) / stride,
                                      grid_cols - 1);
    return gx / span;
  }
  int cell_of_y(int y) const {
    const int gy = y <= y0 ? 0
                           : std::min((y - y0 + stride / 2) / stride,
                                      grid_rows - 1);
    return gy / span;
  }
  double e_at(int x, int y) const {
    return e[std::size_t(cell_of_y(y)) * cells_x + cell_of_x(x)];
  }
};

// Bins the orientations of tracked flows of magnitude >= cfg.flow_min_mag
// into cfg.histogram_bins equal sectors per cell, then converts the
// histogram entropy (base 2, clamped below at cfg.entropy_floor) into
// e = entropy_floor / entropy.
EntropyGrid grid_entropy(const SampleGrid& grid, const FlowField& flow,
                         const PipelineConfig& cfg);

// Exponentially updated per-pixel foreground evidence. p_fg is the
// elementwise product of the three maps.
struct ProbabilityMaps {
  ImageF p_t;
  ImageF p_s;
  ImageF p_e;
  ImageF p_fg;

  static ProbabilityMaps zeros(int w, int h);

  int width() const { return int(p_t.cols()); }
  int height() const { return int(p_t.rows()); }
};

// One time step: p_t tracks the mask itself, p_s its local box average
// (cfg.spatial_w wide, borders use the true clipped window area), p_e the
// cell entropy value under each pixel. Rates are cfg.alpha/beta/gamma.
void update_maps(ProbabilityMaps& maps, const PixelMask& d_t,
                 const EntropyGrid& grid, const PipelineConfig& cfg);

// Keeps mask pixels whose foreground probability reaches fg_threshold, then
// applies a 3x3 binary opening followed by a 3x3 closing.
PixelMask threshold_and_clean(const ProbabilityMaps& maps,
                              const PixelMask& d_t, double fg_threshold);

// 3x3 square-element morphology. Pixels outside the image read as zero.
PixelMask erode3(const PixelMask& m);
PixelMask dilate3(const PixelMask& m);
PixelMask open3(const PixelMask& m);
PixelMask close3(const PixelMask& m);

}  // namespace vimod
