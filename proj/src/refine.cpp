#include "vimod/refine.hpp"

#include <cmath>
#include <numbers>

#include "vimod/errors.hpp"
#include "vimod/parallel.hpp"

namespace vimod {

EntropyGrid grid_entropy(const SampleGrid& grid, const FlowField& flow,
                         const PipelineConfig& cfg) {
  if (flow.size() != grid.points.size()) {
    throw SizeMismatch("flow field does not match sample grid");
  }
  EntropyGrid g;
  g.bins = cfg.histogram_bins;
  g.span = cfg.grid_span;
  g.x0 = grid.x0;
  g.y0 = grid.y0;
  g.stride = grid.stride;
  g.grid_cols = grid.cols;
  g.grid_rows = grid.rows;
  g.cells_x = (grid.cols + g.span - 1) / g.span;
  g.cells_y = (grid.rows + g.span - 1) / g.span;
  const std::size_t cells = std::size_t(g.cells_x) * g.cells_y;
  g.counts.assign(cells * g.bins, 0);
  g.valid.assign(cells, 0);
  g.h_bits.assign(cells, 0.0);
  g.e.assign(cells, 0.0);

  const double sector = 360.0 / g.bins;
  const float min_mag = float(cfg.flow_min_mag);
  for (std::size_t i = 0; i < flow.size(); ++i) {
    if (!flow.tracked[i]) {
      continue;
    }
    const Eigen::Vector2f d = flow.d[i];
    if (d.norm() < min_mag) {
      continue;
    }
    const int gx = int(i) % grid.cols;
    const int gy = int(i) / grid.cols;
    const std::size_t cell =
        std::size_t(gy / g.span) * g.cells_x + gx / g.span;
    double deg =
        std::atan2(double(d.y()), double(d.x())) * (180.0 / std::numbers::pi);
    if (deg < 0.0) {
      deg += 360.0;
    }
    const int bin = std::min(int(deg / sector), g.bins - 1);
    ++g.counts[cell * g.bins + bin];
    ++g.valid[cell];
  }

  for (std::size_t c = 0; c < cells; ++c) {
    const int n = g.valid[c];
    if (n < 4) {
      continue;
    }
    double h = 0.0;
    for (int b = 0; b < g.bins; ++b) {
      const int cnt = g.counts[c * g.bins + b];
      if (cnt > 0) {
        const double p = double(cnt) / n;
        h -= p * std::log2(p);
      }
    }
    h = std::max(h, cfg.entropy_floor);
    g.h_bits[c] = h;
    g.e[c] = cfg.entropy_floor / h;
  }
  return g;
}

ProbabilityMaps ProbabilityMaps::zeros(int w, int h) {
  ProbabilityMaps m;
  m.p_t = ImageF::Zero(h, w);
  m.p_s = ImageF::Zero(h, w);
  m.p_e = ImageF::Zero(h, w);
  m.p_fg = ImageF::Zero(h, w);
  return m;
}

void update_maps(ProbabilityMaps& maps, const PixelMask& d_t,
                 const EntropyGrid& grid, const PipelineConfig& cfg) {
  const int w = maps.width();
  const int h = maps.height();
  if (d_t.width != w || d_t.height != h) {
    throw SizeMismatch("mask does not match probability maps");
  }

  // summed-area table of the mask for clipped box averages
  std::vector<std::uint32_t> sat(std::size_t(w + 1) * (h + 1), 0);
  for (int y = 0; y < h; ++y) {
    std::uint32_t row = 0;
    const std::size_t above = std::size_t(y) * (w + 1);
    const std::size_t here = std::size_t(y + 1) * (w + 1);
    for (int x = 0; x < w; ++x) {
      row += d_t.test(x, y) ? 1u : 0u;
      sat[here + x + 1] = sat[above + x + 1] + row;
    }
  }

  std::vector<int> cell_y(h);
  for (int y = 0; y < h; ++y) {
    cell_y[y] = grid.cell_of_y(y);
  }
  std::vector<int> cell_x(w);
  for (int x = 0; x < w; ++x) {
    cell_x[x] = grid.cell_of_x(x);
  }

  const float a = float(cfg.alpha);
  const float b = float(cfg.beta);
  const float ge = float(cfg.gamma);
  const int half = cfg.spatial_w / 2;

  parallel_for(0, h, [&](int y) {
    const int y1 = std::max(0, y - half);
    const int y2 = std::min(h - 1, y + half);
    const std::size_t top = std::size_t(y1) * (w + 1);
    const std::size_t bot = std::size_t(y2 + 1) * (w + 1);
    const std::size_t cell_row = std::size_t(cell_y[y]) * grid.cells_x;
    for (int x = 0; x < w; ++x) {
      const float d = d_t.test(x, y) ? 1.0f : 0.0f;
      maps.p_t(y, x) = (1.0f - a) * maps.p_t(y, x) + a * d;

      const int x1 = std::max(0, x - half);
      const int x2 = std::min(w - 1, x + half);
      const std::uint32_t sum =
          sat[bot + x2 + 1] - sat[top + x2 + 1] - sat[bot + x1] + sat[top + x1];
      const float area = float((x2 - x1 + 1) * (y2 - y1 + 1));
      maps.p_s(y, x) = (1.0f - b) * maps.p_s(y, x) + b * (float(sum) / area);

      const float e = float(grid.e[cell_row + cell_x[x]]);
      maps.p_e(y, x) = (1.0f - ge) * maps.p_e(y, x) + ge * e;
    }
  });
  maps.p_fg = maps.p_t * maps.p_s * maps.p_e;
}

namespace {

enum class RowOp { And, Or };

// Per-row 3-wide neighborhood combine; bits shifted in from outside the
// image are zero.
void combine_row(const std::uint64_t* src, std::uint64_t* dst, int nw,
                 RowOp op) {
  for (int i = 0; i < nw; ++i) {
    const std::uint64_t plus =
        (src[i] << 1) | (i > 0 ? src[i - 1] >> 63 : 0u);
    const std::uint64_t minus =
        (src[i] >> 1) | (i + 1 < nw ? src[i + 1] << 63 : 0u);
    dst[i] = op == RowOp::And ? (plus & src[i] & minus)
                              : (plus | src[i] | minus);
  }
}

PixelMask morph3(const PixelMask& m, RowOp op) {
  const int h = m.height;
  const int nw = m.words_per_row();
  std::vector<std::uint64_t> hor(m.words.size());
  parallel_for(0, h, [&](int y) {
    combine_row(&m.words[std::size_t(y) * nw], &hor[std::size_t(y) * nw], nw,
                op);
  });
  PixelMask out = PixelMask::zeros(m.width, m.height);
  parallel_for(0, h, [&](int y) {
    std::uint64_t* dst = &out.words[std::size_t(y) * nw];
    const std::uint64_t* mid = &hor[std::size_t(y) * nw];
    const std::uint64_t* up = y > 0 ? mid - nw : nullptr;
    const std::uint64_t* dn = y + 1 < h ? mid + nw : nullptr;
    if (op == RowOp::And) {
      if (!up || !dn) {
        return;  // vertical neighbor outside the image, row erodes away
      }
      for (int i = 0; i < nw; ++i) {
        dst[i] = up[i] & mid[i] & dn[i];
      }
    } else {
      for (int i = 0; i < nw; ++i) {
        dst[i] = mid[i] | (up ? up[i] : 0u) | (dn ? dn[i] : 0u);
      }
    }
  });
  out.clear_padding();
  return out;
}

}  // namespace

PixelMask erode3(const PixelMask& m) { return morph3(m, RowOp::And); }
PixelMask dilate3(const PixelMask& m) { return morph3(m, RowOp::Or); }
PixelMask open3(const PixelMask& m) { return dilate3(erode3(m)); }
PixelMask close3(const PixelMask& m) { return erode3(dilate3(m)); }

PixelMask threshold_and_clean(const ProbabilityMaps& maps,
                              const PixelMask& d_t, double fg_threshold) {
  const int w = d_t.width;
  const int h = d_t.height;
  if (maps.width() != w || maps.height() != h) {
    throw SizeMismatch("mask does not match probability maps");
  }
  PixelMask kept = PixelMask::zeros(w, h);
  parallel_for(0, h, [&](int y) {
    for (int x = 0; x < w; ++x) {
      if (d_t.test(x, y) && double(maps.p_fg(y, x)) >= fg_threshold) {
        kept.set(x, y, true);
      }
    }
  });
  return close3(open3(kept));
}

}  // namespace vimod
