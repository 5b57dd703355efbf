#include "vimod/flow.hpp"

#include <cmath>

#include "vimod/errors.hpp"
#include "vimod/parallel.hpp"

namespace vimod {

namespace {

constexpr int kHalfWindow = 7;  // 15x15 window
constexpr int kMaxIters = 20;
constexpr double kConvergeEps = 0.03;
constexpr double kMaxFlow = 64.0;
constexpr double kMinVariance = 25.0;
constexpr double kMaxResidual = 30.0;
constexpr double kMinGradDet = 1e-4;

// Interpolation needs floor(q)+1 and gradients need one more pixel on each
// side, so valid window centers live in [kHalfWindow+1, dim-kHalfWindow-3].
bool window_inside(double x, double y, int w, int h) {
  return x >= kHalfWindow + 1 && y >= kHalfWindow + 1 &&
         x <= w - kHalfWindow - 3 && y <= h - kHalfWindow - 3;
}

inline float sample_bilinear(const ImageF& img, double x, double y) {
  const int x0 = static_cast<int>(x);
  const int y0 = static_cast<int>(y);
  const float fx = static_cast<float>(x - x0);
  const float fy = static_cast<float>(y - y0);
  const float* row0 = img.data() + static_cast<std::ptrdiff_t>(y0) * img.cols();
  const float* row1 = row0 + img.cols();
  const float a = row0[x0] + fx * (row0[x0 + 1] - row0[x0]);
  const float b = row1[x0] + fx * (row1[x0 + 1] - row1[x0]);
  return a + fy * (b - a);
}

ImageF downsample(const ImageF& src) {
  const int h = static_cast<int>(src.rows());
  const int w = static_cast<int>(src.cols());
  // horizontal 5-tap, clamped borders
  ImageF tmp(h, w);
  for (int y = 0; y < h; ++y) {
    const float* r = src.data() + static_cast<std::ptrdiff_t>(y) * w;
    float* o = tmp.data() + static_cast<std::ptrdiff_t>(y) * w;
    for (int x = 0; x < w; ++x) {
      const int xm2 = std::max(0, x - 2);
      const int xm1 = std::max(0, x - 1);
      const int xp1 = std::min(w - 1, x + 1);
      const int xp2 = std::min(w - 1, x + 2);
      o[x] = (r[xm2] + 4.0f * r[xm1] + 6.0f * r[x] + 4.0f * r[xp1] + r[xp2]) *
             (1.0f / 16.0f);
    }
  }
  const int oh = (h + 1) / 2;
  const int ow = (w + 1) / 2;
  ImageF out(oh, ow);
  for (int y = 0; y < oh; ++y) {
    const int sy = 2 * y;
    const int ym2 = std::max(0, sy - 2);
    const int ym1 = std::max(0, sy - 1);
    const int yp1 = std::min(h - 1, sy + 1);
    const int yp2 = std::min(h - 1, sy + 2);
    for (int x = 0; x < ow; ++x) {
      const int sx = 2 * x;
      out(y, x) = (tmp(ym2, sx) + 4.0f * tmp(ym1, sx) + 6.0f * tmp(sy, sx) +
                   4.0f * tmp(yp1, sx) + tmp(yp2, sx)) *
                  (1.0f / 16.0f);
    }
  }
  return out;
}

struct LevelGradients {
  ImageF gx;
  ImageF gy;
};

LevelGradients gradients(const ImageF& img) {
  const int h = static_cast<int>(img.rows());
  const int w = static_cast<int>(img.cols());
  LevelGradients g;
  g.gx = ImageF::Zero(h, w);
  g.gy = ImageF::Zero(h, w);
  for (int y = 1; y < h - 1; ++y) {
    for (int x = 1; x < w - 1; ++x) {
      g.gx(y, x) = 0.5f * (img(y, x + 1) - img(y, x - 1));
      g.gy(y, x) = 0.5f * (img(y + 1, x) - img(y - 1, x));
    }
  }
  return g;
}

}  // namespace

int flow_grid_margin() { return kHalfWindow + 3; }

SampleGrid make_sample_grid(int width, int height, int stride, int margin) {
  if (stride < 1) {
    throw InvalidSpec("sample stride must be >= 1");
  }
  SampleGrid grid;
  grid.stride = stride;
  std::vector<int> xs;
  std::vector<int> ys;
  for (int x = stride; x <= width - 1 - margin; x += stride) {
    if (x >= margin) {
      xs.push_back(x);
    }
  }
  for (int y = stride; y <= height - 1 - margin; y += stride) {
    if (y >= margin) {
      ys.push_back(y);
    }
  }
  grid.cols = static_cast<int>(xs.size());
  grid.rows = static_cast<int>(ys.size());
  grid.x0 = xs.empty() ? 0 : xs.front();
  grid.y0 = ys.empty() ? 0 : ys.front();
  grid.points.reserve(xs.size() * ys.size());
  for (int y : ys) {
    for (int x : xs) {
      grid.points.emplace_back(x, y);
    }
  }
  return grid;
}

std::vector<ImageF> build_pyramid(const ImageBuffer& gray, int levels) {
  if (levels < 1) {
    throw InvalidSpec("pyramid needs at least one level");
  }
  std::vector<ImageF> pyr;
  pyr.reserve(levels);
  pyr.push_back(to_float(luma(gray)));
  for (int l = 1; l < levels; ++l) {
    pyr.push_back(downsample(pyr.back()));
  }
  for (const ImageF& level : pyr) {
    if (level.rows() < 16 || level.cols() < 16) {
      throw ImageTooSmall("pyramid level under 16x16");
    }
  }
  return pyr;
}

FlowField track(const std::vector<ImageF>& prev_pyr,
                const std::vector<ImageF>& cur_pyr, const SampleGrid& grid) {
  if (prev_pyr.size() != cur_pyr.size() || prev_pyr.empty()) {
    throw SizeMismatch("pyramids must match in level count");
  }
  if (prev_pyr[0].rows() != cur_pyr[0].rows() ||
      prev_pyr[0].cols() != cur_pyr[0].cols()) {
    throw SizeMismatch("pyramid base sizes differ");
  }
  const int levels = static_cast<int>(prev_pyr.size());

  std::vector<LevelGradients> grads(levels);
  for (int l = 0; l < levels; ++l) {
    grads[l] = gradients(prev_pyr[l]);
  }

  const int n = static_cast<int>(grid.points.size());
  FlowField field;
  field.d.assign(n, Eigen::Vector2f::Zero());
  field.tracked.assign(n, 0);
  field.residual.assign(n, 0.0f);

  constexpr int kSide = 2 * kHalfWindow + 1;
  constexpr int kArea = kSide * kSide;

  parallel_for(0, n, [&](int i) {
    const Eigen::Vector2d p = grid.points[i];

    // Texture gate on the full-resolution template window.
    {
      const ImageF& base = prev_pyr[0];
      if (!window_inside(p.x(), p.y(), static_cast<int>(base.cols()),
                         static_cast<int>(base.rows()))) {
        return;
      }
      double s = 0.0, s2 = 0.0;
      for (int dy = -kHalfWindow; dy <= kHalfWindow; ++dy) {
        for (int dx = -kHalfWindow; dx <= kHalfWindow; ++dx) {
          const double v =
              base(static_cast<int>(p.y()) + dy, static_cast<int>(p.x()) + dx);
          s += v;
          s2 += v * v;
        }
      }
      const double var = s2 / kArea - (s / kArea) * (s / kArea);
      if (var < kMinVariance) {
        return;
      }
    }

    double dx_total = 0.0;
    double dy_total = 0.0;
    float tmpl[kArea];
    float tgx[kArea];
    float tgy[kArea];
    double final_residual = 0.0;

    for (int l = levels - 1; l >= 0; --l) {
      const ImageF& prev = prev_pyr[l];
      const ImageF& cur = cur_pyr[l];
      const int w = static_cast<int>(prev.cols());
      const int h = static_cast<int>(prev.rows());
      const double scale = 1.0 / static_cast<double>(1 << l);
      const double px = p.x() * scale;
      const double py = p.y() * scale;
      if (l < levels - 1) {
        dx_total *= 2.0;
        dy_total *= 2.0;
      }
      if (!window_inside(px, py, w, h)) {
        continue;  // point too close to the border at this scale
      }

      // Template window and its gradients, sampled once per level.
      double gxx = 0.0, gxy = 0.0, gyy = 0.0;
      int k = 0;
      for (int dy = -kHalfWindow; dy <= kHalfWindow; ++dy) {
        for (int dx = -kHalfWindow; dx <= kHalfWindow; ++dx, ++k) {
          const double sx = px + dx;
          const double sy = py + dy;
          tmpl[k] = sample_bilinear(prev, sx, sy);
          tgx[k] = sample_bilinear(grads[l].gx, sx, sy);
          tgy[k] = sample_bilinear(grads[l].gy, sx, sy);
          gxx += static_cast<double>(tgx[k]) * tgx[k];
          gxy += static_cast<double>(tgx[k]) * tgy[k];
          gyy += static_cast<double>(tgy[k]) * tgy[k];
        }
      }
      const double det = gxx * gyy - gxy * gxy;
      if (det < kMinGradDet) {
        // Unusable gradients only doom the point at full resolution; a
        // coarse level just passes the current estimate down.
        if (l > 0) {
          continue;
        }
        return;
      }

      for (int iter = 0; iter < kMaxIters; ++iter) {
        const double qx = px + dx_total;
        const double qy = py + dy_total;
        if (!window_inside(qx, qy, w, h)) {
          if (l > 0) {
            break;  // out of bounds at this scale; refine at the next one
          }
          return;
        }
        double bx = 0.0, by = 0.0, res = 0.0;
        k = 0;
        for (int dy = -kHalfWindow; dy <= kHalfWindow; ++dy) {
          for (int dx = -kHalfWindow; dx <= kHalfWindow; ++dx, ++k) {
            const double diff =
                static_cast<double>(sample_bilinear(cur, qx + dx, qy + dy)) -
                tmpl[k];
            bx += diff * tgx[k];
            by += diff * tgy[k];
            res += std::abs(diff);
          }
        }
        final_residual = res / kArea;
        const double sx = (gyy * bx - gxy * by) / det;
        const double sy = (gxx * by - gxy * bx) / det;
        dx_total -= sx;
        dy_total -= sy;
        if (std::hypot(sx, sy) < kConvergeEps) {
          break;
        }
        if (std::hypot(dx_total, dy_total) > 2.0 * kMaxFlow) {
          return;  // diverged
        }
      }
    }

    if (std::hypot(dx_total, dy_total) > kMaxFlow) {
      return;
    }
    if (final_residual > kMaxResidual) {
      return;
    }
    field.d[i] = Eigen::Vector2f(static_cast<float>(dx_total),
                                 static_cast<float>(dy_total));
    field.tracked[i] = 1;
    field.residual[i] = static_cast<float>(final_residual);
  });

  return field;
}

}  // namespace vimod
