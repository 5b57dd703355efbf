#include "vimod/warp.hpp"

#include <cmath>

#include "vimod/parallel.hpp"

namespace vimod {

WarpResult warp_image(const ImageBuffer& src, const Homography& h, int out_w,
                      int out_h) {
  const Homography hinv = invert(h);
  WarpResult res;
  res.image = ImageBuffer::zeros(out_w, out_h, src.channels);
  res.image.timestamp = src.timestamp;
  res.valid = PixelMask::zeros(out_w, out_h);

  const Eigen::Matrix3d m = hinv.m;
  const int ch = src.channels;
  parallel_for(0, out_h, [&](int y) {
    for (int x = 0; x < out_w; ++x) {
      const double w = m(2, 0) * x + m(2, 1) * y + m(2, 2);
      if (std::abs(w) <= 1e-12) {
        continue;
      }
      const double sx = (m(0, 0) * x + m(0, 1) * y + m(0, 2)) / w;
      const double sy = (m(1, 0) * x + m(1, 1) * y + m(1, 2)) / w;
      if (sx < 0.0 || sy < 0.0 || sx > src.width - 1 || sy > src.height - 1) {
        continue;
      }
      const int x0 = static_cast<int>(sx);
      const int y0 = static_cast<int>(sy);
      const int x1 = std::min(x0 + 1, src.width - 1);
      const int y1 = std::min(y0 + 1, src.height - 1);
      const double fx = sx - x0;
      const double fy = sy - y0;
      for (int c = 0; c < ch; ++c) {
        const double v00 = src.at(x0, y0, c);
        const double v10 = src.at(x1, y0, c);
        const double v01 = src.at(x0, y1, c);
        const double v11 = src.at(x1, y1, c);
        const double v = (1.0 - fy) * ((1.0 - fx) * v00 + fx * v10) +
                         fy * ((1.0 - fx) * v01 + fx * v11);
        res.image.at(x, y, c) = static_cast<std::uint8_t>(std::lround(v));
      }
      res.valid.set(x, y, true);
    }
  });
  return res;
}

}  // namespace vimod
