#pragma once

// Independent reference implementations the tests compare the library
// against. Everything here is written for clarity, not speed: plain loops,
// no shared code with the implementations under test beyond the public data
// types.

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "vimod/image.hpp"

namespace testutil {

// Unique scratch directory, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = (std::filesystem::temp_directory_path() /
             ("vimod_" + tag + "_" + std::to_string(::getpid()) + "_" +
              std::to_string(counter++)))
                .string();
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::string& path() const { return path_; }
  std::string file(const std::string& name) const { return path_ + "/" + name; }

 private:
  std::string path_;
};

inline vimod::PixelMask naive_erode3(const vimod::PixelMask& m) {
  vimod::PixelMask out = vimod::PixelMask::zeros(m.width, m.height);
  for (int y = 0; y < m.height; ++y) {
    for (int x = 0; x < m.width; ++x) {
      bool all = true;
      for (int dy = -1; dy <= 1 && all; ++dy) {
        for (int dx = -1; dx <= 1 && all; ++dx) {
          const int nx = x + dx;
          const int ny = y + dy;
          if (nx < 0 || nx >= m.width || ny < 0 || ny >= m.height ||
              !m.test(nx, ny)) {
            all = false;
          }
        }
      }
      out.set(x, y, all);
    }
  }
  return out;
}

inline vimod::PixelMask naive_dilate3(const vimod::PixelMask& m) {
  vimod::PixelMask out = vimod::PixelMask::zeros(m.width, m.height);
  for (int y = 0; y < m.height; ++y) {
    for (int x = 0; x < m.width; ++x) {
      bool any = false;
      for (int dy = -1; dy <= 1 && !any; ++dy) {
        for (int dx = -1; dx <= 1 && !any; ++dx) {
          const int nx = x + dx;
          const int ny = y + dy;
          if (nx >= 0 && nx < m.width && ny >= 0 && ny < m.height &&
              m.test(nx, ny)) {
            any = true;
          }
        }
      }
      out.set(x, y, any);
    }
  }
  return out;
}

// Scalar mixture-of-Gaussians recursion over one value sequence, arranged to
// reproduce the documented per-pixel semantics step for step so comparisons
// can be exact in float.
struct ScalarGmm {
  struct Mode {
    float w = 0.0f;
    float mu = 0.0f;
    float var = 0.0f;
  };
  std::vector<Mode> modes;

  bool update(float v, float lr, int max_modes, float var_init, float var_min,
              float var_max, float bg_share) {
    if (modes.empty()) {
      modes.push_back({1.0f, v, var_init});
      return false;
    }
    int matched = -1;
    float before = 0.0f;
    for (std::size_t j = 0; j < modes.size(); ++j) {
      const float d = v - modes[j].mu;
      if (d * d <= 9.0f * modes[j].var) {
        matched = int(j);
        break;
      }
      before += modes[j].w;
    }
    bool fg;
    if (matched >= 0) {
      fg = before > bg_share;
      for (Mode& m : modes) {
        m.w *= 1.0f - lr;
      }
      Mode& m = modes[matched];
      m.w += lr;
      const float d = v - m.mu;
      m.mu += lr * d;
      m.var += lr * (d * d - m.var);
      m.var = std::clamp(m.var, var_min, var_max);
    } else {
      fg = true;
      if (int(modes.size()) == max_modes) {
        modes.pop_back();
      }
      for (Mode& m : modes) {
        m.w *= 1.0f - lr;
      }
      modes.push_back({lr, v, var_init});
    }
    float sum = 0.0f;
    for (const Mode& m : modes) {
      sum += m.w;
    }
    for (Mode& m : modes) {
      m.w /= sum;
    }
    std::stable_sort(modes.begin(), modes.end(),
                     [](const Mode& a, const Mode& b) { return a.w > b.w; });
    return fg;
  }
};

// One-dimensional Kalman recursion used to cross-check the matrix filter in
// regimes where its coordinates decouple.
struct ScalarKalman {
  double x = 0.0;
  double sigma = 0.0;

  void predict(double q) { sigma += q; }
  void update(double z, double p) {
    const double k = sigma / (sigma + p);
    x += k * (z - x);
    sigma *= 1.0 - k;
  }
};

struct PixelCounts {
  long long tp = 0;
  long long fp = 0;
  long long fn = 0;
};

inline PixelCounts count_pixels(const vimod::PixelMask& pred,
                                const vimod::PixelMask& gt) {
  PixelCounts c;
  for (int y = 0; y < pred.height; ++y) {
    for (int x = 0; x < pred.width; ++x) {
      const bool p = pred.test(x, y);
      const bool g = gt.test(x, y);
      if (p && g) {
        ++c.tp;
      } else if (p) {
        ++c.fp;
      } else if (g) {
        ++c.fn;
      }
    }
  }
  return c;
}

// Clipped box mean over a w x w window of a binary mask, the reference for
// the spatial evidence map.
inline float naive_box_mean(const vimod::PixelMask& m, int cx, int cy, int w) {
  const int r = w / 2;
  int n = 0;
  int on = 0;
  for (int y = cy - r; y <= cy + r; ++y) {
    for (int x = cx - r; x <= cx + r; ++x) {
      if (x < 0 || x >= m.width || y < 0 || y >= m.height) {
        continue;
      }
      ++n;
      on += m.test(x, y) ? 1 : 0;
    }
  }
  return n == 0 ? 0.0f : float(on) / float(n);
}

inline vimod::ImageBuffer make_gray(int w, int h,
                                    const std::function<int(int, int)>& f) {
  vimod::ImageBuffer img = vimod::ImageBuffer::zeros(w, h, 1);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int v = std::clamp(f(x, y), 0, 255);
      img.at(x, y) = std::uint8_t(v);
    }
  }
  return img;
}

}  // namespace testutil
