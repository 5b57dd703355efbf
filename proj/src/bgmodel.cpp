#include "vimod/bgmodel.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "vimod/errors.hpp"
#include "vimod/parallel.hpp"

namespace vimod {

void GmmModel::reset() {
  std::fill(modes_.begin(), modes_.end(), std::uint8_t(0));
}

GmmModel warp_model(const GmmModel& model, const Homography& h_frame) {
  const Eigen::Matrix3d inv = invert(h_frame).m;
  const int w = model.width();
  const int h = model.height();
  GmmModel out(w, h);
  parallel_for(0, h, [&](int y) {
    // u is affine in x for a fixed row, so walk it incrementally.
    Eigen::Vector3d u = inv.col(1) * double(y) + inv.col(2);
    for (int x = 0; x < w; ++x, u += inv.col(0)) {
      const std::size_t dst = out.pixel_index(x, y);
      if (std::abs(u.z()) <= 1e-12) {
        continue;
      }
      const long sx = std::lround(u.x() / u.z());
      const long sy = std::lround(u.y() / u.z());
      if (sx < 0 || sx >= w || sy < 0 || sy >= h) {
        continue;
      }
      const std::size_t src = model.pixel_index(int(sx), int(sy));
      out.mode_count(dst) = model.mode_count(src);
      std::memcpy(out.weight_at(dst), model.weight_at(src),
                  sizeof(float) * GmmModel::kMaxModes);
      std::memcpy(out.mean_at(dst), model.mean_at(src),
                  sizeof(float) * GmmModel::kMaxModes);
      std::memcpy(out.var_at(dst), model.var_at(src),
                  sizeof(float) * GmmModel::kMaxModes);
    }
  });
  return out;
}

namespace {

// One pixel of the mixture recursion. Returns true for foreground.
bool update_pixel(float* wt, float* mu, float* var, std::uint8_t& count,
                  float v, float lr) {
  int k = count;
  if (k == 0) {
    wt[0] = 1.0f;
    mu[0] = v;
    var[0] = GmmModel::kVarInit;
    count = 1;
    return false;
  }

  int matched = -1;
  float before = 0.0f;
  for (int j = 0; j < k; ++j) {
    const float delta = v - mu[j];
    if (delta * delta <= 9.0f * var[j]) {
      matched = j;
      break;
    }
    before += wt[j];
  }

  bool foreground;
  if (matched >= 0) {
    foreground = before > GmmModel::kBackgroundShare;
    for (int j = 0; j < k; ++j) {
      wt[j] *= 1.0f - lr;
    }
    wt[matched] += lr;
    const float delta = v - mu[matched];
    mu[matched] += lr * delta;
    var[matched] += lr * (delta * delta - var[matched]);
    var[matched] =
        std::clamp(var[matched], GmmModel::kVarMin, GmmModel::kVarMax);
  } else {
    foreground = true;
    if (k == GmmModel::kMaxModes) {
      --k;
    }
    for (int j = 0; j < k; ++j) {
      wt[j] *= 1.0f - lr;
    }
    wt[k] = lr;
    mu[k] = v;
    var[k] = GmmModel::kVarInit;
    ++k;
  }

  float sum = 0.0f;
  for (int j = 0; j < k; ++j) {
    sum += wt[j];
  }
  for (int j = 0; j < k; ++j) {
    wt[j] /= sum;
  }

  for (int i = 1; i < k; ++i) {
    const float wv = wt[i];
    const float mv = mu[i];
    const float vv = var[i];
    int j = i;
    while (j > 0 && wt[j - 1] < wv) {
      wt[j] = wt[j - 1];
      mu[j] = mu[j - 1];
      var[j] = var[j - 1];
      --j;
    }
    wt[j] = wv;
    mu[j] = mv;
    var[j] = vv;
  }

  count = std::uint8_t(k);
  return foreground;
}

}  // namespace

PixelMask update_classify(GmmModel& model, const ImageBuffer& frame,
                          double lr) {
  if (frame.width != model.width() || frame.height != model.height() ||
      frame.channels != 1) {
    throw SizeMismatch("frame does not match background model layout");
  }
  const int w = model.width();
  const int h = model.height();
  const float rate = float(lr);
  PixelMask mask = PixelMask::zeros(w, h);
  parallel_for(0, h, [&](int y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t pix = model.pixel_index(x, y);
      const float v = float(frame.data[pix]);
      if (update_pixel(model.weight_at(pix), model.mean_at(pix),
                       model.var_at(pix), model.mode_count(pix), v, rate)) {
        mask.set(x, y, true);
      }
    }
  });
  return mask;
}

PixelMask dual_plane_mask(const ImageBuffer& prev_frame,
                          const ImageBuffer& cur_frame, GmmModel& ground_model,
                          GmmModel& front_model, const Homography& h_ground,
                          const std::optional<Homography>& h_front,
                          double lr) {
  if (!prev_frame.same_size(cur_frame)) {
    throw SizeMismatch("consecutive frames differ in size");
  }
  const ImageBuffer gray = luma(cur_frame);
  if (ground_model.width() != gray.width ||
      ground_model.height() != gray.height) {
    throw SizeMismatch("background model does not match the frame");
  }

  ground_model = warp_model(ground_model, h_ground);
  PixelMask d_t = update_classify(ground_model, gray, lr);

  if (h_front.has_value()) {
    front_model = warp_model(front_model, *h_front);
    const PixelMask front = update_classify(front_model, gray, lr);
    d_t = mask_and(d_t, front);
  }
  // Without a front plane this frame the model goes stale rather than being
  // torn down; a fresh model would vote everything background on its first
  // frame back and the intersection would blank the mask.
  return d_t;
}

}  // namespace vimod
