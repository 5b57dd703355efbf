#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "vimod/homography.hpp"
#include "vimod/image.hpp"

namespace vimod {

// Per-pixel Gaussian mixture over gray levels. Modes are kept sorted by
// descending weight. A pixel with zero modes is invalid and reinitializes
// from the next observed value.
class GmmModel {
 public:
  static constexpr int kMaxModes = 4;
  static constexpr float kVarMin = 4.0f;
  static constexpr float kVarMax = 900.0f;
  static constexpr float kVarInit = 100.0f;
  static constexpr float kBackgroundShare = 0.9f;

  GmmModel() = default;
  GmmModel(int width, int height)
      : width_(width),
        height_(height),
        weight_(std::size_t(width) * height * kMaxModes, 0.0f),
        mean_(std::size_t(width) * height * kMaxModes, 0.0f),
        var_(std::size_t(width) * height * kMaxModes, 0.0f),
        modes_(std::size_t(width) * height, 0) {}

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return width_ == 0 || height_ == 0; }

  // Drops every mode; all pixels reinitialize on the next update.
  void reset();

  std::size_t pixel_index(int x, int y) const {
    return std::size_t(y) * width_ + x;
  }

  float* weight_at(std::size_t pix) { return &weight_[pix * kMaxModes]; }
  float* mean_at(std::size_t pix) { return &mean_[pix * kMaxModes]; }
  float* var_at(std::size_t pix) { return &var_[pix * kMaxModes]; }
  const float* weight_at(std::size_t pix) const {
    return &weight_[pix * kMaxModes];
  }
  const float* mean_at(std::size_t pix) const {
    return &mean_[pix * kMaxModes];
  }
  const float* var_at(std::size_t pix) const { return &var_[pix * kMaxModes]; }
  std::uint8_t& mode_count(std::size_t pix) { return modes_[pix]; }
  std::uint8_t mode_count(std::size_t pix) const { return modes_[pix]; }

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<float> weight_;
  std::vector<float> mean_;
  std::vector<float> var_;
  std::vector<std::uint8_t> modes_;
};

// Moves the model with the scene: each destination pixel pulls its mixture
// from the nearest inverse-mapped source pixel under h_frame (which maps
// previous-frame pixels to current-frame pixels). Destinations falling
// outside the source frame come back with zero modes.
GmmModel warp_model(const GmmModel& model, const Homography& h_frame);

// One background-subtraction step on a grayscale frame. Matched modes (first
// within 3 sigma in weight order) update at rate lr; unmatched observations
// spawn a mode, evicting the lightest when full. A pixel is background when
// its matched mode sits inside the heaviest prefix holding at most
// kBackgroundShare of the total weight; fresh or invalid pixels initialize
// and count as background. Returns the foreground mask.
PixelMask update_classify(GmmModel& model, const ImageBuffer& frame,
                          double lr = 0.01);

// Full per-frame step for both planes: warps each model by its homography,
// updates on the current frame, and intersects the masks. Without a front
// homography the ground mask passes through and the front model is dropped
// so it restarts when the plane returns.
PixelMask dual_plane_mask(const ImageBuffer& prev_frame,
                          const ImageBuffer& cur_frame, GmmModel& ground_model,
                          GmmModel& front_model, const Homography& h_ground,
                          const std::optional<Homography>& h_front,
                          double lr = 0.01);

}  // namespace vimod
