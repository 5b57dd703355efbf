#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace vimod {

// Row-major float plane used for pyramids, gradients and probability maps.
// Indexed (row, col) = (y, x).
using ImageF = Eigen::Array<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Interleaved 8-bit raster, 1 (gray) or 3 (RGB) channels.
struct ImageBuffer {
  int width = 0;
  int height = 0;
  int channels = 1;
  std::vector<std::uint8_t> data;
  double timestamp = 0.0;

  static ImageBuffer zeros(int w, int h, int ch = 1);

  std::uint8_t& at(int x, int y, int c = 0) {
    return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }
  std::uint8_t at(int x, int y, int c = 0) const {
    return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }
  bool same_size(const ImageBuffer& o) const {
    return width == o.width && height == o.height;
  }
};

// Binary raster stored one bit per pixel, rows padded to 64-bit words.
// Padding bits are kept at zero by every operation.
struct PixelMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint64_t> words;

  static PixelMask zeros(int w, int h);

  int words_per_row() const { return (width + 63) / 64; }

  bool test(int x, int y) const {
    return (words[static_cast<std::size_t>(y) * words_per_row() + (x >> 6)] >>
            (x & 63)) &
           1u;
  }
  void set(int x, int y, bool v) {
    std::uint64_t& w =
        words[static_cast<std::size_t>(y) * words_per_row() + (x >> 6)];
    const std::uint64_t bit = std::uint64_t{1} << (x & 63);
    if (v) {
      w |= bit;
    } else {
      w &= ~bit;
    }
  }
  std::size_t count() const;
  bool empty_mask() const { return count() == 0; }

  // Clears any set bits beyond `width` in the last word of each row.
  void clear_padding();
};

bool operator==(const PixelMask& a, const PixelMask& b);

// Word-parallel intersection/union. Throws SizeMismatch on differing sizes.
PixelMask mask_and(const PixelMask& a, const PixelMask& b);
PixelMask mask_or(const PixelMask& a, const PixelMask& b);

// BT.601 luma, rounded to nearest: 0.299 R + 0.587 G + 0.114 B.
// A 1-channel input is passed through unchanged.
ImageBuffer luma(const ImageBuffer& img);

// Conversions between 8-bit gray rasters and float planes.
ImageF to_float(const ImageBuffer& gray);
ImageBuffer from_float(const ImageF& img);

}  // namespace vimod
