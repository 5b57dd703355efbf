#include "vimod/image.hpp"

#include <bit>
#include <cmath>

#include "vimod/errors.hpp"

namespace vimod {

ImageBuffer ImageBuffer::zeros(int w, int h, int ch) {
  ImageBuffer img;
  img.width = w;
  img.height = h;
  img.channels = ch;
  img.data.assign(static_cast<std::size_t>(w) * h * ch, 0);
  return img;
}

PixelMask PixelMask::zeros(int w, int h) {
  PixelMask m;
  m.width = w;
  m.height = h;
  m.words.assign(static_cast<std::size_t>(m.words_per_row()) * h, 0);
  return m;
}

std::size_t PixelMask::count() const {
  std::size_t n = 0;
  for (std::uint64_t w : words) {
    n += static_cast<std::size_t>(std::popcount(w));
  }
  return n;
}

void PixelMask::clear_padding() {
  const int wpr = words_per_row();
  if (wpr == 0) {
    return;
  }
  const int tail_bits = width & 63;
  if (tail_bits == 0) {
    return;
  }
  const std::uint64_t keep = (std::uint64_t{1} << tail_bits) - 1;
  for (int y = 0; y < height; ++y) {
    words[static_cast<std::size_t>(y) * wpr + wpr - 1] &= keep;
  }
}

bool operator==(const PixelMask& a, const PixelMask& b) {
  return a.width == b.width && a.height == b.height && a.words == b.words;
}

namespace {
void require_same_size(const PixelMask& a, const PixelMask& b) {
  if (a.width != b.width || a.height != b.height) {
    throw SizeMismatch("mask sizes differ");
  }
}
}  // namespace

PixelMask mask_and(const PixelMask& a, const PixelMask& b) {
  require_same_size(a, b);
  PixelMask out = a;
  for (std::size_t i = 0; i < out.words.size(); ++i) {
    out.words[i] &= b.words[i];
  }
  return out;
}

PixelMask mask_or(const PixelMask& a, const PixelMask& b) {
  require_same_size(a, b);
  PixelMask out = a;
  for (std::size_t i = 0; i < out.words.size(); ++i) {
    out.words[i] |= b.words[i];
  }
  return out;
}

ImageBuffer luma(const ImageBuffer& img) {
  if (img.channels == 1) {
    return img;
  }
  if (img.channels != 3) {
    throw SizeMismatch("luma expects 1 or 3 channels");
  }
  ImageBuffer out = ImageBuffer::zeros(img.width, img.height, 1);
  out.timestamp = img.timestamp;
  const std::size_t n = static_cast<std::size_t>(img.width) * img.height;
  for (std::size_t i = 0; i < n; ++i) {
    const double y = 0.299 * img.data[3 * i] + 0.587 * img.data[3 * i + 1] +
                     0.114 * img.data[3 * i + 2];
    out.data[i] = static_cast<std::uint8_t>(std::lround(y));
  }
  return out;
}

ImageF to_float(const ImageBuffer& gray) {
  if (gray.channels != 1) {
    throw SizeMismatch("to_float expects a 1-channel image");
  }
  ImageF out(gray.height, gray.width);
  const std::uint8_t* src = gray.data.data();
  float* dst = out.data();
  const std::size_t n = static_cast<std::size_t>(gray.width) * gray.height;
  for (std::size_t i = 0; i < n; ++i) {
    dst[i] = static_cast<float>(src[i]);
  }
  return out;
}

ImageBuffer from_float(const ImageF& img) {
  ImageBuffer out =
      ImageBuffer::zeros(static_cast<int>(img.cols()), static_cast<int>(img.rows()), 1);
  const float* src = img.data();
  const std::size_t n = out.data.size();
  for (std::size_t i = 0; i < n; ++i) {
    const float v = std::min(255.0f, std::max(0.0f, src[i]));
    out.data[i] = static_cast<std::uint8_t>(std::lround(v));
  }
  return out;
}

}  // namespace vimod
