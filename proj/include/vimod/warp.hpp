#pragma once

#include "vimod/homography.hpp"
#include "vimod/image.hpp"

namespace vimod {

struct WarpResult {
  ImageBuffer image;
  PixelMask valid;
};

// Resamples src into an out_w x out_h raster so that output pixel p takes the
// value of src at apply(invert(h), p), bilinearly interpolated. h therefore
// maps src pixel coordinates to output pixel coordinates. Output pixels whose
// source falls outside src are zero with valid bit cleared.
WarpResult warp_image(const ImageBuffer& src, const Homography& h, int out_w,
                      int out_h);

}  // namespace vimod
