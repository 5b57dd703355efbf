#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vimod/image.hpp"

namespace vimod {

// Binary Netpbm I/O. read_pnm accepts P5 (gray) and P6 (RGB) with maxval 255.
ImageBuffer read_pnm(const std::string& path);
void write_pgm(const std::string& path, const ImageBuffer& gray);
void write_ppm(const std::string& path, const ImageBuffer& rgb);

// Masks travel as 8-bit PGM with values 0 / 255; any nonzero reads back as 1.
void write_mask_pgm(const std::string& path, const PixelMask& mask);
PixelMask read_mask_pgm(const std::string& path);

// 16-bit big-endian P5, used for probability maps scaled to [0, 65535].
void write_pgm16(const std::string& path, const std::vector<std::uint16_t>& v,
                 int width, int height);
std::vector<std::uint16_t> read_pgm16(const std::string& path, int* width,
                                      int* height);

}  // namespace vimod
