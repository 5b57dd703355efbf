#include "vimod/pnm.hpp"

#include <cstdio>
#include <fstream>

#include "vimod/errors.hpp"

namespace vimod {

namespace {

// Reads the next header token, skipping whitespace and '#' comments.
std::string next_token(std::istream& in) {
  std::string tok;
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') {
        c = in.get();
      }
    } else if (std::isspace(c)) {
      c = in.get();
    } else {
      break;
    }
  }
  while (c != EOF && !std::isspace(c)) {
    tok.push_back(static_cast<char>(c));
    c = in.get();
  }
  return tok;
}

long parse_header_int(std::istream& in, const std::string& path) {
  const std::string tok = next_token(in);
  try {
    return std::stol(tok);
  } catch (const std::exception&) {
    throw IoError("malformed header in " + path);
  }
}

struct PnmHeader {
  std::string magic;
  int width = 0;
  int height = 0;
  long maxval = 0;
};

PnmHeader read_header(std::istream& in, const std::string& path) {
  PnmHeader h;
  h.magic = next_token(in);
  h.width = static_cast<int>(parse_header_int(in, path));
  h.height = static_cast<int>(parse_header_int(in, path));
  h.maxval = parse_header_int(in, path);
  if (h.width <= 0 || h.height <= 0) {
    throw IoError("bad raster size in " + path);
  }
  return h;
}

}  // namespace

ImageBuffer read_pnm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + path);
  }
  const PnmHeader h = read_header(in, path);
  if ((h.magic != "P5" && h.magic != "P6") || h.maxval != 255) {
    throw IoError("unsupported format in " + path +
                  " (want binary P5/P6, maxval 255)");
  }
  ImageBuffer img =
      ImageBuffer::zeros(h.width, h.height, h.magic == "P6" ? 3 : 1);
  in.read(reinterpret_cast<char*>(img.data.data()),
          static_cast<std::streamsize>(img.data.size()));
  if (in.gcount() != static_cast<std::streamsize>(img.data.size())) {
    throw IoError("truncated raster in " + path);
  }
  return img;
}

void write_pgm(const std::string& path, const ImageBuffer& gray) {
  if (gray.channels != 1) {
    throw SizeMismatch("write_pgm expects a 1-channel image");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot write " + path);
  }
  out << "P5\n" << gray.width << " " << gray.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(gray.data.data()),
            static_cast<std::streamsize>(gray.data.size()));
  if (!out) {
    throw IoError("short write to " + path);
  }
}

void write_ppm(const std::string& path, const ImageBuffer& rgb) {
  if (rgb.channels != 3) {
    throw SizeMismatch("write_ppm expects a 3-channel image");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot write " + path);
  }
  out << "P6\n" << rgb.width << " " << rgb.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(rgb.data.data()),
            static_cast<std::streamsize>(rgb.data.size()));
  if (!out) {
    throw IoError("short write to " + path);
  }
}

void write_mask_pgm(const std::string& path, const PixelMask& mask) {
  ImageBuffer img = ImageBuffer::zeros(mask.width, mask.height, 1);
  for (int y = 0; y < mask.height; ++y) {
    for (int x = 0; x < mask.width; ++x) {
      if (mask.test(x, y)) {
        img.at(x, y) = 255;
      }
    }
  }
  write_pgm(path, img);
}

PixelMask read_mask_pgm(const std::string& path) {
  const ImageBuffer img = read_pnm(path);
  if (img.channels != 1) {
    throw IoError("mask file must be grayscale: " + path);
  }
  PixelMask mask = PixelMask::zeros(img.width, img.height);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      if (img.at(x, y) != 0) {
        mask.set(x, y, true);
      }
    }
  }
  return mask;
}

void write_pgm16(const std::string& path, const std::vector<std::uint16_t>& v,
                 int width, int height) {
  if (v.size() != static_cast<std::size_t>(width) * height) {
    throw SizeMismatch("write_pgm16 buffer size mismatch");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot write " + path);
  }
  out << "P5\n" << width << " " << height << "\n65535\n";
  std::vector<std::uint8_t> raw(v.size() * 2);
  for (std::size_t i = 0; i < v.size(); ++i) {
    raw[2 * i] = static_cast<std::uint8_t>(v[i] >> 8);
    raw[2 * i + 1] = static_cast<std::uint8_t>(v[i] & 0xff);
  }
  out.write(reinterpret_cast<const char*>(raw.data()),
            static_cast<std::streamsize>(raw.size()));
  if (!out) {
    throw IoError("short write to " + path);
  }
}

std::vector<std::uint16_t> read_pgm16(const std::string& path, int* width,
                                      int* height) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + path);
  }
  const PnmHeader h = read_header(in, path);
  if (h.magic != "P5" || h.maxval != 65535) {
    throw IoError("unsupported format in " + path + " (want P5 maxval 65535)");
  }
  std::vector<std::uint8_t> raw(static_cast<std::size_t>(h.width) * h.height * 2);
  in.read(reinterpret_cast<char*>(raw.data()),
          static_cast<std::streamsize>(raw.size()));
  if (in.gcount() != static_cast<std::streamsize>(raw.size())) {
    throw IoError("truncated raster in " + path);
  }
  std::vector<std::uint16_t> v(static_cast<std::size_t>(h.width) * h.height);
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = static_cast<std::uint16_t>((raw[2 * i] << 8) | raw[2 * i + 1]);
  }
  *width = h.width;
  *height = h.height;
  return v;
}

}  // namespace vimod
