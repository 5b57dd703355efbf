#include <doctest.h>

#include <fstream>
#include <random>

#include "oracles.hpp"
#include "vimod/errors.hpp"
#include "vimod/pnm.hpp"

using namespace vimod;
using testutil::TempDir;

TEST_SUITE("pnm") {

TEST_CASE("pgm round trip") {
  TempDir tmp("pnm");
  ImageBuffer g = ImageBuffer::zeros(33, 21, 1);
  std::mt19937 rng(3);
  for (auto& b : g.data) {
    b = std::uint8_t(rng() & 0xff);
  }
  write_pgm(tmp.file("a.pgm"), g);
  const ImageBuffer back = read_pnm(tmp.file("a.pgm"));
  CHECK(back.width == 33);
  CHECK(back.height == 21);
  CHECK(back.channels == 1);
  CHECK(back.data == g.data);
}

TEST_CASE("ppm round trip") {
  TempDir tmp("pnm");
  ImageBuffer rgb = ImageBuffer::zeros(17, 9, 3);
  std::mt19937 rng(4);
  for (auto& b : rgb.data) {
    b = std::uint8_t(rng() & 0xff);
  }
  write_ppm(tmp.file("a.ppm"), rgb);
  const ImageBuffer back = read_pnm(tmp.file("a.ppm"));
  CHECK(back.channels == 3);
  CHECK(back.data == rgb.data);
}

TEST_CASE("mask round trip uses 0 and 255") {
  TempDir tmp("pnm");
  PixelMask m = PixelMask::zeros(70, 5);
  m.set(0, 0, true);
  m.set(69, 4, true);
  m.set(64, 2, true);
  write_mask_pgm(tmp.file("m.pgm"), m);
  const ImageBuffer raw = read_pnm(tmp.file("m.pgm"));
  CHECK(raw.at(0, 0) == 255);
  CHECK(raw.at(1, 0) == 0);
  const PixelMask back = read_mask_pgm(tmp.file("m.pgm"));
  CHECK(back == m);
}

TEST_CASE("any nonzero gray reads back as a set mask bit") {
  TempDir tmp("pnm");
  ImageBuffer g = ImageBuffer::zeros(4, 1, 1);
  g.at(1, 0) = 1;
  g.at(3, 0) = 128;
  write_pgm(tmp.file("g.pgm"), g);
  const PixelMask m = read_mask_pgm(tmp.file("g.pgm"));
  CHECK(!m.test(0, 0));
  CHECK(m.test(1, 0));
  CHECK(!m.test(2, 0));
  CHECK(m.test(3, 0));
}

TEST_CASE("16-bit maps round trip big-endian") {
  TempDir tmp("pnm");
  std::vector<std::uint16_t> v = {0, 1, 256, 65535, 12345, 400};
  write_pgm16(tmp.file("p.pgm"), v, 3, 2);
  // Check the byte order on disk: first sample after the header must be
  // big-endian.
  std::ifstream in(tmp.file("p.pgm"), std::ios::binary);
  std::string all((std::istreambuf_iterator<char>(in)),
                  std::istreambuf_iterator<char>());
  const std::size_t data_at = all.size() - 2 * v.size();
  CHECK(std::uint8_t(all[data_at + 4]) == 1);  // 256 -> 0x01 0x00
  CHECK(std::uint8_t(all[data_at + 5]) == 0);
  int w = 0;
  int h = 0;
  const std::vector<std::uint16_t> back = read_pgm16(tmp.file("p.pgm"), &w, &h);
  CHECK(w == 3);
  CHECK(h == 2);
  CHECK(back == v);
}

TEST_CASE("missing files and bad magic raise io errors") {
  TempDir tmp("pnm");
  CHECK_THROWS_AS(read_pnm(tmp.file("nope.pgm")), IoError);
  std::ofstream out(tmp.file("bad.pgm"), std::ios::binary);
  out << "P3\n1 1\n255\n0\n";
  out.close();
  CHECK_THROWS_AS(read_pnm(tmp.file("bad.pgm")), IoError);
}

}  // TEST_SUITE
