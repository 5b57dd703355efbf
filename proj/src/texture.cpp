#include "vimod/texture.hpp"

#include <cmath>

namespace vimod {

std::uint64_t mix64(std::uint64_t x) {
  // splitmix64 finalizer
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t v) {
  return mix64(seed ^ (v + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2)));
}

double lattice_unit(std::uint64_t seed, std::int64_t ix, std::int64_t iy) {
  std::uint64_t h = hash_combine(seed, static_cast<std::uint64_t>(ix));
  h = hash_combine(h, static_cast<std::uint64_t>(iy));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

namespace {
inline double smoothstep(double t) { return t * t * (3.0 - 2.0 * t); }
}  // namespace

double value_noise(double x, double y, std::uint64_t seed) {
  const double fx = std::floor(x);
  const double fy = std::floor(y);
  const std::int64_t ix = static_cast<std::int64_t>(fx);
  const std::int64_t iy = static_cast<std::int64_t>(fy);
  const double tx = smoothstep(x - fx);
  const double ty = smoothstep(y - fy);
  const double v00 = lattice_unit(seed, ix, iy);
  const double v10 = lattice_unit(seed, ix + 1, iy);
  const double v01 = lattice_unit(seed, ix, iy + 1);
  const double v11 = lattice_unit(seed, ix + 1, iy + 1);
  return (1.0 - ty) * ((1.0 - tx) * v00 + tx * v10) +
         ty * ((1.0 - tx) * v01 + tx * v11);
}

double fractal_noise(double x, double y, int octaves, std::uint64_t seed) {
  double sum = 0.0;
  double amp = 1.0;
  double norm = 0.0;
  double fx = x;
  double fy = y;
  for (int o = 0; o < octaves; ++o) {
    sum += amp * value_noise(fx, fy, hash_combine(seed, 0x6f63740000ull + o));
    norm += amp;
    amp *= 0.5;
    fx *= 2.0;
    fy *= 2.0;
  }
  return norm > 0.0 ? sum / norm : 0.0;
}

double hash_normal(std::uint64_t seed, std::uint64_t n) {
  const std::uint64_t h1 = hash_combine(seed, 2 * n);
  const std::uint64_t h2 = hash_combine(seed, 2 * n + 1);
  // u1 in (0, 1], u2 in [0, 1)
  const double u1 =
      (static_cast<double>(h1 >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = static_cast<double>(h2 >> 11) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

}  // namespace vimod
