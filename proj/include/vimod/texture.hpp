#pragma once

#include <cstdint>

namespace vimod {

// Stateless mixing used wherever reproducible pseudo-randomness is needed
// without an RNG stream (textures, per-frame sub-seeds).
std::uint64_t mix64(std::uint64_t x);
std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t v);

// Uniform value in [0, 1) derived from (seed, ix, iy).
double lattice_unit(std::uint64_t seed, std::int64_t ix, std::int64_t iy);

// Smoothly interpolated lattice noise in [0, 1). One octave; x and y are in
// lattice units.
double value_noise(double x, double y, std::uint64_t seed);

// Sum of `octaves` value-noise layers with halving amplitude and doubling
// frequency, rescaled back into [0, 1).
double fractal_noise(double x, double y, int octaves, std::uint64_t seed);

// Standard normal sample derived from (seed, n) via Box-Muller. Stateless and
// order-free; successive n values give independent draws.
double hash_normal(std::uint64_t seed, std::uint64_t n);

}  // namespace vimod
