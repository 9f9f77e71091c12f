// Seeded, reproducible random fields. The generator is hand-rolled
// (splitmix64 + Box-Muller) so identical seeds give identical fields on
// every platform.
#pragma once

#include <cmath>
#include <cstdint>

#include "anelab/grid.hpp"
#include "anelab/spectral.hpp"

namespace anelab {

struct Rng {
  std::uint64_t state;

  explicit Rng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next_u64() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in (0,1)
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  double gaussian() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * pi * u2);
  }
};

// White noise restricted to modes with |k_a| <= max_mode on every axis,
// normalized to the requested sup amplitude (zero mean).
inline ScalarField random_band_limited(const GridPtr& grid, int max_mode,
                                       std::uint64_t seed, double amplitude = 1.0) {
  Rng rng(seed);
  ScalarField noise(grid);
  for (double& x : noise.v) x = rng.gaussian();
  SpectralField F = to_spectral(noise);
  const Grid& g = *grid;
  detail::for_each_spec(g, [&](std::size_t p, const std::array<int, 3>& idx) {
    bool keep = true;
    for (int a = 0; a < g.dim(); ++a)
      if (std::abs(g.mode_number(a, idx[a])) > max_mode) keep = false;
    bool zero_mode = true;
    for (int a = 0; a < g.dim(); ++a)
      if (idx[a] != 0) zero_mode = false;
    if (!keep || zero_mode) F.c[p] = 0.0;
  });
  ScalarField out = to_physical(F);
  const double s = sup_norm(out);
  if (s > 0.0)
    for (double& x : out.v) x *= amplitude / s;
  return out;
}

inline VectorField random_band_limited_vector(const GridPtr& grid, int max_mode,
                                              std::uint64_t seed, double amplitude = 1.0) {
  VectorField out(grid);
  for (int a = 0; a < grid->dim(); ++a)
    out[a] = random_band_limited(grid, max_mode, seed + 1000003ULL * (a + 1), amplitude);
  return out;
}

}  // namespace anelab
