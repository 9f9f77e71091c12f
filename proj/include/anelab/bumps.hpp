// Compactly supported template functions: a polynomial bump for potentials
// and initial data, and a smoothstep plateau used by the spatial/frequency
// cutoffs and the essential/residual density mask.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>

#include "anelab/grid.hpp"

namespace anelab {

// Cubic smoothstep, 0 at t<=0, 1 at t>=1, C^1 across the ramp.
inline double smoothstep(double t) {
  t = std::clamp(t, 0.0, 1.0);
  return t * t * (3.0 - 2.0 * t);
}

// 1 on [0, r_inner], smoothstep ramp down to 0 on [r_inner, r_outer].
inline double plateau_profile(double r, double r_inner, double r_outer) {
  if (r <= r_inner) return 1.0;
  if (r >= r_outer) return 0.0;
  return 1.0 - smoothstep((r - r_inner) / (r_outer - r_inner));
}

inline std::array<double, 3> box_center(const GridPtr& grid) {
  std::array<double, 3> c{0.0, 0.0, 0.0};
  for (int a = 0; a < grid->dim(); ++a) c[a] = 0.5 * grid->length(a);
  return c;
}

inline double distance_to(const GridPtr& grid, const std::array<double, 3>& x,
                          const std::array<double, 3>& center) {
  double r2 = 0.0;
  for (int a = 0; a < grid->dim(); ++a) {
    const double d = x[a] - center[a];
    r2 += d * d;
  }
  return std::sqrt(r2);
}

// amplitude · (1 − (r/R)²)^power inside radius R, zero outside. power
// controls the smoothness at the support edge (C^{power−1}), so spectral
// derivatives of functions built from it converge fast; power 8 puts the
// truncation error well below the background residual tolerance on 64 points.
inline ScalarField poly_bump(const GridPtr& grid, std::array<double, 3> center,
                             double radius, double amplitude, int power = 8) {
  return sample(grid, [&](const std::array<double, 3>& x) {
    const double r = distance_to(grid, x, center);
    if (r >= radius) return 0.0;
    const double s = 1.0 - (r / radius) * (r / radius);
    return amplitude * std::pow(s, power);
  });
}

inline ScalarField poly_bump_centered(const GridPtr& grid, double radius,
                                      double amplitude, int power = 8) {
  return poly_bump(grid, box_center(grid), radius, amplitude, power);
}

// Radial plateau mask: 1 inside r_inner, smoothstep down, 0 beyond r_outer.
inline ScalarField plateau_bump(const GridPtr& grid, std::array<double, 3> center,
                                double r_inner, double r_outer) {
  return sample(grid, [&](const std::array<double, 3>& x) {
    return plateau_profile(distance_to(grid, x, center), r_inner, r_outer);
  });
}

}  // namespace anelab
