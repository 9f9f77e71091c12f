// Stationary density profile b solving ∇p(b) = b∇G, i.e. P'(b) = G + C.
// The inversion is closed-form because the pressure is a pure power law;
// the constant C is fixed either by the far-field density or by the grid
// mean of b.
#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include "anelab/grid.hpp"
#include "anelab/params.hpp"
#include "anelab/spectral.hpp"

namespace anelab {

struct Normalization {
  enum class Mode { mean, far_field };
  Mode mode = Mode::mean;
  double rho_bar = 1.0;

  static Normalization mean(double rho_bar) { return {Mode::mean, rho_bar}; }
  static Normalization far_field(double rho_bar) { return {Mode::far_field, rho_bar}; }
};

struct BackgroundState {
  GridPtr grid;
  ScalarField b;
  ScalarField G;
  VectorField grad_log_b;
  VectorField Wbar;  // 2√(κ(1−κ)) μ ∇log b, the limit drift velocity
  double rho_bar = 1.0;
  double b_min = 0.0;
  double b_max = 0.0;
  double profile_constant = 0.0;  // C in P'(b) = G + C
  double residual_rel = 0.0;      // observed ‖∇p(b) − b∇G‖_sup / ‖b∇G‖_sup
};

namespace detail {

inline ScalarField profile_from_constant(const ScalarField& G, const PhysParams& par,
                                         double C) {
  const double expo = 1.0 / (par.gamma - 1.0);
  const double scale = (par.gamma - 1.0) / (par.a * par.gamma);
  ScalarField b(G.grid);
  for (std::size_t p = 0; p < G.v.size(); ++p) {
    const double base = scale * (G.v[p] + C);
    if (!(base > 0.0)) throw std::runtime_error("background profile non-positive");
    b.v[p] = std::pow(base, expo);
  }
  return b;
}

}  // namespace detail

inline BackgroundState solve_background(const ScalarField& G, const PhysParams& par,
                                        const Normalization& norm,
                                        double tol_background = 1e-6) {
  if (!all_finite(G)) throw std::invalid_argument("potential G has non-finite values");
  if (!(norm.rho_bar > 0.0)) throw std::invalid_argument("reference density must be positive");

  double C = 0.0;
  if (norm.mode == Normalization::Mode::far_field) {
    C = par.dpotential(norm.rho_bar);
  } else {
    // mean(b(C)) is strictly increasing in C; bracket from min/max of G.
    double g_min = G.v[0], g_max = G.v[0];
    for (double x : G.v) {
      g_min = std::min(g_min, x);
      g_max = std::max(g_max, x);
    }
    const double c_ref = par.dpotential(norm.rho_bar);
    double lo = c_ref - g_max;
    double hi = c_ref - g_min;
    const double pos_floor = -g_min + 1e-12 * (1.0 + std::abs(g_min));
    lo = std::max(lo, pos_floor);
    auto mean_b = [&](double c) { return mean(detail::profile_from_constant(G, par, c)); };
    if (mean_b(lo) > norm.rho_bar || mean_b(hi) < norm.rho_bar)
      throw std::runtime_error("background mean normalization does not bracket");
    for (int it = 0; it < 200 && (hi - lo) > 1e-13 * (1.0 + std::abs(hi)); ++it) {
      const double mid = 0.5 * (lo + hi);
      (mean_b(mid) < norm.rho_bar ? lo : hi) = mid;
    }
    C = 0.5 * (lo + hi);
  }

  BackgroundState bg;
  bg.grid = G.grid;
  bg.G = G;
  bg.rho_bar = norm.rho_bar;
  bg.profile_constant = C;
  bg.b = detail::profile_from_constant(G, par, C);
  bg.b_min = bg.b.v[0];
  bg.b_max = bg.b.v[0];
  for (double x : bg.b.v) {
    bg.b_min = std::min(bg.b_min, x);
    bg.b_max = std::max(bg.b_max, x);
  }

  const ScalarField log_b = transform(bg.b, [](double x) { return std::log(x); });
  bg.grad_log_b = gradient(log_b);
  bg.Wbar = (2.0 * std::sqrt(par.kappa * (1.0 - par.kappa)) * par.mu) * bg.grad_log_b;

  // Residual of the stationarity relation, spectral differentiation only.
  const ScalarField p_of_b = transform(bg.b, [&](double x) { return par.pressure(x); });
  const VectorField grad_p = gradient(p_of_b);
  const VectorField grad_G = gradient(G);
  double res = 0.0, scale = 0.0;
  for (int a = 0; a < bg.grid->dim(); ++a) {
    for (std::size_t p = 0; p < bg.b.v.size(); ++p) {
      const double rhs = bg.b.v[p] * grad_G[a].v[p];
      res = std::max(res, std::abs(grad_p[a].v[p] - rhs));
      scale = std::max(scale, std::abs(rhs));
    }
  }
  double min_h = bg.grid->spacing(0);
  for (int a = 1; a < bg.grid->dim(); ++a) min_h = std::min(min_h, bg.grid->spacing(a));
  const double floor = 1e-10 * sup_norm(p_of_b) / min_h;
  bg.residual_rel = res / (scale + floor);
  if (res > tol_background * scale + floor)
    throw std::runtime_error("background stationarity residual exceeds tolerance");
  return bg;
}

// Constant-in-time offset fields of the limit system: W̄ and the V-offset
// 2κμ∇log b (V is later assembled as U + offset).
inline std::pair<VectorField, VectorField> limit_fields(const BackgroundState& bg,
                                                        const PhysParams& par) {
  VectorField wbar = (2.0 * std::sqrt(par.kappa * (1.0 - par.kappa)) * par.mu) * bg.grad_log_b;
  VectorField voffset = (2.0 * par.kappa * par.mu) * bg.grad_log_b;
  return {std::move(wbar), std::move(voffset)};
}

}  // namespace anelab
