// Weighted Helmholtz decomposition z = P_b[z] + b∇Φ with div P_b[z] = 0.
// Φ solves div(b∇Φ) = div z on the torus (zero-mean gauge), via a fixed
// point iteration preconditioned by the constant-coefficient inverse
// Laplacian. A dense solve backs it up in 1D/2D when the oscillation of b
// defeats the contraction.
#pragma once

#include <lapacke.h>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "anelab/grid.hpp"
#include "anelab/spectral.hpp"

namespace anelab {

struct HelmholtzResult {
  VectorField solenoidal;     // P_b[z]
  VectorField gradient_part;  // Q_b[z] = b∇Φ
  ScalarField potential;      // Φ, zero grid mean
  int iterations = 0;
  double contraction = 0.0;  // observed ratio of successive corrections
  bool used_dense_fallback = false;
};

namespace detail {

inline ScalarField weighted_div_grad(const ScalarField& phi, const ScalarField& w) {
  return divergence(multiply(w, gradient(phi)));
}

// Dense solve of div(b∇Φ) = rhs with the zero-mean gauge pinned by a rank-one
// shift (the operator annihilates constants and its range is mean-free).
inline ScalarField dense_weighted_poisson(const ScalarField& rhs, const ScalarField& b) {
  const GridPtr grid = rhs.grid;
  const std::size_t n = grid->total_points();
  if (grid->dim() > 2 || n > 8192)
    throw std::runtime_error("helmholtz dense fallback limited to 1D/2D grids (<= 8192 points)");
  std::vector<double> A(n * n, 0.0);
  ScalarField e(grid);
  for (std::size_t j = 0; j < n; ++j) {
    e.v.assign(n, 0.0);
    e.v[j] = 1.0;
    ScalarField col = weighted_div_grad(e, b);
    for (std::size_t i = 0; i < n; ++i) A[i * n + j] = col.v[i];
  }
  const double shift = mean(b);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) A[i * n + j] += shift * inv_n;
  std::vector<double> x = rhs.v;
  std::vector<lapack_int> ipiv(n);
  const lapack_int info =
      LAPACKE_dgesv(LAPACK_ROW_MAJOR, static_cast<lapack_int>(n), 1, A.data(),
                    static_cast<lapack_int>(n), ipiv.data(), x.data(), 1);
  if (info != 0) throw std::runtime_error("helmholtz dense fallback: dgesv failed");
  ScalarField phi(grid);
  phi.v = std::move(x);
  const double m = mean(phi);
  for (double& y : phi.v) y -= m;
  return phi;
}

}  // namespace detail

inline HelmholtzResult decompose(const VectorField& z, const ScalarField& b,
                                 int max_iter = 500) {
  require_same_grid(z.grid, b.grid);
  if (!all_finite(z)) throw std::invalid_argument("helmholtz input has non-finite values");
  double b_min = b.v[0];
  for (double x : b.v) b_min = std::min(b_min, x);
  if (!(b_min > 0.0)) throw std::invalid_argument("weight b must be positive");

  const double b_bar = mean(b);
  ScalarField b_prime = transform(b, [&](double x) { return x - b_bar; });
  const double osc = sup_norm(b_prime);

  const ScalarField rhs = divergence(z);
  const double tol = 1e-12 * sup_norm(z) + 1e-300;

  ScalarField phi = inverse_laplacian((1.0 / b_bar) * rhs);
  HelmholtzResult out;
  out.iterations = 1;
  bool converged = (osc == 0.0);
  double prev_diff = -1.0;
  while (!converged && out.iterations < max_iter) {
    ScalarField correction = detail::weighted_div_grad(phi, b_prime);
    ScalarField next = inverse_laplacian((1.0 / b_bar) * (rhs - correction));
    const double diff = sup_norm(next - phi);
    phi = std::move(next);
    ++out.iterations;
    if (prev_diff > 0.0 && diff > 0.0) out.contraction = diff / prev_diff;
    prev_diff = diff;
    converged = diff <= tol;
  }

  if (!converged) {
    if (b.grid->dim() <= 2 && b.grid->total_points() <= 8192) {
      phi = detail::dense_weighted_poisson(rhs, b);
      out.used_dense_fallback = true;
    } else {
      throw std::runtime_error(
          "helmholtz iteration did not converge after " + std::to_string(max_iter) +
          " iterations (observed contraction " + std::to_string(out.contraction) + ")");
    }
  }

  out.potential = std::move(phi);
  out.gradient_part = multiply(b, gradient(out.potential));
  out.solenoidal = z - out.gradient_part;
  return out;
}

// Convenience wrapper returning only the solenoidal part P_b[z].
inline VectorField project_b(const VectorField& z, const ScalarField& b,
                             int max_iter = 500) {
  return decompose(z, b, max_iter).solenoidal;
}

}  // namespace anelab
