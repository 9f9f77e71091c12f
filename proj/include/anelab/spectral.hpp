// Spectral differential operators, dealiasing, quadrature and norms.
// Derivatives are Fourier multipliers with the Nyquist coefficient zeroed;
// every integral uses the uniform cell-volume quadrature weight.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <utility>

#include "anelab/grid.hpp"

namespace anelab {

namespace detail {

template <typename F>
void for_each_spec(const Grid& g, F&& f) {
  std::array<int, 3> ns{1, 1, 1};
  for (int a = 0; a < g.dim(); ++a) ns[a] = g.spec_size(a);
  std::size_t p = 0;
  std::array<int, 3> idx{0, 0, 0};
  for (idx[0] = 0; idx[0] < ns[0]; ++idx[0])
    for (idx[1] = 0; idx[1] < ns[1]; ++idx[1])
      for (idx[2] = 0; idx[2] < ns[2]; ++idx[2], ++p) f(p, idx);
}

// Derivative wavenumber on one axis; the Nyquist mode carries no derivative.
inline double deriv_wavenumber(const Grid& g, int axis, int index) {
  return g.is_nyquist(axis, index) ? 0.0 : g.wavenumber(axis, index);
}

}  // namespace detail

inline SpectralField to_spectral(const ScalarField& f) {
  SpectralField out(f.grid);
  f.grid->fft_forward(f.v.data(), out.c.data());
  return out;
}

inline ScalarField to_physical(const SpectralField& f) {
  ScalarField out(f.grid);
  f.grid->fft_inverse(f.c.data(), out.v.data());
  return out;
}

// Fourier coefficient of integer mode m (f = Σ c_m e^{i m·2πx/L}).
inline std::complex<double> spectral_coefficient(const SpectralField& f,
                                                 std::array<int, 3> mode) {
  const Grid& g = *f.grid;
  std::array<int, 3> idx{0, 0, 0};
  bool conj = false;
  if (mode[g.dim() - 1] < 0) {
    for (int a = 0; a < g.dim(); ++a) mode[a] = -mode[a];
    conj = true;
  }
  for (int a = 0; a < g.dim(); ++a)
    idx[a] = mode[a] >= 0 ? mode[a] : mode[a] + g.size(a);
  std::complex<double> c =
      f.c[g.spec_index(idx)] / static_cast<double>(g.total_points());
  return conj ? std::conj(c) : c;
}

inline ScalarField partial_derivative(const ScalarField& f, int axis) {
  SpectralField F = to_spectral(f);
  const Grid& g = *f.grid;
  detail::for_each_spec(g, [&](std::size_t p, const std::array<int, 3>& idx) {
    F.c[p] *= std::complex<double>(0.0, detail::deriv_wavenumber(g, axis, idx[axis]));
  });
  return to_physical(F);
}

inline VectorField gradient(const ScalarField& f) {
  SpectralField F = to_spectral(f);
  const Grid& g = *f.grid;
  VectorField out(f.grid);
  SpectralField tmp(f.grid);
  for (int a = 0; a < g.dim(); ++a) {
    detail::for_each_spec(g, [&](std::size_t p, const std::array<int, 3>& idx) {
      tmp.c[p] = F.c[p] * std::complex<double>(0.0, detail::deriv_wavenumber(g, a, idx[a]));
    });
    out[a] = to_physical(tmp);
  }
  return out;
}

inline ScalarField divergence(const VectorField& v) {
  const Grid& g = *v.grid;
  SpectralField acc(v.grid);
  for (int a = 0; a < g.dim(); ++a) {
    SpectralField F = to_spectral(v[a]);
    detail::for_each_spec(g, [&](std::size_t p, const std::array<int, 3>& idx) {
      acc.c[p] += F.c[p] * std::complex<double>(0.0, detail::deriv_wavenumber(g, a, idx[a]));
    });
  }
  return to_physical(acc);
}

// grad_tensor(u).at(i,j) = ∂_j u_i
inline TensorField gradient_tensor(const VectorField& u) {
  const Grid& g = *u.grid;
  TensorField out(u.grid);
  for (int i = 0; i < g.dim(); ++i) {
    SpectralField F = to_spectral(u[i]);
    SpectralField tmp(u.grid);
    for (int j = 0; j < g.dim(); ++j) {
      detail::for_each_spec(g, [&](std::size_t p, const std::array<int, 3>& idx) {
        tmp.c[p] = F.c[p] * std::complex<double>(0.0, detail::deriv_wavenumber(g, j, idx[j]));
      });
      out.at(i, j) = to_physical(tmp);
    }
  }
  return out;
}

// Symmetric and antisymmetric parts of the velocity gradient.
inline std::pair<TensorField, TensorField> sym_antisym_grad(const VectorField& u) {
  TensorField grad = gradient_tensor(u);
  const int d = u.grid->dim();
  TensorField sym(u.grid), anti(u.grid);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (std::size_t p = 0; p < u.grid->total_points(); ++p) {
        const double gij = grad.at(i, j)[p];
        const double gji = grad.at(j, i)[p];
        sym.at(i, j)[p] = 0.5 * (gij + gji);
        anti.at(i, j)[p] = 0.5 * (gij - gji);
      }
  return {std::move(sym), std::move(anti)};
}

inline ScalarField laplacian(const ScalarField& f) {
  SpectralField F = to_spectral(f);
  const Grid& g = *f.grid;
  detail::for_each_spec(g, [&](std::size_t p, const std::array<int, 3>& idx) {
    double k2 = 0.0;
    for (int a = 0; a < g.dim(); ++a) {
      const double k = detail::deriv_wavenumber(g, a, idx[a]);
      k2 += k * k;
    }
    F.c[p] *= -k2;
  });
  return to_physical(F);
}

// Solves Δφ = f with zero-mean gauge; modes the derivative stencil cannot
// see (k = 0 and Nyquist) are set to zero.
inline ScalarField inverse_laplacian(const ScalarField& f) {
  SpectralField F = to_spectral(f);
  const Grid& g = *f.grid;
  detail::for_each_spec(g, [&](std::size_t p, const std::array<int, 3>& idx) {
    double k2 = 0.0;
    for (int a = 0; a < g.dim(); ++a) {
      const double k = detail::deriv_wavenumber(g, a, idx[a]);
      k2 += k * k;
    }
    F.c[p] = k2 > 0.0 ? F.c[p] / (-k2) : 0.0;
  });
  return to_physical(F);
}

namespace detail {

inline void dealias_spectrum(SpectralField& F) {
  const Grid& g = *F.grid;
  for_each_spec(g, [&](std::size_t p, const std::array<int, 3>& idx) {
    for (int a = 0; a < g.dim(); ++a) {
      if (3 * std::abs(g.mode_number(a, idx[a])) > g.size(a)) {
        F.c[p] = 0.0;
        return;
      }
    }
  });
}

}  // namespace detail

// 2/3-rule truncation: kills every mode with |k_a| > n_a/3 on any axis.
inline ScalarField dealias(const ScalarField& f) {
  SpectralField F = to_spectral(f);
  detail::dealias_spectrum(F);
  return to_physical(F);
}

inline VectorField dealias(const VectorField& v) {
  VectorField out(v.grid);
  for (int a = 0; a < v.grid->dim(); ++a) out[a] = dealias(v[a]);
  return out;
}

inline TensorField dealias(const TensorField& t) {
  TensorField out(t.grid);
  for (int i = 0; i < t.grid->dim() * t.grid->dim(); ++i) out.comp[i] = dealias(t.comp[i]);
  return out;
}

// ---------------------------------------------------------------------------
// Quadrature, norms, pointwise helpers

inline double integral(const ScalarField& f) {
  double s = 0.0;
  for (double x : f.v) s += x;
  return s * f.grid->cell_volume();
}

inline double mean(const ScalarField& f) {
  double s = 0.0;
  for (double x : f.v) s += x;
  return s / static_cast<double>(f.grid->total_points());
}

inline double sup_norm(const ScalarField& f) {
  double m = 0.0;
  for (double x : f.v) m = std::max(m, std::abs(x));
  return m;
}

inline double sup_norm(const VectorField& v) {
  double m = 0.0;
  for (std::size_t p = 0; p < v.grid->total_points(); ++p) {
    double s = 0.0;
    for (int a = 0; a < v.grid->dim(); ++a) s += v[a][p] * v[a][p];
    m = std::max(m, s);
  }
  return std::sqrt(m);
}

inline double l2_norm(const ScalarField& f) {
  double s = 0.0;
  for (double x : f.v) s += x * x;
  return std::sqrt(s * f.grid->cell_volume());
}

inline double l2_norm(const VectorField& v) {
  double s = 0.0;
  for (int a = 0; a < v.grid->dim(); ++a)
    for (double x : v[a].v) s += x * x;
  return std::sqrt(s * v.grid->cell_volume());
}

inline double inner(const ScalarField& f, const ScalarField& g) {
  double s = 0.0;
  for (std::size_t p = 0; p < f.v.size(); ++p) s += f.v[p] * g.v[p];
  return s * f.grid->cell_volume();
}

// L² norm evaluated from the half-spectrum (Parseval).
inline double spectral_l2_norm(const ScalarField& f) {
  SpectralField F = to_spectral(f);
  const Grid& g = *f.grid;
  double s = 0.0;
  detail::for_each_spec(g, [&](std::size_t p, const std::array<int, 3>& idx) {
    s += g.spec_multiplicity(idx[g.dim() - 1]) * std::norm(F.c[p]);
  });
  return std::sqrt(s * g.cell_volume() / static_cast<double>(g.total_points()));
}

template <typename F>
ScalarField transform(const ScalarField& f, F&& fn) {
  ScalarField out(f.grid);
  for (std::size_t p = 0; p < f.v.size(); ++p) out.v[p] = fn(f.v[p]);
  return out;
}

inline ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  ScalarField out(a.grid);
  for (std::size_t p = 0; p < a.v.size(); ++p) out.v[p] = a.v[p] + b.v[p];
  return out;
}

inline ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  ScalarField out(a.grid);
  for (std::size_t p = 0; p < a.v.size(); ++p) out.v[p] = a.v[p] - b.v[p];
  return out;
}

inline ScalarField operator*(double s, const ScalarField& a) {
  ScalarField out(a.grid);
  for (std::size_t p = 0; p < a.v.size(); ++p) out.v[p] = s * a.v[p];
  return out;
}

inline ScalarField multiply(const ScalarField& a, const ScalarField& b) {
  ScalarField out(a.grid);
  for (std::size_t p = 0; p < a.v.size(); ++p) out.v[p] = a.v[p] * b.v[p];
  return out;
}

inline ScalarField divide(const ScalarField& a, const ScalarField& b) {
  ScalarField out(a.grid);
  for (std::size_t p = 0; p < a.v.size(); ++p) out.v[p] = a.v[p] / b.v[p];
  return out;
}

inline VectorField operator+(const VectorField& a, const VectorField& b) {
  VectorField out(a.grid);
  for (int c = 0; c < a.grid->dim(); ++c) out[c] = a[c] + b[c];
  return out;
}

inline VectorField operator-(const VectorField& a, const VectorField& b) {
  VectorField out(a.grid);
  for (int c = 0; c < a.grid->dim(); ++c) out[c] = a[c] - b[c];
  return out;
}

inline VectorField operator*(double s, const VectorField& a) {
  VectorField out(a.grid);
  for (int c = 0; c < a.grid->dim(); ++c) out[c] = s * a[c];
  return out;
}

inline VectorField multiply(const ScalarField& s, const VectorField& a) {
  VectorField out(a.grid);
  for (int c = 0; c < a.grid->dim(); ++c) out[c] = multiply(s, a[c]);
  return out;
}

inline VectorField divide(const VectorField& a, const ScalarField& s) {
  VectorField out(a.grid);
  for (int c = 0; c < a.grid->dim(); ++c) out[c] = divide(a[c], s);
  return out;
}

// Circular shift by whole grid cells (periodic translation).
inline ScalarField circular_shift(const ScalarField& f, const std::array<int, 3>& offs) {
  const Grid& g = *f.grid;
  ScalarField out(f.grid);
  std::array<int, 3> idx{0, 0, 0};
  for (std::size_t p = 0; p < g.total_points(); ++p) {
    std::size_t rest = p;
    for (int a = g.dim() - 1; a >= 0; --a) {
      idx[a] = static_cast<int>(rest % g.size(a));
      rest /= g.size(a);
    }
    std::array<int, 3> src = idx;
    for (int a = 0; a < g.dim(); ++a)
      src[a] = ((idx[a] - offs[a]) % g.size(a) + g.size(a)) % g.size(a);
    out.v[p] = f.v[g.real_index(src)];
  }
  return out;
}

inline bool all_finite(const ScalarField& f) {
  for (double x : f.v)
    if (!std::isfinite(x)) return false;
  return true;
}

inline bool all_finite(const VectorField& v) {
  for (int a = 0; a < v.grid->dim(); ++a)
    if (!all_finite(v[a])) return false;
  return true;
}

}  // namespace anelab
