// Periodic uniform grids and real-field storage for the pseudo-spectral
// laboratory. A Grid owns the FFTW plans for its resolution; fields are
// plain value types referencing their grid.
#pragma once

#include <fftw3.h>

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace anelab {

inline constexpr double pi = std::numbers::pi;

class Grid;
using GridPtr = std::shared_ptr<const Grid>;

namespace detail {

// FFTW plan creation is not thread-safe; executions through the new-array
// interface are.
inline std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwBuffer {
  void* p = nullptr;
  explicit FftwBuffer(std::size_t bytes) : p(fftw_malloc(bytes)) {
    if (!p) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(p); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  double* real() const { return static_cast<double*>(p); }
  fftw_complex* cplx() const { return static_cast<fftw_complex*>(p); }
};

}  // namespace detail

class Grid : public std::enable_shared_from_this<Grid> {
 public:
  ~Grid() {
    std::lock_guard<std::mutex> lock(detail::planner_mutex());
    if (plan_r2c_) fftw_destroy_plan(plan_r2c_);
    if (plan_c2r_) fftw_destroy_plan(plan_c2r_);
  }

  Grid(const Grid&) = delete;
  Grid& operator=(const Grid&) = delete;

  int dim() const { return dim_; }
  int size(int axis) const { return sizes_[axis]; }
  double length(int axis) const { return lengths_[axis]; }
  double spacing(int axis) const { return lengths_[axis] / sizes_[axis]; }
  std::size_t total_points() const { return n_real_; }
  std::size_t spectral_points() const { return n_spec_; }
  // Product of the per-axis spacings: the quadrature weight of every
  // integral on this grid (exact for periodic trigonometric polynomials).
  double cell_volume() const {
    double w = 1.0;
    for (int a = 0; a < dim_; ++a) w *= spacing(a);
    return w;
  }
  double box_volume() const {
    double w = 1.0;
    for (int a = 0; a < dim_; ++a) w *= lengths_[a];
    return w;
  }

  // Signed physical wavenumber of index i on axis a, in {0,±1,...,n/2}·2π/L.
  double wavenumber(int axis, int index) const { return wavenums_[axis][index]; }
  const std::vector<double>& wavenumbers(int axis) const { return wavenums_[axis]; }
  // Integer mode number (…,-1,0,1,…,n/2) of index i on axis a.
  int mode_number(int axis, int index) const {
    const int n = sizes_[axis];
    return index <= n / 2 ? index : index - n;
  }
  bool is_nyquist(int axis, int index) const {
    return std::abs(mode_number(axis, index)) == sizes_[axis] / 2;
  }
  double coordinate(int axis, int index) const { return index * spacing(axis); }

  // Shape helpers. Real data is stored row-major over sizes[0..dim-1];
  // spectral data keeps the last axis halved (Hermitian storage).
  int spec_size(int axis) const {
    return axis == dim_ - 1 ? sizes_[axis] / 2 + 1 : sizes_[axis];
  }
  std::size_t real_index(const std::array<int, 3>& idx) const {
    std::size_t r = 0;
    for (int a = 0; a < dim_; ++a) r = r * sizes_[a] + idx[a];
    return r;
  }
  std::size_t spec_index(const std::array<int, 3>& idx) const {
    std::size_t r = 0;
    for (int a = 0; a < dim_; ++a) r = r * spec_size(a) + idx[a];
    return r;
  }
  // Multiplicity of a half-spectrum coefficient when summing over the full
  // spectrum (conjugate pairs on the halved axis count twice).
  double spec_multiplicity(int last_axis_index) const {
    const int n = sizes_[dim_ - 1];
    return (last_axis_index == 0 || last_axis_index == n / 2) ? 1.0 : 2.0;
  }

  bool same_layout(const Grid& other) const {
    if (dim_ != other.dim_) return false;
    for (int a = 0; a < dim_; ++a)
      if (sizes_[a] != other.sizes_[a] || lengths_[a] != other.lengths_[a]) return false;
    return true;
  }

  // Unnormalized forward r2c transform.
  void fft_forward(const double* in, std::complex<double>* out) const {
    detail::FftwBuffer rbuf(sizeof(double) * n_real_);
    detail::FftwBuffer cbuf(sizeof(fftw_complex) * n_spec_);
    std::copy(in, in + n_real_, rbuf.real());
    fftw_execute_dft_r2c(plan_r2c_, rbuf.real(), cbuf.cplx());
    auto* c = reinterpret_cast<std::complex<double>*>(cbuf.cplx());
    std::copy(c, c + n_spec_, out);
  }

  // Inverse c2r transform, normalized so forward∘inverse is the identity.
  void fft_inverse(const std::complex<double>* in, double* out) const {
    detail::FftwBuffer cbuf(sizeof(fftw_complex) * n_spec_);
    detail::FftwBuffer rbuf(sizeof(double) * n_real_);
    auto* c = reinterpret_cast<std::complex<double>*>(cbuf.cplx());
    std::copy(in, in + n_spec_, c);
    fftw_execute_dft_c2r(plan_c2r_, cbuf.cplx(), rbuf.real());
    const double scale = 1.0 / static_cast<double>(n_real_);
    for (std::size_t i = 0; i < n_real_; ++i) out[i] = rbuf.real()[i] * scale;
  }

  friend GridPtr make_grid(int dim, const std::vector<int>& sizes,
                           const std::vector<double>& lengths);

 private:
  Grid(int dim, const std::array<int, 3>& sizes, const std::array<double, 3>& lengths)
      : dim_(dim), sizes_(sizes), lengths_(lengths) {
    n_real_ = 1;
    n_spec_ = 1;
    for (int a = 0; a < dim_; ++a) {
      n_real_ *= static_cast<std::size_t>(sizes_[a]);
      n_spec_ *= static_cast<std::size_t>(spec_size(a));
      std::vector<double> k(sizes_[a]);
      const double base = 2.0 * pi / lengths_[a];
      for (int i = 0; i < sizes_[a]; ++i)
        k[i] = base * (i <= sizes_[a] / 2 ? i : i - sizes_[a]);
      wavenums_[a] = std::move(k);
    }
    detail::FftwBuffer rbuf(sizeof(double) * n_real_);
    detail::FftwBuffer cbuf(sizeof(fftw_complex) * n_spec_);
    std::lock_guard<std::mutex> lock(detail::planner_mutex());
    plan_r2c_ = fftw_plan_dft_r2c(dim_, sizes_.data(), rbuf.real(), cbuf.cplx(),
                                  FFTW_ESTIMATE);
    plan_c2r_ = fftw_plan_dft_c2r(dim_, sizes_.data(), cbuf.cplx(), rbuf.real(),
                                  FFTW_ESTIMATE);
    if (!plan_r2c_ || !plan_c2r_) throw std::runtime_error("FFTW planning failed");
  }

  int dim_;
  std::array<int, 3> sizes_{1, 1, 1};
  std::array<double, 3> lengths_{1.0, 1.0, 1.0};
  std::size_t n_real_ = 0;
  std::size_t n_spec_ = 0;
  std::array<std::vector<double>, 3> wavenums_;
  fftw_plan plan_r2c_ = nullptr;
  fftw_plan plan_c2r_ = nullptr;
};

inline GridPtr make_grid(int dim, const std::vector<int>& sizes,
                         const std::vector<double>& lengths) {
  if (dim < 1 || dim > 3) throw std::invalid_argument("dim must be in {1,2,3}");
  if (static_cast<int>(sizes.size()) != dim)
    throw std::invalid_argument("sizes must have one entry per dimension");
  if (static_cast<int>(lengths.size()) != dim)
    throw std::invalid_argument("lengths must have one entry per dimension");
  std::array<int, 3> s{1, 1, 1};
  std::array<double, 3> l{1.0, 1.0, 1.0};
  for (int a = 0; a < dim; ++a) {
    if (sizes[a] % 2 != 0) throw std::invalid_argument("size must be even");
    if (sizes[a] < 8) throw std::invalid_argument("size must be >= 8");
    if (!(lengths[a] > 0.0)) throw std::invalid_argument("length must be positive");
    s[a] = sizes[a];
    l[a] = lengths[a];
  }
  return GridPtr(new Grid(dim, s, l));
}

inline GridPtr make_grid(int dim, const std::vector<int>& sizes) {
  return make_grid(dim, sizes, std::vector<double>(dim, 2.0 * pi));
}

// ---------------------------------------------------------------------------
// Field value types

struct ScalarField {
  GridPtr grid;
  std::vector<double> v;

  ScalarField() = default;
  explicit ScalarField(GridPtr g, double fill = 0.0)
      : grid(std::move(g)), v(grid->total_points(), fill) {}

  double& operator[](std::size_t i) { return v[i]; }
  double operator[](std::size_t i) const { return v[i]; }
  std::size_t size() const { return v.size(); }
};

struct SpectralField {
  GridPtr grid;
  std::vector<std::complex<double>> c;

  SpectralField() = default;
  explicit SpectralField(GridPtr g)
      : grid(std::move(g)), c(grid->spectral_points(), std::complex<double>(0.0)) {}
};

struct VectorField {
  GridPtr grid;
  std::vector<ScalarField> comp;

  VectorField() = default;
  explicit VectorField(GridPtr g) : grid(g) {
    comp.reserve(grid->dim());
    for (int a = 0; a < grid->dim(); ++a) comp.emplace_back(grid);
  }
  ScalarField& operator[](int a) { return comp[a]; }
  const ScalarField& operator[](int a) const { return comp[a]; }
};

struct TensorField {
  GridPtr grid;
  std::vector<ScalarField> comp;  // row-major dim×dim

  TensorField() = default;
  explicit TensorField(GridPtr g) : grid(g) {
    comp.reserve(grid->dim() * grid->dim());
    for (int a = 0; a < grid->dim() * grid->dim(); ++a) comp.emplace_back(grid);
  }
  ScalarField& at(int i, int j) { return comp[i * grid->dim() + j]; }
  const ScalarField& at(int i, int j) const { return comp[i * grid->dim() + j]; }
};

inline void require_same_grid(const GridPtr& a, const GridPtr& b) {
  if (!a || !b || !a->same_layout(*b))
    throw std::invalid_argument("fields live on incompatible grids");
}

// Evaluate f(x) at every grid point. F takes (x0[,x1[,x2]]) packed in an array.
template <typename F>
ScalarField sample(const GridPtr& grid, F&& f) {
  ScalarField out(grid);
  const int d = grid->dim();
  std::array<int, 3> idx{0, 0, 0};
  std::array<double, 3> x{0.0, 0.0, 0.0};
  for (std::size_t p = 0; p < grid->total_points(); ++p) {
    std::size_t rest = p;
    for (int a = d - 1; a >= 0; --a) {
      idx[a] = static_cast<int>(rest % grid->size(a));
      rest /= grid->size(a);
    }
    for (int a = 0; a < d; ++a) x[a] = grid->coordinate(a, idx[a]);
    out.v[p] = f(x);
  }
  return out;
}

}  // namespace anelab
