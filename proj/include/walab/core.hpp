#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace walab {

using cdouble = std::complex<double>;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct GridError : Error {
  using Error::Error;
};
struct DecayError : Error {
  using Error::Error;
};
struct HorizonError : Error {
  using Error::Error;
};
struct NormError : Error {
  using Error::Error;
};
struct ConfigError : Error {
  using Error::Error;
};

// Fraction of |f|^2 allowed within L/4 of the domain boundary.
inline constexpr double kDefaultTailTol = 1e-10;
// Window values below this multiple of the peak are dropped in direct sums.
inline constexpr double kWindowCut = 1e-18;

// Uniform truncation of R^n to the torus [-L, L)^n with N points per axis.
// Dual grid xi_k = (k - N/2) * pi/L; h * (pi/L) * N = 2*pi per axis.
struct GridSpec {
  int dim = 1;
  int points_per_axis = 0;
  double half_width = 0.0;

  double spacing() const { return 2.0 * half_width / points_per_axis; }
  double dual_spacing() const { return M_PI / half_width; }
  double nyquist() const { return M_PI / spacing(); }
  std::size_t size() const {
    std::size_t s = 1;
    for (int d = 0; d < dim; ++d) s *= static_cast<std::size_t>(points_per_axis);
    return s;
  }
  double coord(int i) const { return -half_width + i * spacing(); }
  double dual_coord(int k) const {
    return (k - points_per_axis / 2) * dual_spacing();
  }
  GridSpec dual() const { return GridSpec{dim, points_per_axis, nyquist()}; }
  bool same(const GridSpec& o) const {
    return dim == o.dim && points_per_axis == o.points_per_axis &&
           std::abs(half_width - o.half_width) < 1e-14 * (1.0 + half_width);
  }
  // Decode a flat index into per-axis indices (row-major, axis 0 major).
  void unflatten(std::size_t idx, int* out) const {
    for (int d = dim - 1; d >= 0; --d) {
      out[d] = static_cast<int>(idx % points_per_axis);
      idx /= points_per_axis;
    }
  }
  void point(std::size_t idx, double* x) const {
    int ij[2];
    unflatten(idx, ij);
    for (int d = 0; d < dim; ++d) x[d] = coord(ij[d]);
  }
  void dual_point(std::size_t idx, double* xi) const {
    int ij[2];
    unflatten(idx, ij);
    for (int d = 0; d < dim; ++d) xi[d] = dual_coord(ij[d]);
  }
};

GridSpec make_grid(int dim, int points_per_axis, double half_width);

struct SampledField {
  GridSpec grid;
  std::vector<cdouble> values;
  // |f|^2 mass fraction within L/4 of the boundary, recorded at construction.
  double tail_fraction = 0.0;
};

// Validates finiteness and computes the tail certificate.
SampledField make_field(const GridSpec& grid, std::vector<cdouble> values);
double boundary_mass_fraction(const GridSpec& grid, const std::vector<cdouble>& values);
void require_decay(const SampledField& f, double tol = kDefaultTailTol);

struct ClosedForm {
  enum class Kind { gaussian, modulated_gaussian, custom };
  Kind kind = Kind::gaussian;
  std::array<double, 2> center{0.0, 0.0};
  double width = 1.0;  // sigma > 0
  std::array<double, 2> momentum{0.0, 0.0};
  cdouble amplitude{1.0, 0.0};
  std::function<cdouble(const double*, int)> eval;  // custom only

  cdouble operator()(const double* x, int dim) const;
};

// 1-d and 2-d Gaussian wave packets amp * exp(-|x-c|^2/(2 sigma^2)) * exp(i xi0.x).
ClosedForm gaussian_form(double sigma, double center = 0.0, double momentum = 0.0,
                         cdouble amplitude = cdouble{1.0, 0.0});
ClosedForm gaussian_form_2d(double sigma, std::array<double, 2> center,
                            std::array<double, 2> momentum,
                            cdouble amplitude = cdouble{1.0, 0.0});

// Pointwise evaluation; throws DecayError when the tail certificate fails.
SampledField sample(const GridSpec& grid, const ClosedForm& form,
                    double tail_tol = kDefaultTailTol);

// Riemann-weighted pairing h^n sum conj(f) g; conjugate-linear in f.
cdouble inner_product(const SampledField& f, const SampledField& g);
// (h^n sum |f|^p)^(1/p); p = inf gives max |f|.
double lp_norm(const SampledField& f, double p);
inline double l2_norm(const SampledField& f) { return lp_norm(f, 2.0); }
double rel_l2_error(const SampledField& a, const SampledField& b);

}  // namespace walab
