#include "walab/window.hpp"

#include <cmath>

namespace walab {

cdouble Window::width_factor() const { return cdouble{1.0, time}; }

cdouble Window::amp() const {
  const double norm = std::pow(M_PI, -0.25 * dim);
  return norm * std::pow(width_factor(), -0.5 * dim);
}

cdouble Window::beta() const { return 0.5 / width_factor(); }

cdouble Window::value(const double* y) const {
  double q = 0.0;
  for (int d = 0; d < dim; ++d) q += y[d] * y[d];
  return amp() * std::exp(-beta() * q);
}

double Window::sup_abs() const {
  return std::pow(M_PI, -0.25 * dim) * std::pow(1.0 + time * time, -0.25 * dim);
}

double Window::cutoff_radius(double eps) const {
  return std::sqrt(2.0 * (1.0 + time * time) * (std::log(1.0 / eps) + 1.0));
}

SampledField Window::sample_on(const GridSpec& grid) const {
  std::vector<cdouble> vals(grid.size());
  double y[2];
  for (std::size_t i = 0; i < vals.size(); ++i) {
    grid.point(i, y);
    vals[i] = value(y);
  }
  return make_field(grid, std::move(vals));
}

Window gaussian_window(int dim) { return Window{dim, 0.0}; }

Window evolved_window(const Window& w, double t) {
  const double total = w.time + t;
  if (std::abs(total) > kWindowHorizon)
    throw HorizonError("evolved_window: |t| beyond configured horizon");
  return Window{w.dim, total};
}

}  // namespace walab
