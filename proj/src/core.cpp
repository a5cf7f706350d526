#include "walab/core.hpp"

#include <cmath>
#include <limits>

namespace walab {

GridSpec make_grid(int dim, int points_per_axis, double half_width) {
  if (dim != 1 && dim != 2) throw GridError("make_grid: dim must be 1 or 2");
  if (points_per_axis < 8 || points_per_axis % 2 != 0)
    throw GridError("make_grid: N must be even and >= 8");
  if (!(half_width > 0.0)) throw GridError("make_grid: half width must be positive");
  return GridSpec{dim, points_per_axis, half_width};
}

double boundary_mass_fraction(const GridSpec& grid, const std::vector<cdouble>& values) {
  const int N = grid.points_per_axis;
  const double L = grid.half_width;
  double total = 0.0, near = 0.0;
  double x[2];
  for (std::size_t idx = 0; idx < values.size(); ++idx) {
    const double m = std::norm(values[idx]);
    total += m;
    grid.point(idx, x);
    bool boundary = false;
    for (int d = 0; d < grid.dim; ++d) {
      // domain is [-L, L); distance to the boundary of the closure
      const double dist = L - std::abs(x[d]);
      if (dist < 0.25 * L) boundary = true;
    }
    if (boundary) near += m;
  }
  (void)N;
  return total > 0.0 ? near / total : 0.0;
}

SampledField make_field(const GridSpec& grid, std::vector<cdouble> values) {
  if (values.size() != grid.size())
    throw GridError("make_field: value count does not match grid");
  for (const auto& v : values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw GridError("make_field: non-finite sample");
  SampledField f;
  f.grid = grid;
  f.values = std::move(values);
  f.tail_fraction = boundary_mass_fraction(grid, f.values);
  return f;
}

void require_decay(const SampledField& f, double tol) {
  if (f.tail_fraction > tol)
    throw DecayError("field mass near boundary exceeds tail tolerance");
}

cdouble ClosedForm::operator()(const double* x, int dim) const {
  switch (kind) {
    case Kind::custom:
      return eval(x, dim);
    case Kind::gaussian:
    case Kind::modulated_gaussian: {
      double q = 0.0, phase = 0.0;
      for (int d = 0; d < dim; ++d) {
        const double z = x[d] - center[d];
        q += z * z;
        phase += momentum[d] * x[d];
      }
      const cdouble osc =
          (kind == Kind::modulated_gaussian)
              ? std::exp(cdouble{0.0, phase})
              : cdouble{1.0, 0.0};
      return amplitude * std::exp(-q / (2.0 * width * width)) * osc;
    }
  }
  return {};
}

ClosedForm gaussian_form(double sigma, double center, double momentum, cdouble amplitude) {
  if (!(sigma > 0.0)) throw GridError("gaussian_form: width must be positive");
  ClosedForm f;
  f.kind = momentum == 0.0 ? ClosedForm::Kind::gaussian : ClosedForm::Kind::modulated_gaussian;
  f.center = {center, 0.0};
  f.width = sigma;
  f.momentum = {momentum, 0.0};
  f.amplitude = amplitude;
  return f;
}

ClosedForm gaussian_form_2d(double sigma, std::array<double, 2> center,
                            std::array<double, 2> momentum, cdouble amplitude) {
  if (!(sigma > 0.0)) throw GridError("gaussian_form_2d: width must be positive");
  ClosedForm f;
  f.kind = (momentum[0] == 0.0 && momentum[1] == 0.0)
               ? ClosedForm::Kind::gaussian
               : ClosedForm::Kind::modulated_gaussian;
  f.center = center;
  f.width = sigma;
  f.momentum = momentum;
  f.amplitude = amplitude;
  return f;
}

SampledField sample(const GridSpec& grid, const ClosedForm& form, double tail_tol) {
  std::vector<cdouble> vals(grid.size());
  double x[2];
  for (std::size_t idx = 0; idx < vals.size(); ++idx) {
    grid.point(idx, x);
    vals[idx] = form(x, grid.dim);
  }
  SampledField f = make_field(grid, std::move(vals));
  require_decay(f, tail_tol);
  return f;
}

cdouble inner_product(const SampledField& f, const SampledField& g) {
  if (!f.grid.same(g.grid)) throw GridError("inner_product: grid mismatch");
  const double w = std::pow(f.grid.spacing(), f.grid.dim);
  cdouble acc{0.0, 0.0};
  for (std::size_t i = 0; i < f.values.size(); ++i)
    acc += std::conj(f.values[i]) * g.values[i];
  return w * acc;
}

double lp_norm(const SampledField& f, double p) {
  if (p < 1.0) throw NormError("lp_norm: p must be >= 1");
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& v : f.values) m = std::max(m, std::abs(v));
    return m;
  }
  const double w = std::pow(f.grid.spacing(), f.grid.dim);
  double acc = 0.0;
  for (const auto& v : f.values) acc += std::pow(std::abs(v), p);
  return std::pow(w * acc, 1.0 / p);
}

double rel_l2_error(const SampledField& a, const SampledField& b) {
  if (!a.grid.same(b.grid)) throw GridError("rel_l2_error: grid mismatch");
  const double w = std::pow(a.grid.spacing(), a.grid.dim);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    num += std::norm(a.values[i] - b.values[i]);
    den += std::norm(b.values[i]);
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(w * num);
}

}  // namespace walab
