#include "walab/propagators.hpp"

#include <cmath>

#include "walab/fft.hpp"

namespace walab {
namespace {

void multiply_spectral(const GridSpec& g, std::vector<cdouble>& vals,
                       const std::function<cdouble(const double*)>& mult) {
  fourier_inplace(g, vals.data());
  const GridSpec dual = g.dual();
  double xi[2];
  for (std::size_t k = 0; k < vals.size(); ++k) {
    dual.point(k, xi);
    vals[k] *= mult(xi);
  }
  inv_fourier_inplace(g, vals.data());
}

void multiply_pointwise(const GridSpec& g, std::vector<cdouble>& vals,
                        const std::function<cdouble(const double*)>& mult) {
  double x[2];
  for (std::size_t j = 0; j < vals.size(); ++j) {
    g.point(j, x);
    vals[j] *= mult(x);
  }
}

SampledField finish(const GridSpec& g, std::vector<cdouble> vals, double tail_tol) {
  SampledField out = make_field(g, std::move(vals));
  require_decay(out, tail_tol);
  return out;
}

void free_phase_inplace(const GridSpec& g, std::vector<cdouble>& vals, double t) {
  const int dim = g.dim;
  multiply_spectral(g, vals, [t, dim](const double* xi) {
    double q = 0.0;
    for (int d = 0; d < dim; ++d) q += xi[d] * xi[d];
    return std::exp(cdouble{0.0, -0.5 * t * q});
  });
}

}  // namespace

SampledField free_prop(const SampledField& f, double t, double tail_tol) {
  require_decay(f, tail_tol);
  std::vector<cdouble> vals = f.values;
  free_phase_inplace(f.grid, vals, t);
  return finish(f.grid, std::move(vals), tail_tol);
}

SampledField stark_prop(const SampledField& f, double t, std::array<double, 2> field,
                        double tail_tol) {
  require_decay(f, tail_tol);
  const GridSpec g = f.grid;
  double e2 = 0.0;
  for (int d = 0; d < g.dim; ++d) e2 += field[d] * field[d];

  SampledField u = free_prop(f, t, tail_tol);
  std::vector<cdouble> vals = std::move(u.values);
  // translation by a = -E t^2 / 2 as the spectral phase exp(-i a xi)
  {
    fourier_inplace(g, vals.data());
    const GridSpec dual = g.dual();
    double xi[2];
    for (std::size_t k = 0; k < vals.size(); ++k) {
      dual.point(k, xi);
      double dot = 0.0;
      for (int d = 0; d < g.dim; ++d) dot += (-0.5 * field[d] * t * t) * xi[d];
      vals[k] *= std::exp(cdouble{0.0, -dot});
    }
    inv_fourier_inplace(g, vals.data());
  }
  // exp(-i t E.x) and the global phase exp(-i E^2 t^3 / 6); the sign follows
  // from the fundamental-solution kernel (and the group generator)
  const cdouble global = std::exp(cdouble{0.0, -e2 * t * t * t / 6.0});
  double x[2];
  for (std::size_t j = 0; j < vals.size(); ++j) {
    g.point(j, x);
    double dot = 0.0;
    for (int d = 0; d < g.dim; ++d) dot += field[d] * x[d];
    vals[j] *= global * std::exp(cdouble{0.0, -t * dot});
  }
  return finish(g, std::move(vals), tail_tol);
}

SampledField harmonic_prop(const SampledField& f, double t, int sign, double tail_tol) {
  require_decay(f, tail_tol);
  if (sign != 1 && sign != -1)
    throw ConfigError("harmonic_prop: sign must be +1 (oscillator) or -1 (inverted)");
  const GridSpec g = f.grid;
  double a, b;
  if (sign == 1) {
    // focal times t = k pi (k != 0) of the oscillator kernel
    const double k = std::round(t / M_PI);
    if (k != 0.0 && std::abs(t - k * M_PI) < 0.05)
      throw HorizonError("harmonic_prop: t within 0.05 of a focal time k pi");
    a = std::tan(0.5 * t);
    b = std::sin(t);
  } else {
    a = -std::tanh(0.5 * t);
    b = std::sinh(t);
  }
  std::vector<cdouble> vals = f.values;
  auto chirp = [&](const double* x) {
    double q = 0.0;
    for (int d = 0; d < g.dim; ++d) q += x[d] * x[d];
    return std::exp(cdouble{0.0, -0.5 * a * q});
  };
  multiply_pointwise(g, vals, chirp);
  free_phase_inplace(g, vals, b);
  multiply_pointwise(g, vals, chirp);
  return finish(g, std::move(vals), tail_tol);
}

SampledField splitstep_prop(const SampledField& f, double t, const Potential& pot,
                            double dt, bool certify, double tail_tol) {
  require_decay(f, tail_tol);
  if (!(dt > 0.0)) throw ConfigError("splitstep_prop: dt must be positive");
  const GridSpec g = f.grid;

  auto run = [&](int steps) {
    const double step = t / steps;
    std::vector<cdouble> vals = f.values;
    std::vector<cdouble> vphase(g.size());
    double x[2];
    for (std::size_t j = 0; j < vphase.size(); ++j) {
      g.point(j, x);
      vphase[j] = std::exp(cdouble{0.0, -0.5 * step * pot.value(x)});
    }
    // fold consecutive half-kicks: V/2, (Lap, V)^(steps-1), Lap, V/2
    for (std::size_t j = 0; j < vals.size(); ++j) vals[j] *= vphase[j];
    for (int k = 0; k < steps; ++k) {
      free_phase_inplace(g, vals, step);
      if (k + 1 < steps) {
        for (std::size_t j = 0; j < vals.size(); ++j)
          vals[j] *= vphase[j] * vphase[j];
      } else {
        for (std::size_t j = 0; j < vals.size(); ++j) vals[j] *= vphase[j];
      }
    }
    return vals;
  };

  int steps = std::max(1, static_cast<int>(std::ceil(std::abs(t) / dt)));
  std::vector<cdouble> vals = run(steps);
  if (certify && t != 0.0) {
    const int kMaxRefine = 6;
    bool ok = false;
    for (int r = 0; r < kMaxRefine; ++r) {
      std::vector<cdouble> fine = run(2 * steps);
      double num = 0.0, den = 0.0;
      for (std::size_t j = 0; j < vals.size(); ++j) {
        num += std::norm(vals[j] - fine[j]);
        den += std::norm(fine[j]);
      }
      if (std::sqrt(num / std::max(den, 1e-300)) < 1e-8) {
        vals = std::move(fine);
        ok = true;
        break;
      }
      steps *= 2;
      vals = std::move(fine);
    }
    if (!ok)
      throw Error("splitstep_prop: step certification failed to converge");
  }
  return finish(g, std::move(vals), tail_tol);
}

SampledField apply_hamiltonian(const SampledField& f, const Potential& pot) {
  const GridSpec g = f.grid;
  std::vector<cdouble> kin = f.values;
  fourier_inplace(g, kin.data());
  const GridSpec dual = g.dual();
  double xi[2];
  for (std::size_t k = 0; k < kin.size(); ++k) {
    dual.point(k, xi);
    double q = 0.0;
    for (int d = 0; d < g.dim; ++d) q += xi[d] * xi[d];
    kin[k] *= 0.5 * q;
  }
  inv_fourier_inplace(g, kin.data());
  double x[2];
  for (std::size_t j = 0; j < kin.size(); ++j) {
    g.point(j, x);
    kin[j] += pot.value(x) * f.values[j];
  }
  SampledField out;
  out.grid = g;
  out.values = std::move(kin);
  out.tail_fraction = boundary_mass_fraction(g, out.values);
  return out;
}

}  // namespace walab
