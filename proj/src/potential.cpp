#include "walab/potential.hpp"

#include <cmath>

#include "walab/quad.hpp"
#include "walab/rng.hpp"

namespace walab {

double Potential::value(const double* x) const {
  switch (kind) {
    case Kind::zero:
      return 0.0;
    case Kind::harmonic: {
      double q = 0.0;
      for (int d = 0; d < dim; ++d) q += x[d] * x[d];
      return 0.5 * q;
    }
    case Kind::inverted_harmonic: {
      double q = 0.0;
      for (int d = 0; d < dim; ++d) q += x[d] * x[d];
      return -0.5 * q;
    }
    case Kind::stark: {
      double s = 0.0;
      for (int d = 0; d < dim; ++d) s += stark_field[d] * x[d];
      return s;
    }
    case Kind::cosine: {
      double s = 0.0;
      for (int d = 0; d < dim; ++d) s += std::cos(x[d]);
      return s;
    }
    case Kind::quad_plus_trig: {
      double s = 0.0;
      for (int d = 0; d < dim; ++d) s += 0.5 * x[d] * x[d] + std::sin(x[d]);
      return s;
    }
    case Kind::custom:
      return custom_value(x, dim);
  }
  return 0.0;
}

void Potential::gradient(const double* x, double* g) const {
  switch (kind) {
    case Kind::zero:
      for (int d = 0; d < dim; ++d) g[d] = 0.0;
      return;
    case Kind::harmonic:
      for (int d = 0; d < dim; ++d) g[d] = x[d];
      return;
    case Kind::inverted_harmonic:
      for (int d = 0; d < dim; ++d) g[d] = -x[d];
      return;
    case Kind::stark:
      for (int d = 0; d < dim; ++d) g[d] = stark_field[d];
      return;
    case Kind::cosine:
      for (int d = 0; d < dim; ++d) g[d] = -std::sin(x[d]);
      return;
    case Kind::quad_plus_trig:
      for (int d = 0; d < dim; ++d) g[d] = x[d] + std::cos(x[d]);
      return;
    case Kind::custom:
      custom_grad(x, dim, g);
      return;
  }
}

void Potential::hessian(const double* x, double* h) const {
  const int n = dim;
  for (int i = 0; i < n * n; ++i) h[i] = 0.0;
  switch (kind) {
    case Kind::zero:
    case Kind::stark:
      return;
    case Kind::harmonic:
      for (int d = 0; d < n; ++d) h[d * n + d] = 1.0;
      return;
    case Kind::inverted_harmonic:
      for (int d = 0; d < n; ++d) h[d * n + d] = -1.0;
      return;
    case Kind::cosine:
      for (int d = 0; d < n; ++d) h[d * n + d] = -std::cos(x[d]);
      return;
    case Kind::quad_plus_trig:
      for (int d = 0; d < n; ++d) h[d * n + d] = 1.0 - std::sin(x[d]);
      return;
    case Kind::custom:
      custom_hess(x, dim, h);
      return;
  }
}

Potential builtin_potential(const std::string& name, int dim,
                            std::array<double, 2> stark_field) {
  if (dim != 1 && dim != 2) throw GridError("builtin_potential: dim must be 1 or 2");
  Potential p;
  p.dim = dim;
  p.name = name;
  if (name == "zero") {
    p.kind = Potential::Kind::zero;
    p.hessian_sup = 0.0;
    p.zero_hessian = true;
    p.exact_propagator = true;
  } else if (name == "harmonic") {
    p.kind = Potential::Kind::harmonic;
    p.hessian_sup = 1.0;
    p.zero_hessian = false;
    p.exact_propagator = true;
  } else if (name == "inverted_harmonic") {
    p.kind = Potential::Kind::inverted_harmonic;
    p.hessian_sup = 1.0;
    p.zero_hessian = false;
    p.exact_propagator = true;
  } else if (name == "stark") {
    p.kind = Potential::Kind::stark;
    p.stark_field = stark_field;
    p.hessian_sup = 0.0;
    p.zero_hessian = true;
    p.exact_propagator = true;
  } else if (name == "cosine") {
    p.kind = Potential::Kind::cosine;
    p.hessian_sup = 1.0;
    p.zero_hessian = false;
    p.exact_propagator = false;
  } else if (name == "quad_plus_trig") {
    p.kind = Potential::Kind::quad_plus_trig;
    p.hessian_sup = 2.0;
    p.zero_hessian = false;
    p.exact_propagator = false;
  } else {
    throw ConfigError("builtin_potential: unknown name '" + name + "'");
  }
  return p;
}

Potential custom_potential(int dim, std::function<double(const double*, int)> value,
                           std::function<void(const double*, int, double*)> grad,
                           std::function<void(const double*, int, double*)> hess,
                           double hessian_sup) {
  if (!(hessian_sup >= 0.0))
    throw ConfigError("custom_potential: hessian_sup must be supplied (>= 0)");
  Potential p;
  p.kind = Potential::Kind::custom;
  p.dim = dim;
  p.name = "custom";
  p.custom_value = std::move(value);
  p.custom_grad = std::move(grad);
  p.custom_hess = std::move(hess);
  p.hessian_sup = hessian_sup;
  p.zero_hessian = hessian_sup == 0.0;
  p.exact_propagator = false;
  return p;
}

double check_gradient_consistency(const Potential& pot, int points, double box,
                                  std::uint64_t seed) {
  Rng rng(seed);
  const double eps = 1e-5;
  double worst = 0.0;
  double x[2], g[2];
  for (int i = 0; i < points; ++i) {
    for (int d = 0; d < pot.dim; ++d) x[d] = rng.uniform(-box, box);
    pot.gradient(x, g);
    for (int d = 0; d < pot.dim; ++d) {
      double xp[2] = {x[0], x[1]}, xm[2] = {x[0], x[1]};
      xp[d] += eps;
      xm[d] -= eps;
      const double fd = (pot.value(xp) - pot.value(xm)) / (2.0 * eps);
      const double scale = std::max(1.0, std::abs(g[d]));
      worst = std::max(worst, std::abs(fd - g[d]) / scale);
    }
  }
  return worst;
}

double check_hessian_consistency(const Potential& pot, int points, double box,
                                 std::uint64_t seed) {
  Rng rng(seed);
  const double eps = 1e-5;
  double worst = 0.0;
  double x[2], h[4], gp[2], gm[2];
  for (int i = 0; i < points; ++i) {
    for (int d = 0; d < pot.dim; ++d) x[d] = rng.uniform(-box, box);
    pot.hessian(x, h);
    for (int d = 0; d < pot.dim; ++d) {
      double xp[2] = {x[0], x[1]}, xm[2] = {x[0], x[1]};
      xp[d] += eps;
      xm[d] -= eps;
      pot.gradient(xp, gp);
      pot.gradient(xm, gm);
      for (int r = 0; r < pot.dim; ++r) {
        const double fd = (gp[r] - gm[r]) / (2.0 * eps);
        const double exact = h[r * pot.dim + d];
        const double scale = std::max(1.0, std::abs(exact));
        worst = std::max(worst, std::abs(fd - exact) / scale);
      }
    }
  }
  return worst;
}

double sampled_hessian_max(const Potential& pot, int points, double box,
                           std::uint64_t seed) {
  Rng rng(seed);
  double x[2], h[4];
  double worst = 0.0;
  for (int i = 0; i < points; ++i) {
    for (int d = 0; d < pot.dim; ++d) x[d] = rng.uniform(-box, box);
    pot.hessian(x, h);
    for (int k = 0; k < pot.dim * pot.dim; ++k) worst = std::max(worst, std::abs(h[k]));
  }
  return worst;
}

double flow_growth_constant(const Potential& pot, int n) {
  return 1.0 + static_cast<double>(n) * n * pot.hessian_sup;
}

double separation_time_limit(double M) {
  if (!(M >= 1.0)) throw ConfigError("separation_time_limit: M >= 1 required");
  auto excess = [M](double t) {
    return 2.0 * std::pow(M, 1.5) * std::exp(M * t) * t - 0.5;
  };
  const double root = bisect_increasing(excess, 1.0 / 3.0, 1e-12);
  return 0.999 * std::min(root, 1.0 / 3.0);
}

double det_time_limit(const Potential& pot, int n) {
  const double mp = 1.0 + pot.hessian_sup;
  return std::min(1.0 / 3.0, 0.5 / std::sqrt(n * mp));
}

FlowHorizons flow_horizons(const Potential& pot, int n) {
  FlowHorizons h;
  h.growth = flow_growth_constant(pot, n);
  h.t_separation = separation_time_limit(h.growth);
  h.hessian_plus_one = 1.0 + pot.hessian_sup;
  h.t_jacobian = det_time_limit(pot, n);
  return h;
}

}  // namespace walab
