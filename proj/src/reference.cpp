#include "walab/reference.hpp"

#include <algorithm>
#include <cmath>

#include "walab/quad.hpp"

namespace walab::ref {

SampledField fourier(const SampledField& f) {
  const GridSpec& g = f.grid;
  const GridSpec dual = g.dual();
  const std::size_t n = g.size();
  const double w = std::pow(g.spacing(), g.dim);
  std::vector<cdouble> out(n);
  double x[2], xi[2];
  for (std::size_t k = 0; k < n; ++k) {
    dual.point(k, xi);
    cdouble acc{};
    for (std::size_t j = 0; j < n; ++j) {
      g.point(j, x);
      double dot = 0.0;
      for (int d = 0; d < g.dim; ++d) dot += x[d] * xi[d];
      acc += f.values[j] * std::exp(cdouble{0.0, -dot});
    }
    out[k] = w * acc;
  }
  SampledField F;
  F.grid = dual;
  F.values = std::move(out);
  F.tail_fraction = boundary_mass_fraction(dual, F.values);
  return F;
}

SampledField inv_fourier(const SampledField& F) {
  const GridSpec primal = F.grid.dual();
  const GridSpec& dual = F.grid;
  const std::size_t n = primal.size();
  const double w = std::pow(primal.dual_spacing() / (2.0 * M_PI), primal.dim);
  std::vector<cdouble> out(n);
  double x[2], xi[2];
  for (std::size_t j = 0; j < n; ++j) {
    primal.point(j, x);
    cdouble acc{};
    for (std::size_t k = 0; k < n; ++k) {
      dual.point(k, xi);
      double dot = 0.0;
      for (int d = 0; d < primal.dim; ++d) dot += x[d] * xi[d];
      acc += F.values[k] * std::exp(cdouble{0.0, dot});
    }
    out[j] = w * acc;
  }
  SampledField f;
  f.grid = primal;
  f.values = std::move(out);
  f.tail_fraction = boundary_mass_fraction(primal, f.values);
  return f;
}

PhaseSpaceField stft(const SampledField& f, const Window& w) {
  const GridSpec& g = f.grid;
  const GridSpec dual = g.dual();
  const std::size_t n = g.size();
  const double cell = std::pow(g.spacing(), g.dim);
  std::vector<cdouble> out(n * n);
  double x[2], xi[2], y[2], z[2];
  for (std::size_t j = 0; j < n; ++j) {
    g.point(j, x);
    for (std::size_t k = 0; k < n; ++k) {
      dual.point(k, xi);
      cdouble acc{};
      for (std::size_t m = 0; m < n; ++m) {
        g.point(m, y);
        double dot = 0.0;
        for (int d = 0; d < g.dim; ++d) {
          z[d] = y[d] - x[d];
          dot += y[d] * xi[d];
        }
        acc += std::conj(w.value(z)) * f.values[m] * std::exp(cdouble{0.0, -dot});
      }
      out[j * n + k] = cell * acc;
    }
  }
  return make_phase_space_field(g, std::move(out));
}

SampledField adjoint_stft(const PhaseSpaceField& F, const Window& w) {
  const GridSpec& g = F.xgrid;
  const GridSpec dual = g.dual();
  const std::size_t n = g.size();
  const double cell = std::pow(g.spacing(), g.dim) *
                      std::pow(g.dual_spacing() / (2.0 * M_PI), g.dim);
  std::vector<cdouble> out(n);
  double x[2], y[2], xi[2], z[2];
  for (std::size_t j = 0; j < n; ++j) {
    g.point(j, x);
    cdouble acc{};
    for (std::size_t m = 0; m < n; ++m) {
      g.point(m, y);
      for (int d = 0; d < g.dim; ++d) z[d] = x[d] - y[d];
      const cdouble gw = w.value(z);
      cdouble inner{};
      for (std::size_t k = 0; k < n; ++k) {
        dual.point(k, xi);
        double dot = 0.0;
        for (int d = 0; d < g.dim; ++d) dot += x[d] * xi[d];
        inner += F.values[m * n + k] * std::exp(cdouble{0.0, dot});
      }
      acc += gw * inner;
    }
    out[j] = cell * acc;
  }
  return make_field(g, std::move(out));
}

double mixed_norm(const PhaseSpaceField& F, double p, double q) {
  const std::size_t n = F.rows();
  std::vector<double> inner(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (std::isinf(q)) {
      double m = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        m = std::max(m, std::abs(F.values[j * n + k]));
      inner[j] = m;
    } else {
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        acc += std::pow(std::abs(F.values[j * n + k]), q);
      inner[j] = std::pow(F.xi_weight() * acc, 1.0 / q);
    }
  }
  if (std::isinf(p)) return *std::max_element(inner.begin(), inner.end());
  double acc = 0.0;
  for (double v : inner) acc += std::pow(v, p);
  return std::pow(F.x_weight() * acc, 1.0 / p);
}

double lorentz_norm_quadrature(const WeightedSamples& ws, double p, double q,
                               int subdivisions) {
  auto items = ws.items;
  std::stable_sort(items.begin(), items.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  double total = 0.0;
  for (const auto& [v, m] : items) {
    (void)v;
    total += m;
  }
  if (total == 0.0 || items.empty()) return 0.0;
  auto rearr = [&](double t) {
    double cum = 0.0;
    for (const auto& [v, m] : items) {
      cum += m;
      if (t < cum) return v;
    }
    return 0.0;
  };
  if (std::isinf(q)) {
    double best = 0.0;
    for (int i = 0; i <= subdivisions; ++i) {
      const double t = total * (i + 0.5) / (subdivisions + 1);
      best = std::max(best, std::pow(t, 1.0 / p) * rearr(t));
    }
    // the sup sits at step right-endpoints; scan those too
    double cum = 0.0;
    for (const auto& [v, m] : items) {
      cum += m;
      best = std::max(best, std::pow(cum, 1.0 / p) * v);
    }
    return best;
  }
  // f* is constant on each cumulative-measure interval; integrate the weight
  // (q/p) t^{q/p-1} there numerically. The weight is singular at t = 0, so
  // each interval is split into dyadic bands toward its left end and each
  // band integrated by Gauss-Legendre (no antiderivative used anywhere).
  (void)subdivisions;
  const double e = q / p;
  const QuadRule gl = gauss_legendre(8);
  auto band_integral = [&](double a, double b) {
    double acc = 0.0;
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      const double t = mid + half * gl.nodes[i];
      acc += gl.weights[i] * half * e * std::pow(t, e - 1.0);
    }
    return acc;
  };
  auto weight_integral = [&](double a, double b) {
    if (a > 0.0 && a > 1e-3 * b) return band_integral(a, b);
    double acc = 0.0, hi = b;
    const double floor_t = b * std::pow(2.0, -120);
    while (hi * 0.5 > std::max(a, floor_t)) {
      acc += band_integral(hi * 0.5, hi);
      hi *= 0.5;
    }
    acc += band_integral(std::max(a, floor_t), hi);
    return acc;
  };
  double acc = 0.0, cum = 0.0;
  for (const auto& [v, m] : items) {
    if (v == 0.0) break;
    acc += std::pow(v, q) * weight_integral(cum, cum + m);
    cum += m;
  }
  return std::pow(acc, 1.0 / q);
}

FlowPoint flow_rk4(const Potential& pot, double t, const double* x0,
                   const double* xi0, int steps) {
  const int n = pot.dim;
  double y[4];  // (x, xi)
  for (int d = 0; d < n; ++d) {
    y[d] = x0[d];
    y[n + d] = xi0[d];
  }
  auto rhs = [&](const double* s, double* out) {
    double grad[2];
    pot.gradient(s, grad);
    for (int d = 0; d < n; ++d) {
      out[d] = s[n + d];
      out[n + d] = -grad[d];
    }
  };
  const double dt = t / steps;
  double k1[4], k2[4], k3[4], k4[4], tmp[4];
  for (int step = 0; step < steps; ++step) {
    rhs(y, k1);
    for (int i = 0; i < 2 * n; ++i) tmp[i] = y[i] + 0.5 * dt * k1[i];
    rhs(tmp, k2);
    for (int i = 0; i < 2 * n; ++i) tmp[i] = y[i] + 0.5 * dt * k2[i];
    rhs(tmp, k3);
    for (int i = 0; i < 2 * n; ++i) tmp[i] = y[i] + dt * k3[i];
    rhs(tmp, k4);
    for (int i = 0; i < 2 * n; ++i)
      y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  FlowPoint fp;
  fp.dim = n;
  fp.t = t;
  for (int d = 0; d < n; ++d) {
    fp.x[d] = y[d];
    fp.xi[d] = y[n + d];
  }
  return fp;
}

}  // namespace walab::ref
