#include "walab/flow.hpp"

#include <cmath>
#include <limits>
#include <utility>
#include <vector>

namespace walab {
namespace {

// det for size <= 4, Gaussian elimination with partial pivoting
double small_det(double* a, int n) {
  double det = 1.0;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(a[r * n + c]) > std::abs(a[piv * n + c])) piv = r;
    if (a[piv * n + c] == 0.0) return 0.0;
    if (piv != c) {
      for (int k = 0; k < n; ++k) std::swap(a[piv * n + k], a[c * n + k]);
      det = -det;
    }
    det *= a[c * n + c];
    for (int r = c + 1; r < n; ++r) {
      const double f = a[r * n + c] / a[c * n + c];
      for (int k = c; k < n; ++k) a[r * n + k] -= f * a[c * n + k];
    }
  }
  return det;
}

double h_value(const Potential& pot, const double* x, const double* xi) {
  double g[2];
  pot.gradient(x, g);
  double kin = 0.0, dot = 0.0;
  for (int d = 0; d < pot.dim; ++d) {
    kin += xi[d] * xi[d];
    dot += g[d] * x[d];
  }
  return 0.5 * kin + pot.value(x) - dot;
}

// J has `cols` columns; apply the velocity-Verlet step Jacobian as shears:
//   kick:  Xi_rows -= (dt/2) H X_rows,   drift: X_rows += dt Xi_rows
void shear_kick(double* J, const double* H, int n, int cols, double half_dt) {
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < cols; ++c) {
      double acc = 0.0;
      for (int j = 0; j < n; ++j) acc += H[i * n + j] * J[j * cols + c];
      J[(n + i) * cols + c] -= half_dt * acc;
    }
}
void shear_drift(double* J, int n, int cols, double dt) {
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < cols; ++c) J[i * cols + c] += dt * J[(n + i) * cols + c];
}

struct Integrator {
  const Potential& pot;
  int n;
  double x[2], xi[2], grad[2], hess[4];

  void verlet_sweep(double dt, int steps, double* J, int cols, double* phase_out) {
    const bool want_phase = phase_out != nullptr;
    // composite Simpson streamed over the Verlet nodes (steps is even)
    double acc = want_phase ? h_value(pot, x, xi) : 0.0;
    pot.gradient(x, grad);
    for (int k = 0; k < steps; ++k) {
      if (J) {
        pot.hessian(x, hess);
        shear_kick(J, hess, n, cols, 0.5 * dt);
      }
      for (int d = 0; d < n; ++d) xi[d] -= 0.5 * dt * grad[d];
      for (int d = 0; d < n; ++d) x[d] += dt * xi[d];
      pot.gradient(x, grad);
      for (int d = 0; d < n; ++d) xi[d] -= 0.5 * dt * grad[d];
      if (J) {
        shear_drift(J, n, cols, dt);
        pot.hessian(x, hess);
        shear_kick(J, hess, n, cols, 0.5 * dt);
      }
      if (want_phase)
        acc += h_value(pot, x, xi) *
               (k + 1 == steps ? 1.0 : ((k & 1) ? 2.0 : 4.0));
    }
    if (want_phase) *phase_out = acc * dt / 3.0;
  }
};

}  // namespace

int min_flow_steps(const Potential& pot, double t) {
  const double M = flow_growth_constant(pot, pot.dim);
  int s = static_cast<int>(std::ceil(64.0 * std::abs(t) * (1.0 + M)));
  s = std::max(s, 2);
  if (s % 2) ++s;
  return s;
}

int default_flow_steps(const Potential& pot, double t) {
  return std::max(min_flow_steps(pot, t), 128);
}

FlowPoint flow(const Potential& pot, double t, const double* x0, const double* xi0,
               int steps) {
  if (steps < min_flow_steps(pot, t))
    throw Error("flow: step budget too small for requested horizon");
  if (steps % 2) ++steps;
  for (int d = 0; d < pot.dim; ++d)
    if (!std::isfinite(x0[d]) || !std::isfinite(xi0[d]))
      throw Error("flow: non-finite initial point");

  const int n = pot.dim;
  FlowPoint fp;
  fp.dim = n;
  fp.t = t;
  Integrator it{pot, n, {}, {}, {}, {}};
  for (int d = 0; d < n; ++d) {
    it.x[d] = x0[d];
    it.xi[d] = xi0[d];
  }
  const int cols = 2 * n;
  std::array<double, 16> J{};
  for (int i = 0; i < cols; ++i) J[i * cols + i] = 1.0;
  double phase = 0.0;
  if (t != 0.0) it.verlet_sweep(t / steps, steps, J.data(), cols, &phase);
  for (int d = 0; d < n; ++d) {
    fp.x[d] = it.x[d];
    fp.xi[d] = it.xi[d];
  }
  fp.jac = J;
  fp.phase = phase;
  return fp;
}

double flow_det(const FlowPoint& fp) {
  const int m = 2 * fp.dim;
  double a[16];
  for (int i = 0; i < m * m; ++i) a[i] = fp.jac[i];
  return small_det(a, m);
}

double flow_light(const Potential& pot, double t, const double* x0, const double* xi0,
                  int steps, double* x_out, double* xi_out) {
  const int n = pot.dim;
  if (t == 0.0) {
    for (int d = 0; d < n; ++d) {
      x_out[d] = x0[d];
      xi_out[d] = xi0[d];
    }
    return 0.0;
  }
  if (steps < min_flow_steps(pot, t))
    throw Error("flow_light: step budget too small");
  if (steps % 2) ++steps;
  Integrator it{pot, n, {}, {}, {}, {}};
  for (int d = 0; d < n; ++d) {
    it.x[d] = x0[d];
    it.xi[d] = xi0[d];
  }
  double phase = 0.0;
  it.verlet_sweep(t / steps, steps, nullptr, 0, &phase);
  for (int d = 0; d < n; ++d) {
    x_out[d] = it.x[d];
    xi_out[d] = it.xi[d];
  }
  return phase;
}

double scaled_det(const Potential& pot, double t, const double* x, const double* xi,
                  int steps) {
  const double t2 = det_time_limit(pot, pot.dim);
  if (std::abs(t) > t2 + 1e-12)
    throw HorizonError("scaled_det: |t| beyond the determinant horizon");
  if (std::abs(t) < 1e-6) return 1.0;
  if (steps < min_flow_steps(pot, t))
    throw Error("scaled_det: step budget too small");
  if (steps % 2) ++steps;

  const int n = pot.dim;
  Integrator it{pot, n, {}, {}, {}, {}};
  for (int d = 0; d < n; ++d) {
    it.x[d] = x[d];
    it.xi[d] = xi[d] / t;
  }
  // variational block with (X, Xi)(0) = (0, I): derivative w.r.t. xi only
  const int cols = n;
  std::array<double, 8> J{};
  for (int d = 0; d < n; ++d) J[(n + d) * cols + d] = 1.0;
  it.verlet_sweep(t / steps, steps, J.data(), cols, nullptr);
  double a[4];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i * n + j] = J[i * cols + j];
  return small_det(a, n) / std::pow(t, n);
}

SeparationReport check_separation(const Potential& pot, double t,
                                  const std::vector<SeparationTuple>& tuples,
                                  int steps, double slack) {
  const double t1 = separation_time_limit(flow_growth_constant(pot, pot.dim));
  if (std::abs(t) >= t1)
    throw HorizonError("check_separation: |t| must be below the separation horizon");
  const double M = flow_growth_constant(pot, pot.dim);
  SeparationReport rep;
  rep.worst_slack = std::numeric_limits<double>::infinity();
  const int n = pot.dim;
  for (const auto& tp : tuples) {
    const FlowPoint a = flow(pot, t, tp.x.data(), tp.xi.data(), steps);
    const FlowPoint b = flow(pot, t, tp.z.data(), tp.eta.data(), steps);
    double dx0 = 0, dxi0 = 0, dxt = 0, dxit = 0;
    for (int d = 0; d < n; ++d) {
      dx0 += (tp.x[d] - tp.z[d]) * (tp.x[d] - tp.z[d]);
      dxi0 += (tp.xi[d] - tp.eta[d]) * (tp.xi[d] - tp.eta[d]);
      dxt += (a.x[d] - b.x[d]) * (a.x[d] - b.x[d]);
      dxit += (a.xi[d] - b.xi[d]) * (a.xi[d] - b.xi[d]);
    }
    dx0 = std::sqrt(dx0);
    dxi0 = std::sqrt(dxi0);
    dxt = std::sqrt(dxt);
    dxit = std::sqrt(dxit);
    const double m1 = dxt - (5.0 * dx0 - 3.0 * dxi0) / 6.0;
    const double m2 = dxit - (dxi0 - dx0) / 2.0;
    rep.worst_slack = std::min({rep.worst_slack, m1, m2});
    if (m1 < -slack || m2 < -slack) ++rep.violations;
    const double e0 = dx0 * dx0 + dxi0 * dxi0;
    const double et = dxt * dxt + dxit * dxit;
    if (et > 2.0 * M * e0 * std::exp(2.0 * M * std::abs(t)) + 1e-12)
      rep.energy_bound_ok = false;
    ++rep.checked;
  }
  return rep;
}

}  // namespace walab
