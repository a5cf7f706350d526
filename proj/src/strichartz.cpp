#include "walab/strichartz.hpp"

#include <cmath>

#include "walab/quad.hpp"

namespace walab {
namespace {

double conjugate_exponent(double p) {
  if (std::isinf(p)) return 1.0;
  if (p == 1.0) return std::numeric_limits<double>::infinity();
  return p / (p - 1.0);
}

std::vector<double> uniform_times(double T, int samples) {
  std::vector<double> ts(samples);
  for (int i = 0; i < samples; ++i)
    ts[i] = -T + 2.0 * T * i / (samples - 1);
  return ts;
}

// mixed L^inf_x L^1_xi norm of a pulled-back node table
double sup_l1(const std::vector<double>& row_l1) {
  double m = 0.0;
  for (double v : row_l1) m = std::max(m, v);
  return m;
}

}  // namespace

AdmissiblePair make_admissible_pair(int n, double p, double r) {
  if (!(p >= 2.0)) throw ConfigError("admissible pair: p must be >= 2");
  if (!(r >= 4.0)) throw ConfigError("admissible pair: r must be >= 4");
  const double pi = std::isinf(p) ? 0.0 : n / p;
  const double ri = std::isinf(r) ? 0.0 : 2.0 / r;
  if (std::abs(pi + ri - 0.5 * n) > 1e-12)
    throw ConfigError("admissible pair: n/p + 2/r = n/2 violated");
  if (n == 1 && std::isinf(p) && r == 4.0)
    throw ConfigError("admissible pair: (1, inf, 4) is excluded");
  AdmissiblePair pair;
  pair.p = p;
  pair.r = r;
  pair.endpoint = n > 1 && r == 4.0 && std::abs(p - 2.0 * n / (n - 1.0)) < 1e-9;
  return pair;
}

AdmissiblePair pair_from_r(int n, double r) {
  if (std::isinf(r)) return make_admissible_pair(n, 2.0, r);
  const double p = 2.0 * n * r / (n * r - 4.0);
  return make_admissible_pair(n, p, r);
}

std::vector<AdmissiblePair> admissible_pairs(int n, int count) {
  if (n < 1 || count < 1) throw ConfigError("admissible_pairs: n >= 1, count >= 1");
  std::vector<AdmissiblePair> out;
  const double r_min = n > 1 ? 4.0 : 4.5;
  const double r_max = 40.0;
  const int finite = count > 1 ? count - 1 : count;
  for (int i = 0; i < finite; ++i) {
    const double f = finite > 1 ? static_cast<double>(i) / (finite - 1) : 0.0;
    out.push_back(pair_from_r(n, r_min * std::pow(r_max / r_min, f)));
  }
  if (count > 1)
    out.push_back(pair_from_r(n, std::numeric_limits<double>::infinity()));
  return out;
}

Propagator propagator_for(const Potential& pot, double split_dt, double tail_tol) {
  switch (pot.kind) {
    case Potential::Kind::zero:
      return [tail_tol](const SampledField& f, double t) {
        return free_prop(f, t, tail_tol);
      };
    case Potential::Kind::stark: {
      const std::array<double, 2> field = pot.stark_field;
      return [field, tail_tol](const SampledField& f, double t) {
        return stark_prop(f, t, field, tail_tol);
      };
    }
    case Potential::Kind::harmonic:
      return [tail_tol](const SampledField& f, double t) {
        return harmonic_prop(f, t, 1, tail_tol);
      };
    case Potential::Kind::inverted_harmonic:
      return [tail_tol](const SampledField& f, double t) {
        return harmonic_prop(f, t, -1, tail_tol);
      };
    default: {
      Potential p = pot;
      return [p, split_dt, tail_tol](const SampledField& f, double t) {
        return splitstep_prop(f, t, p, split_dt, true, tail_tol);
      };
    }
  }
}

DispersiveFit dispersive_fit(const Propagator& U, const SampledField& u0,
                             const std::vector<double>& t_list, const Window& window,
                             double tail_tol) {
  if (t_list.size() < 4)
    throw ConfigError("dispersive_fit: need at least 4 sample times");
  DispersiveFit fit;
  for (double t : t_list) {
    SampledField u = U(u0, t);
    const double nrm = w_inf1_norm_refined(u, window, 0.3, tail_tol);
    fit.log_t.push_back(std::log(std::abs(t)));
    fit.log_norm.push_back(std::log(nrm));
  }
  const LineFit line = fit_line(fit.log_t, fit.log_norm);
  fit.slope = line.slope;
  fit.intercept = line.intercept;
  return fit;
}

double flow_projection_ratio(const Potential& pot, const Window& window, double s,
                             double t, const PhaseSpaceForm& F, const GridSpec& grid,
                             int flow_steps) {
  const double t1 = separation_time_limit(flow_growth_constant(pot, pot.dim));
  if (std::abs(s) > t1 || std::abs(t) > t1)
    throw HorizonError("flow_projection_ratio: |s|, |t| must be <= T1");
  const Window gs = evolved_window(window, s - window.time);
  const std::size_t n = grid.size();
  const GridSpec dual = grid.dual();
  const int steps = std::max(min_flow_steps(pot, t),
                             flow_steps > 0 ? flow_steps : 128);
  const double xi_cell = std::pow(grid.dual_spacing(), grid.dim);

  // denominator: F pulled back through Phi(t), evaluated in closed form
  std::vector<double> den_rows(n, 0.0);
  std::vector<double> num_rows(n, 0.0);

  // numerator needs the synthesized field once
  PhaseSpaceField Fgrid = sample_phase_space(grid, F);
  SampledField u = adjoint_stft(Fgrid, gs, /*band_tol=*/1e-6);

#pragma omp parallel for schedule(static)
  for (std::size_t j = 0; j < n; ++j) {
    double x[2], xi[2], xs[2], xis[2];
    grid.point(j, x);
    double dacc = 0.0, nacc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      dual.point(k, xi);
      flow_light(pot, t, x, xi, steps, xs, xis);
      dacc += std::abs(F(xs, xis));
      nacc += std::abs(stft_at(u, gs, xs, xis));
    }
    den_rows[j] = dacc * xi_cell;
    num_rows[j] = nacc * xi_cell;
  }
  const double den = sup_l1(den_rows);
  if (den == 0.0) throw NormError("flow_projection_ratio: zero denominator");
  return sup_l1(num_rows) / den;
}

double flow_stft_decay_ratio(const Potential& pot, const Window& window, double s,
                             double t, const SampledField& f, int flow_steps) {
  const double t2 = det_time_limit(pot, pot.dim);
  if (std::abs(s) > t2 || std::abs(t) > t2)
    throw HorizonError("flow_stft_decay_ratio: |s|, |t| must be <= T2");
  if (t == 0.0) throw HorizonError("flow_stft_decay_ratio: t must be nonzero");
  const Window gs = evolved_window(window, s - window.time);
  const GridSpec& grid = f.grid;
  const GridSpec dual = grid.dual();
  const std::size_t n = grid.size();
  const int steps = std::max(min_flow_steps(pot, t),
                             flow_steps > 0 ? flow_steps : 128);
  const double xi_cell = std::pow(grid.dual_spacing(), grid.dim);

  std::vector<double> rows(n, 0.0);
#pragma omp parallel for schedule(static)
  for (std::size_t j = 0; j < n; ++j) {
    double x[2], xi[2], xs[2], xis[2];
    grid.point(j, x);
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      dual.point(k, xi);
      flow_light(pot, t, x, xi, steps, xs, xis);
      acc += std::abs(stft_at(f, gs, xs, xis));
    }
    rows[j] = acc * xi_cell;
  }
  const double den = amalgam_norm(f, 1.0, std::numeric_limits<double>::infinity(),
                                  window);
  if (den == 0.0) throw NormError("flow_stft_decay_ratio: zero denominator");
  return std::pow(std::abs(t), grid.dim) * sup_l1(rows) / den;
}

double strichartz_quotient(const Propagator& U, const SampledField& u0, double T,
                           const AdmissiblePair& pair, bool endpoint_mode,
                           int time_samples, const Window& window) {
  if (time_samples < 65)
    throw ConfigError("strichartz_quotient: >= 65 uniform time samples required");
  if (endpoint_mode && u0.grid.dim == 1)
    throw ConfigError("strichartz_quotient: endpoint mode requires n > 1");
  const std::vector<double> ts = uniform_times(T, time_samples);
  const double pprime = conjugate_exponent(pair.p);
  std::vector<double> norms(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    SampledField u = U(u0, ts[i]);
    norms[i] = endpoint_mode
                   ? amalgam_lorentz_norm(u, pair.p, window, 2.0)
                   : amalgam_norm(u, pair.p, pprime, window);
  }
  return time_mixed_norm(ts, norms, 0.5 * pair.r) / l2_norm(u0);
}

double retarded_quotient(const Potential& pot, const TimeField& F, double T,
                         const AdmissiblePair& pair, const AdmissiblePair& dual_pair,
                         int time_samples, const Window& window) {
  if (time_samples < 3 || time_samples % 2 == 0)
    throw ConfigError("retarded_quotient: need an odd count >= 3 (a node at t = 0)");
  const std::vector<double> ts = uniform_times(T, time_samples);
  const double dt = ts[1] - ts[0];
  const double split_dt = dt / 8.0;
  const double pprime = conjugate_exponent(pair.p);
  const int mid = (time_samples - 1) / 2;  // index of t = 0 for odd counts

  std::vector<double> norms(ts.size(), 0.0);
  // march I(t_{i+1}) = U(dt)[I(t_i) + (dt/2) F(t_i)] + (dt/2) F(t_{i+1})
  auto march = [&](int dir) {
    SampledField I = F(ts[mid]);  // shape only; zeroed below
    for (auto& v : I.values) v = cdouble{};
    int i = mid;
    while ((dir > 0 && i + 1 < time_samples) || (dir < 0 && i > 0)) {
      const int j = i + dir;
      SampledField fi = F(ts[i]);
      SampledField fj = F(ts[j]);
      for (std::size_t m = 0; m < I.values.size(); ++m)
        I.values[m] += 0.5 * dir * dt * fi.values[m];
      I = splitstep_prop(I, dir * dt, pot, split_dt, /*certify=*/false,
                         /*tail_tol=*/1.0);
      for (std::size_t m = 0; m < I.values.size(); ++m)
        I.values[m] += 0.5 * dir * dt * fj.values[m];
      norms[j] = amalgam_norm(I, pair.p, pprime, window, /*tail_tol=*/1.0);
      i = j;
    }
  };
  march(+1);
  march(-1);
  const double num = time_mixed_norm(ts, norms, 0.5 * pair.r);

  std::vector<double> fnorms(ts.size());
  const double ptilde = dual_pair.p;
  for (std::size_t i = 0; i < ts.size(); ++i)
    fnorms[i] = amalgam_norm(F(ts[i]), conjugate_exponent(ptilde), ptilde, window,
                             /*tail_tol=*/1.0);
  const double rho = conjugate_exponent(0.5 * dual_pair.r);
  const double den = time_mixed_norm(ts, fnorms, rho);
  if (den == 0.0) return 0.0;
  return num / den;
}

double dual_quotient(const Potential& pot, const TimeField& F, double T,
                     const AdmissiblePair& pair, int time_samples,
                     const Window& window) {
  if (time_samples < 3) throw ConfigError("dual_quotient: need >= 3 time samples");
  const std::vector<double> ts = uniform_times(T, time_samples);
  const double dt = ts[1] - ts[0];
  const double split_dt = dt / 8.0;

  SampledField acc = F(ts[0]);
  for (auto& v : acc.values) v = cdouble{};
  for (int i = 0; i < time_samples; ++i) {
    const double w = (i == 0 || i + 1 == time_samples) ? 0.5 * dt : dt;
    // e^{i s H} F(s) = U(-s) F(s)
    SampledField g = splitstep_prop(F(ts[i]), -ts[i], pot, split_dt,
                                    /*certify=*/false, /*tail_tol=*/1.0);
    for (std::size_t m = 0; m < acc.values.size(); ++m)
      acc.values[m] += w * g.values[m];
  }
  const double num = l2_norm(acc);

  std::vector<double> fnorms(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i)
    fnorms[i] = amalgam_norm(F(ts[i]), conjugate_exponent(pair.p), pair.p, window,
                             /*tail_tol=*/1.0);
  const double rho = conjugate_exponent(0.5 * pair.r);
  const double den = time_mixed_norm(ts, fnorms, rho);
  if (den == 0.0) return 0.0;
  return num / den;
}

}  // namespace walab
