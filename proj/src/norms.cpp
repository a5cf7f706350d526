#include "walab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "walab/fft.hpp"
#include "walab/quad.hpp"

namespace walab {
namespace {

void check_exponent(double e, const char* who) {
  if (std::isnan(e) || e < 1.0) throw NormError(std::string(who) + ": exponent must be >= 1");
}

double lq_of_row(const cdouble* row, std::size_t n, double q, double cell) {
  if (std::isinf(q)) {
    double m = 0.0;
    for (std::size_t k = 0; k < n; ++k) m = std::max(m, std::abs(row[k]));
    return m;
  }
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) acc += std::pow(std::abs(row[k]), q);
  return std::pow(cell * acc, 1.0 / q);
}

double lp_of_slots(const std::vector<double>& inner, double p, double cell) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : inner) m = std::max(m, v);
    return m;
  }
  double acc = 0.0;
  for (double v : inner) acc += std::pow(v, p);
  return std::pow(cell * acc, 1.0 / p);
}

}  // namespace

double mixed_norm(const PhaseSpaceField& F, double p_x, double q_xi) {
  check_exponent(p_x, "mixed_norm");
  check_exponent(q_xi, "mixed_norm");
  const std::size_t n = F.rows();
  std::vector<double> inner(n);
  for (std::size_t j = 0; j < n; ++j)
    inner[j] = lq_of_row(F.values.data() + j * n, n, q_xi, F.xi_weight());
  return lp_of_slots(inner, p_x, F.x_weight());
}

double lorentz_norm(WeightedSamples ws, double p, double q) {
  if (std::isnan(p) || p <= 1.0)
    throw NormError("lorentz_norm: p must lie in (1, inf]");
  check_exponent(q, "lorentz_norm");
  if (std::isinf(p) && !std::isinf(q))
    throw NormError("lorentz_norm: (p, q) = (inf, finite) is degenerate");
  for (const auto& [v, m] : ws.items) {
    if (v < 0.0 || !(m > 0.0))
      throw NormError("lorentz_norm: magnitudes must be >= 0, measures > 0");
  }
  auto& items = ws.items;
  std::stable_sort(items.begin(), items.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });

  if (std::isinf(q)) {
    if (std::isinf(p)) return items.empty() ? 0.0 : items.front().first;
    double cum = 0.0, best = 0.0;
    for (const auto& [v, m] : items) {
      if (v == 0.0) break;
      cum += m;
      best = std::max(best, std::pow(cum, 1.0 / p) * v);
    }
    return best;
  }
  // sum over steps of v^q (c_i^{q/p} - c_{i-1}^{q/p}): exact integral of the
  // step rearrangement against (q/p) t^{q/p - 1}
  const double e = q / p;
  double cum = 0.0, prev_pow = 0.0, acc = 0.0;
  for (const auto& [v, m] : items) {
    if (v == 0.0) break;
    cum += m;
    const double cur_pow = std::pow(cum, e);
    acc += std::pow(v, q) * (cur_pow - prev_pow);
    prev_pow = cur_pow;
  }
  return std::pow(acc, 1.0 / q);
}

double amalgam_norm(const SampledField& f, double p, double q, const Window& w,
                    double tail_tol) {
  check_exponent(p, "amalgam_norm");
  check_exponent(q, "amalgam_norm");
  const std::size_t n = f.grid.size();
  const double xi_cell = std::pow(f.grid.dual_spacing(), f.grid.dim);
  std::vector<double> inner(n);
  stft_rows(
      f, w,
      [&](std::size_t row, const cdouble* vals) {
        inner[row] = lq_of_row(vals, n, q, xi_cell);
      },
      tail_tol);
  return lp_of_slots(inner, p, std::pow(f.grid.spacing(), f.grid.dim));
}

double amalgam_lorentz_norm(const SampledField& f, double p, const Window& w,
                            double inner_q, double tail_tol) {
  if (f.grid.dim == 1 && std::isinf(p))
    throw NormError("amalgam_lorentz_norm: the n = 1 endpoint is excluded");
  if (std::isnan(p) || p <= 1.0)
    throw NormError("amalgam_lorentz_norm: p must lie in (1, inf]");
  const double pprime = std::isinf(p) ? 1.0 : p / (p - 1.0);
  const std::size_t n = f.grid.size();
  const double xi_cell = std::pow(f.grid.dual_spacing(), f.grid.dim);
  std::vector<double> inner(n);
  stft_rows(
      f, w,
      [&](std::size_t row, const cdouble* vals) {
        WeightedSamples ws;
        ws.items.reserve(n);
        for (std::size_t k = 0; k < n; ++k)
          ws.items.emplace_back(std::abs(vals[k]), xi_cell);
        inner[row] = lorentz_norm(std::move(ws), pprime, inner_q);
      },
      tail_tol);
  return lp_of_slots(inner, p, std::pow(f.grid.spacing(), f.grid.dim));
}

double time_mixed_norm(const std::vector<double>& times,
                       const std::vector<double>& spatial_norms, double rho) {
  if (times.empty() || times.size() != spatial_norms.size())
    throw NormError("time_mixed_norm: empty or mismatched trajectory");
  check_exponent(rho, "time_mixed_norm");
  if (std::isinf(rho)) {
    double m = 0.0;
    for (double v : spatial_norms) m = std::max(m, v);
    return m;
  }
  if (times.size() < 2) throw NormError("time_mixed_norm: need >= 2 snapshots");
  const double dt = times[1] - times[0];
  double acc = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double wgt = (i == 0 || i + 1 == times.size()) ? 0.5 * dt : dt;
    acc += wgt * std::pow(spatial_norms[i], rho);
  }
  return std::pow(acc, 1.0 / rho);
}

double w_inf1_norm_refined(const SampledField& f, const Window& w, double coarse_dx,
                           double tail_tol) {
  if (f.grid.dim != 1)
    throw NormError("w_inf1_norm_refined: implemented for n = 1 only");
  require_decay(f, tail_tol);
  const GridSpec& g = f.grid;
  const int N = g.points_per_axis;
  const double h = g.spacing();
  const double L = g.half_width;
  const double R = w.cutoff_radius();
  const cdouble camp = std::conj(w.amp());
  const cdouble cbeta = std::conj(w.beta());
  const double xi_cell = g.dual_spacing();

  auto slice_l1 = [&](double x) {
    std::vector<cdouble> buf(static_cast<std::size_t>(N), cdouble{});
    int lo = std::max(0, static_cast<int>(std::ceil((x - R + L) / h)));
    int hi = std::min(N - 1, static_cast<int>(std::floor((x + R + L) / h)));
    for (int m = lo; m <= hi; ++m) {
      const double z = g.coord(m) - x;
      buf[m] = camp * std::exp(-cbeta * (z * z)) * f.values[m];
    }
    fourier_inplace(g, buf.data());
    double acc = 0.0;
    for (int k = 0; k < N; ++k) acc += std::abs(buf[k]);
    return xi_cell * acc;
  };

  double best = 0.0, best_x = 0.0;
  const int steps = static_cast<int>(std::ceil(2.0 * L / coarse_dx));
  for (int i = 0; i <= steps; ++i) {
    const double x = -L + 2.0 * L * i / steps;
    const double v = slice_l1(x);
    if (v > best) {
      best = v;
      best_x = x;
    }
  }
  const double refined = maximize_scalar(slice_l1, best_x - coarse_dx,
                                         best_x + coarse_dx, 1e-7);
  return std::max(best, refined);
}

}  // namespace walab
