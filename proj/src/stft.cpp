#include "walab/stft.hpp"

#include <cmath>

#include "walab/fft.hpp"
#include "walab/norms.hpp"

namespace walab {
namespace {

// Per-axis window factor table over grid offsets d = m - j, |d| <= reach.
// g(t, z) = amp * exp(-beta z^2) per axis after folding amp into axis 0.
struct AxisTable {
  int reach = 0;
  std::vector<cdouble> factor;  // index d + reach

  static AxisTable build(const Window& w, const GridSpec& g, bool conjugated) {
    AxisTable t;
    const double h = g.spacing();
    t.reach = std::min<int>(g.points_per_axis - 1,
                            static_cast<int>(std::floor(w.cutoff_radius() / h)));
    t.factor.resize(2 * t.reach + 1);
    cdouble beta = w.beta();
    if (conjugated) beta = std::conj(beta);
    for (int d = -t.reach; d <= t.reach; ++d) {
      const double z = d * h;
      t.factor[d + t.reach] = std::exp(-beta * (z * z));
    }
    return t;
  }
};

}  // namespace

double PhaseSpaceField::x_weight() const {
  return std::pow(xgrid.spacing(), xgrid.dim);
}

double PhaseSpaceField::xi_weight() const {
  return std::pow(xgrid.dual_spacing(), xgrid.dim);
}

double band_mass_fraction(const GridSpec& xgrid, const std::vector<cdouble>& values) {
  const GridSpec dual = xgrid.dual();
  const std::size_t cols = xgrid.size();
  const double edge = 0.75 * xgrid.nyquist();
  std::vector<char> near(cols, 0);
  double xi[2];
  for (std::size_t k = 0; k < cols; ++k) {
    dual.point(k, xi);
    for (int d = 0; d < xgrid.dim; ++d)
      if (std::abs(xi[d]) > edge) near[k] = 1;
  }
  double total = 0.0, tail = 0.0;
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t k = 0; k < cols; ++k) {
      const double m = std::norm(values[j * cols + k]);
      total += m;
      if (near[k]) tail += m;
    }
  return total > 0.0 ? tail / total : 0.0;
}

PhaseSpaceField make_phase_space_field(const GridSpec& xgrid,
                                       std::vector<cdouble> values) {
  if (values.size() != xgrid.size() * xgrid.size())
    throw GridError("make_phase_space_field: size mismatch");
  PhaseSpaceField F;
  F.xgrid = xgrid;
  F.values = std::move(values);
  F.band_tail_fraction = band_mass_fraction(xgrid, F.values);
  return F;
}

PhaseSpaceField sample_phase_space(const GridSpec& xgrid, const PhaseSpaceForm& form) {
  const std::size_t n = xgrid.size();
  std::vector<cdouble> vals(n * n);
  const GridSpec dual = xgrid.dual();
  double x[2], xi[2];
  for (std::size_t j = 0; j < n; ++j) {
    xgrid.point(j, x);
    for (std::size_t k = 0; k < n; ++k) {
      dual.point(k, xi);
      vals[j * n + k] = form(x, xi);
    }
  }
  return make_phase_space_field(xgrid, std::move(vals));
}

void stft_rows(const SampledField& f, const Window& w,
               const std::function<void(std::size_t, const cdouble*)>& sink,
               double tail_tol) {
  require_decay(f, tail_tol);
  if (w.dim != f.grid.dim) throw GridError("stft: window dimension mismatch");
  const GridSpec& g = f.grid;
  const int N = g.points_per_axis;
  const std::size_t total = g.size();
  const AxisTable tab = AxisTable::build(w, g, /*conjugated=*/true);
  const cdouble camp = std::conj(w.amp());

  if (g.dim == 1) {
#pragma omp parallel
    {
      std::vector<cdouble> buf(total);
#pragma omp for schedule(static)
      for (int j = 0; j < N; ++j) {
        std::fill(buf.begin(), buf.end(), cdouble{});
        const int lo = std::max(0, j - tab.reach);
        const int hi = std::min(N - 1, j + tab.reach);
        for (int m = lo; m <= hi; ++m)
          buf[m] = camp * tab.factor[m - j + tab.reach] * f.values[m];
        fourier_inplace(g, buf.data());
        sink(static_cast<std::size_t>(j), buf.data());
      }
    }
  } else {
#pragma omp parallel
    {
      std::vector<cdouble> buf(total);
#pragma omp for schedule(static)
      for (std::size_t j = 0; j < total; ++j) {
        const int j0 = static_cast<int>(j) / N;
        const int j1 = static_cast<int>(j) % N;
        std::fill(buf.begin(), buf.end(), cdouble{});
        const int lo0 = std::max(0, j0 - tab.reach), hi0 = std::min(N - 1, j0 + tab.reach);
        const int lo1 = std::max(0, j1 - tab.reach), hi1 = std::min(N - 1, j1 + tab.reach);
        for (int m0 = lo0; m0 <= hi0; ++m0) {
          const cdouble f0 = camp * tab.factor[m0 - j0 + tab.reach];
          for (int m1 = lo1; m1 <= hi1; ++m1)
            buf[static_cast<std::size_t>(m0) * N + m1] =
                f0 * tab.factor[m1 - j1 + tab.reach] *
                f.values[static_cast<std::size_t>(m0) * N + m1];
        }
        fourier_inplace(g, buf.data());
        sink(j, buf.data());
      }
    }
  }
}

PhaseSpaceField stft(const SampledField& f, const Window& w, double tail_tol) {
  const std::size_t n = f.grid.size();
  PhaseSpaceField F;
  F.xgrid = f.grid;
  F.values.resize(n * n);
  cdouble* out = F.values.data();
  stft_rows(
      f, w,
      [out, n](std::size_t row, const cdouble* vals) {
        std::copy(vals, vals + n, out + row * n);
      },
      tail_tol);
  F.band_tail_fraction = band_mass_fraction(F.xgrid, F.values);
  return F;
}

cdouble stft_at(const SampledField& f, const Window& w, const double* x,
                const double* xi) {
  const GridSpec& g = f.grid;
  const int N = g.points_per_axis;
  const double h = g.spacing();
  const double L = g.half_width;
  const double R = w.cutoff_radius();
  const cdouble camp = std::conj(w.amp());
  const cdouble cbeta = std::conj(w.beta());

  if (g.dim == 1) {
    int lo = static_cast<int>(std::ceil((x[0] - R + L) / h));
    int hi = static_cast<int>(std::floor((x[0] + R + L) / h));
    lo = std::max(lo, 0);
    hi = std::min(hi, N - 1);
    if (lo > hi) return {};
    const double y0 = g.coord(lo);
    const double z0 = y0 - x[0];
    // multiplicative recurrences for exp(-cbeta z^2) and exp(-i y xi)
    cdouble env = std::exp(-cbeta * (z0 * z0));
    cdouble step = std::exp(-cbeta * (2.0 * z0 * h + h * h));
    const cdouble step2 = std::exp(-cbeta * (2.0 * h * h));
    cdouble phase = std::exp(cdouble{0.0, -y0 * xi[0]});
    const cdouble pstep = std::exp(cdouble{0.0, -h * xi[0]});
    cdouble acc{};
    for (int b = lo; b <= hi; ++b) {
      acc += env * phase * f.values[b];
      env *= step;
      step *= step2;
      phase *= pstep;
    }
    return camp * h * acc;
  }

  int lo[2], hi[2];
  for (int d = 0; d < 2; ++d) {
    lo[d] = std::max(0, static_cast<int>(std::ceil((x[d] - R + L) / h)));
    hi[d] = std::min(N - 1, static_cast<int>(std::floor((x[d] + R + L) / h)));
    if (lo[d] > hi[d]) return {};
  }
  cdouble acc{};
  for (int b0 = lo[0]; b0 <= hi[0]; ++b0) {
    const double z0 = g.coord(b0) - x[0];
    const cdouble f0 = std::exp(-cbeta * (z0 * z0)) *
                       std::exp(cdouble{0.0, -g.coord(b0) * xi[0]});
    for (int b1 = lo[1]; b1 <= hi[1]; ++b1) {
      const double z1 = g.coord(b1) - x[1];
      acc += f0 * std::exp(-cbeta * (z1 * z1)) *
             std::exp(cdouble{0.0, -g.coord(b1) * xi[1]}) *
             f.values[static_cast<std::size_t>(b0) * N + b1];
    }
  }
  return camp * h * h * acc;
}

SampledField adjoint_stft(const PhaseSpaceField& F, const Window& w, double band_tol) {
  if (F.band_tail_fraction > band_tol)
    throw DecayError("adjoint_stft: phase-space mass too close to the Nyquist band");
  const GridSpec& g = F.xgrid;
  const int N = g.points_per_axis;
  const std::size_t n = g.size();
  // synthesize the xi-sums first: T(m, .) = (2 pi)^-n (pi/L)^n sum_k F(m,k) e^{i x.xi_k}
  std::vector<cdouble> synth = F.values;
#pragma omp parallel for schedule(static)
  for (std::size_t m = 0; m < n; ++m) inv_fourier_inplace(g, synth.data() + m * n);

  const AxisTable tab = AxisTable::build(w, g, /*conjugated=*/false);
  const cdouble amp = w.amp();
  const double wx = std::pow(g.spacing(), g.dim);
  std::vector<cdouble> out(n);

  if (g.dim == 1) {
#pragma omp parallel for schedule(static)
    for (int j = 0; j < N; ++j) {
      const int lo = std::max(0, j - tab.reach);
      const int hi = std::min(N - 1, j + tab.reach);
      cdouble acc{};
      for (int m = lo; m <= hi; ++m)
        acc += tab.factor[j - m + tab.reach] * synth[static_cast<std::size_t>(m) * n + j];
      out[j] = wx * amp * acc;
    }
  } else {
#pragma omp parallel for schedule(static)
    for (std::size_t j = 0; j < n; ++j) {
      const int j0 = static_cast<int>(j) / N;
      const int j1 = static_cast<int>(j) % N;
      const int lo0 = std::max(0, j0 - tab.reach), hi0 = std::min(N - 1, j0 + tab.reach);
      const int lo1 = std::max(0, j1 - tab.reach), hi1 = std::min(N - 1, j1 + tab.reach);
      cdouble acc{};
      for (int m0 = lo0; m0 <= hi0; ++m0) {
        const cdouble f0 = tab.factor[j0 - m0 + tab.reach];
        cdouble inner{};
        for (int m1 = lo1; m1 <= hi1; ++m1)
          inner += tab.factor[j1 - m1 + tab.reach] *
                   synth[(static_cast<std::size_t>(m0) * N + m1) * n + j];
        acc += f0 * inner;
      }
      out[j] = wx * amp * acc;
    }
  }
  return make_field(g, std::move(out));
}

double cross_ambiguity_ratio(double s, double t, const PhaseSpaceField& F, double p,
                             double q) {
  const double den = mixed_norm(F, p, q);
  if (den == 0.0) throw NormError("cross_ambiguity_ratio: zero denominator");
  const Window gt = evolved_window(gaussian_window(F.xgrid.dim), t);
  const Window gs = evolved_window(gaussian_window(F.xgrid.dim), s);
  SampledField u = adjoint_stft(F, gt);
  PhaseSpaceField G = stft(u, gs, /*tail_tol=*/1e-6);
  return mixed_norm(G, p, q) / den;
}

}  // namespace walab
