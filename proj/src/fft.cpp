#include "walab/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

namespace walab {
namespace {

// FFTW plan cache keyed by (dim, N, sign). Plans are created once under a lock
// (FFTW planning is not thread-safe) and executed via the new-array interface.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache c;
    return c;
  }

  fftw_plan get(int dim, int n, int sign) {
    std::lock_guard<std::mutex> lock(mu_);
    const Key key{dim, n, sign};
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    std::size_t total = 1;
    for (int d = 0; d < dim; ++d) total *= static_cast<std::size_t>(n);
    fftw_complex* buf = fftw_alloc_complex(total);
    fftw_plan p = dim == 1
                      ? fftw_plan_dft_1d(n, buf, buf, sign,
                                         FFTW_ESTIMATE | FFTW_UNALIGNED)
                      : fftw_plan_dft_2d(n, n, buf, buf, sign,
                                         FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    plans_.emplace(key, p);
    return p;
  }

 private:
  using Key = std::tuple<int, int, int>;
  std::mutex mu_;
  std::map<Key, fftw_plan> plans_;
};

// Alternating-sign phases turn the centered grids into FFTW's 0-based DFT:
//   exp(-i x_j xi_k) = (-1)^(j) (-1)^(k + N/2) exp(-2 pi i j k / N) per axis.
void apply_primal_phase(const GridSpec& g, cdouble* data) {
  const int N = g.points_per_axis;
  if (g.dim == 1) {
    for (int j = 1; j < N; j += 2) data[j] = -data[j];
  } else {
    for (int j0 = 0; j0 < N; ++j0)
      for (int j1 = 0; j1 < N; ++j1)
        if ((j0 + j1) & 1) data[static_cast<std::size_t>(j0) * N + j1] =
            -data[static_cast<std::size_t>(j0) * N + j1];
  }
}

void apply_dual_phase(const GridSpec& g, cdouble* data) {
  const int N = g.points_per_axis;
  const int half = N / 2;
  if (g.dim == 1) {
    for (int k = 0; k < N; ++k)
      if ((k + half) & 1) data[k] = -data[k];
  } else {
    // (k0 + N/2) + (k1 + N/2) == k0 + k1 (mod 2): the half offsets cancel.
    for (int k0 = 0; k0 < N; ++k0)
      for (int k1 = 0; k1 < N; ++k1)
        if ((k0 + k1) & 1) data[static_cast<std::size_t>(k0) * N + k1] =
            -data[static_cast<std::size_t>(k0) * N + k1];
  }
}

void run_fft(const GridSpec& g, cdouble* data, int sign) {
  fftw_plan p = PlanCache::instance().get(g.dim, g.points_per_axis, sign);
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(data),
                   reinterpret_cast<fftw_complex*>(data));
}

}  // namespace

void fourier_inplace(const GridSpec& primal, cdouble* data) {
  apply_primal_phase(primal, data);
  run_fft(primal, data, FFTW_FORWARD);
  apply_dual_phase(primal, data);
  const double w = std::pow(primal.spacing(), primal.dim);
  const std::size_t total = primal.size();
  for (std::size_t i = 0; i < total; ++i) data[i] *= w;
}

void inv_fourier_inplace(const GridSpec& primal, cdouble* data) {
  apply_dual_phase(primal, data);
  run_fft(primal, data, FFTW_BACKWARD);
  apply_primal_phase(primal, data);
  const double w = std::pow(1.0 / (2.0 * primal.half_width), primal.dim);
  const std::size_t total = primal.size();
  for (std::size_t i = 0; i < total; ++i) data[i] *= w;
}

SampledField fourier(const SampledField& f) {
  std::vector<cdouble> out = f.values;
  fourier_inplace(f.grid, out.data());
  SampledField F;
  F.grid = f.grid.dual();
  F.values = std::move(out);
  F.tail_fraction = boundary_mass_fraction(F.grid, F.values);
  return F;
}

SampledField inv_fourier(const SampledField& F) {
  const GridSpec primal = F.grid.dual();
  std::vector<cdouble> out = F.values;
  inv_fourier_inplace(primal, out.data());
  SampledField f;
  f.grid = primal;
  f.values = std::move(out);
  f.tail_fraction = boundary_mass_fraction(f.grid, f.values);
  return f;
}

}  // namespace walab
