// Timing comparison of the serial reference kernels against the production
// (FFT + OpenMP) kernels over a small grid ladder.
#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "walab/fft.hpp"
#include "walab/norms.hpp"
#include "walab/reference.hpp"

using namespace walab;

namespace {

template <class F>
double time_ms(F&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (no OpenMP)\n");
#endif
  std::printf("%6s %14s %14s %14s %10s\n", "N", "kernel", "serial_ms", "fast_ms",
              "speedup");

  const Window w = gaussian_window(1);
  for (int N : {64, 128, 256}) {
    const GridSpec grid = make_grid(1, N, 12.0);
    const SampledField f = sample(grid, gaussian_form(1.0));

    double serial = time_ms([&] { ref::fourier(f); });
    double fast = time_ms([&] { fourier(f); });
    std::printf("%6d %14s %14.3f %14.3f %9.1fx\n", N, "fourier", serial, fast,
                serial / fast);

    serial = time_ms([&] { ref::stft(f, w); });
    fast = time_ms([&] { stft(f, w); });
    std::printf("%6d %14s %14.3f %14.3f %9.1fx\n", N, "stft", serial, fast,
                serial / fast);

    const PhaseSpaceField F = stft(f, w);
    serial = time_ms([&] { ref::adjoint_stft(F, w); });
    fast = time_ms([&] { adjoint_stft(F, w); });
    std::printf("%6d %14s %14.3f %14.3f %9.1fx\n", N, "adjoint_stft", serial, fast,
                serial / fast);

    serial = time_ms([&] { ref::mixed_norm(F, 4.0, 2.0); });
    fast = time_ms([&] { mixed_norm(F, 4.0, 2.0); });
    std::printf("%6d %14s %14.3f %14.3f %9.1fx\n", N, "mixed_norm", serial, fast,
                serial / fast);
  }

  // flow ensemble: symplectic production path vs RK4 reference
  const Potential pot = builtin_potential("cosine");
  const int seeds = 2000;
  double serial = time_ms([&] {
    for (int i = 0; i < seeds; ++i) {
      double x0 = -4.0 + 8.0 * i / seeds, xi0 = 1.0;
      ref::flow_rk4(pot, 1.0, &x0, &xi0, 512);
    }
  });
  double fast = time_ms([&] {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < seeds; ++i) {
      double x0 = -4.0 + 8.0 * i / seeds, xi0 = 1.0;
      flow(pot, 1.0, &x0, &xi0, 512);
    }
  });
  std::printf("%6d %14s %14.3f %14.3f %9.1fx\n", seeds, "flow_ensemble", serial,
              fast, serial / fast);
  return 0;
}
