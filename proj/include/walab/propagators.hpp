#pragma once

#include "walab/core.hpp"
#include "walab/potential.hpp"

namespace walab {

// exp(i t Lap / 2): spectral multiplier exp(-i t |xi|^2 / 2); unitary on L2.
SampledField free_prop(const SampledField& f, double t,
                       double tail_tol = kDefaultTailTol);

// Stark propagator exp(-i t (-Lap/2 + E.x)) through the exact factorization
//   exp(-i E^2 t^3 / 6) exp(-i t E.x) T_{-E t^2/2} exp(i t Lap / 2),
// with the translation applied as a spectral phase shift.
SampledField stark_prop(const SampledField& f, double t, std::array<double, 2> field,
                        double tail_tol = kDefaultTailTol);
inline SampledField stark_prop(const SampledField& f, double t, double field,
                               double tail_tol = kDefaultTailTol) {
  return stark_prop(f, t, std::array<double, 2>{field, 0.0}, tail_tol);
}

// Oscillator / inverted-oscillator propagator exp(-i t (-Lap/2 +- x^2/2)) in
// the exact factorized kernel form
//   sign +1:  chirp(tan(t/2)) o free(sin t) o chirp(tan(t/2)),  |t - k pi| >= 0.05
//   sign -1:  chirp(-tanh(t/2)) o free(sinh t) o chirp(-tanh(t/2))
// where chirp(a) multiplies by exp(-i a x^2 / 2). This is the closed-form
// kernel evaluated stably; the split-step propagator is the cross-check.
SampledField harmonic_prop(const SampledField& f, double t, int sign,
                           double tail_tol = kDefaultTailTol);

// Strang splitting exp(-i dt V / 2) exp(i dt Lap / 2) exp(-i dt V / 2); when
// certify is set, the step is accepted only if halving it moves the result
// by less than 1e-8 in relative L2.
SampledField splitstep_prop(const SampledField& f, double t, const Potential& pot,
                            double dt, bool certify = true,
                            double tail_tol = kDefaultTailTol);

// -Lap u / 2 + V u (spectral Laplacian), the generator applied to a field.
SampledField apply_hamiltonian(const SampledField& f, const Potential& pot);

}  // namespace walab
