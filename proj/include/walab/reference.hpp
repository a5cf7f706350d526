#pragma once

#include "walab/flow.hpp"
#include "walab/norms.hpp"
#include "walab/stft.hpp"

// Serial reference implementations: direct summation, no FFT, no OpenMP, no
// windowing cutoffs. They define the semantics the fast kernels are tested
// against and feed the serial-vs-parallel benchmark. Costs are O(N^2)-O(N^3);
// keep grids small.
namespace walab::ref {

SampledField fourier(const SampledField& f);
SampledField inv_fourier(const SampledField& F);

PhaseSpaceField stft(const SampledField& f, const Window& w);
SampledField adjoint_stft(const PhaseSpaceField& F, const Window& w);

double mixed_norm(const PhaseSpaceField& F, double p, double q);

// Lorentz quasi-norm by numerical quadrature of the rearrangement integral on
// a fine dyadic t-grid; an independent cross-check of the closed-form steps.
double lorentz_norm_quadrature(const WeightedSamples& ws, double p, double q,
                               int subdivisions = 4096);

// Classical RK4 on the Hamilton equations: an integrator of a different
// family, used as the trajectory oracle for the symplectic path.
FlowPoint flow_rk4(const Potential& pot, double t, const double* x0,
                   const double* xi0, int steps);

}  // namespace walab::ref
