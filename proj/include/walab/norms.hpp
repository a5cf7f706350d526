#pragma once

#include <utility>
#include <vector>

#include "walab/stft.hpp"

namespace walab {

// Outer L^p over x of the inner L^q over xi, with h^n and (pi/L)^n cell
// weights; p or q may be infinity.
double mixed_norm(const PhaseSpaceField& F, double p_x, double q_xi);

// (magnitude, cell measure) pairs for rearrangement-based norms.
struct WeightedSamples {
  std::vector<std::pair<double, double>> items;
};

// Lorentz quasi-norm via the non-increasing rearrangement, evaluated exactly
// on the step function (closed form per step):
//   ( q/p  int_0^inf [t^{1/p} f*(t)]^q dt/t )^{1/q},  sup_t t^{1/p} f*(t) for q = inf.
// p = 1 is rejected (norm equivalence holds only for p != 1), as is finite q
// with p = inf (degenerate scale).
double lorentz_norm(WeightedSamples ws, double p, double q);

// |f|_{W^{p,q}} = outer L^p in x of inner L^q in xi of V_g f. Streaming over
// x-rows; never materializes the full phase-space field.
double amalgam_norm(const SampledField& f, double p, double q, const Window& w,
                    double tail_tol = kDefaultTailTol);

// Lorentz-refined amalgam norm: inner Lorentz(p', inner_q) quasi-norm of each
// xi-slice, then outer L^p in x. inner_q = 2 is the endpoint refinement.
// The n = 1 endpoint (p = inf) is rejected.
double amalgam_lorentz_norm(const SampledField& f, double p, const Window& w,
                            double inner_q = 2.0, double tail_tol = kDefaultTailTol);

// Outer L^rho over a uniformly sampled trajectory by trapezoid weights; the
// trajectory is given as per-snapshot spatial norms.
double time_mixed_norm(const std::vector<double>& times,
                       const std::vector<double>& spatial_norms, double rho);

// sup_x int |V_g f(x, xi)| dxi with the x-supremum refined off-grid by a 1-d
// search (grid maxima undersample the sup; covariance checks need it sharp).
// coarse_dx is the scan spacing; the window scale bounds the sup's variation.
double w_inf1_norm_refined(const SampledField& f, const Window& w,
                           double coarse_dx = 0.3, double tail_tol = kDefaultTailTol);

}  // namespace walab
