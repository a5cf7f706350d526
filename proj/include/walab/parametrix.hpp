#pragma once

#include "walab/flow.hpp"
#include "walab/propagators.hpp"
#include "walab/stft.hpp"

namespace walab {

// Taylor remainder of V expanded to first order at x and evaluated at y,
//   K(x, y) = V(y) - V(x) - grad V(x).(y - x)
//           = int_0^1 (1-theta) (y-x)^T Hess V(x + theta (y-x)) (y-x) dtheta.
// Builtins use the closed form; the quadrature route (16-node Gauss-Legendre,
// exact for the polynomial Hessians of the builtins) backs custom potentials
// and serves as the cross-check.
double remainder_kernel(const Potential& pot, const double* x, const double* y);
double remainder_kernel_quadrature(const Potential& pot, const double* x,
                                   const double* y);

// R~(s)u(x, xi) = int K(x, y) conj(g(s, y-x)) u(y) exp(-i y.xi) dy on the
// full phase-space grid. Identically zero for zero-Hessian potentials.
PhaseSpaceField taylor_remainder_stft(const SampledField& u, double s,
                                      const Potential& pot, const Window& window);

// The same integral at an arbitrary phase-space point (flow pullback path).
cdouble taylor_remainder_at(const SampledField& u, double s, const Potential& pot,
                            const Window& window, const double* x, const double* xi);

// M(t, s)(x, xi) = exp(-i int_s^t h(tau - t; x, xi) dtau): the action
// multiplier anchored at the outer time t; equals exp(+i phase(s-t; x, xi))
// for the flow phase accumulated from (x, xi). Unimodular.
cdouble phase_multiplier(double t, double s, const Potential& pot, const double* x,
                         const double* xi, int flow_steps = -1);

// Parametrix U0(t) f = V_{g(t)}^* M(t,0) [V_g f o Phi(-t)]: per node flow to
// Phi(-t)(x_j, xi_k), evaluate V_g f there by direct quadrature, multiply by
// the phase, then synthesize with the evolved window. |t| <= min(T1, T2).
SampledField parametrix_u0(const SampledField& f, double t, const Potential& pot,
                           const Window& window, int flow_steps = -1);

// Remainder operator R(t,s) u = V_{g(t)}^* M(t,s) [R~(s)u o Phi(s-t)].
SampledField remainder_r(const SampledField& u, double t, double s,
                         const Potential& pot, const Window& window,
                         int flow_steps = -1);

// Defect (i d_t - H) U0(t) f: the Taylor-kernel synthesis applied to the same
// pulled-back rows as U0, with a minus sign from
//   V(x(t)) + (x - x(t)).grad V(x(t)) - V(x) = -K(x(t), x).
SampledField parametrix_defect(const SampledField& f, double t, const Potential& pot,
                               const Window& window, int flow_steps = -1);

// | U(t)u0 - U0(t)u0 + i sum_k w_k R(t, s_k) U(s_k) u0 |_2 / |u0|_2 with
// K-node Gauss-Legendre in s and U from split-step (dt = |t|/(8K)); flow and
// split resolution are tied to K so the residual contracts under refinement.
double duhamel_residual(const SampledField& u0, double t, const Potential& pot,
                        const Window& window, int quad_nodes);

}  // namespace walab
