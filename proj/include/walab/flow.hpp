#pragma once

#include <array>
#include <vector>

#include "walab/potential.hpp"

namespace walab {

// Hamiltonian flow of xdot = xi, xidot = -grad V(x), with the variational
// system and the accumulated phase
//   phase(t) = int_0^t [ |xi|^2/2 + V(x) - grad V(x).x ] dtau
// along the same trajectory.
struct FlowPoint {
  int dim = 1;
  std::array<double, 2> x{};
  std::array<double, 2> xi{};
  // (2n)x(2n) row-major; rows 0..n-1 are dx(t)/d(x0,xi0), rows n..2n-1 dxi(t)/d(x0,xi0)
  std::array<double, 16> jac{};
  double phase = 0.0;
  double t = 0.0;
};

// Minimum admissible step budget ceil(64 |t| (1 + M)), bumped to an even count.
int min_flow_steps(const Potential& pot, double t);
int default_flow_steps(const Potential& pot, double t);

// Stoermer-Verlet integration; the variational matrix is advanced by the
// exact Jacobian of the discrete map (a product of shears, so volume is
// conserved to round-off), and the phase by composite Simpson on the nodes.
FlowPoint flow(const Potential& pot, double t, const double* x0, const double* xi0,
               int steps);

double flow_det(const FlowPoint& fp);

// Trajectory and phase only (no variational system, no allocation); the
// workhorse for per-node phase-space pullbacks. Returns the accumulated phase.
double flow_light(const Potential& pot, double t, const double* x0, const double* xi0,
                  int steps, double* x_out, double* xi_out);

// det( d x(t; x, xi/t) / d xi ) / 1 = det(X(t))/t^n for the variational block
// started as (X, Xi)(0) = (0, I) at (x, xi/t); value 1 on the limit branch
// |t| < 1e-6. Requires |t| <= T2 of the potential.
double scaled_det(const Potential& pot, double t, const double* x, const double* xi,
                  int steps);

struct SeparationTuple {
  std::array<double, 2> x{}, xi{}, z{}, eta{};
};
struct SeparationReport {
  int checked = 0;
  int violations = 0;
  double worst_slack = 0.0;  // most negative margin seen (>= -slack passes)
  bool energy_bound_ok = true;
};

// Flow separation inequalities
//   |x(t;x,xi)-x(t;z,eta)|  >= (5|x-z| - 3|xi-eta|)/6 - slack
//   |xi(t;x,xi)-xi(t;z,eta)| >= (|xi-eta| - |x-z|)/2 - slack
// for |t| < T1, plus the Gronwall energy bound
//   |X(t)|^2 + |Xi(t)|^2 <= 2M (|X|^2+|Xi|^2) e^{2M|t|}.
SeparationReport check_separation(const Potential& pot, double t,
                                  const std::vector<SeparationTuple>& tuples,
                                  int steps, double slack = 1e-9);

}  // namespace walab
