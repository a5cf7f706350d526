#pragma once

#include <array>
#include <functional>
#include <string>

#include "walab/core.hpp"

namespace walab {

// Smooth real potential with bounded second derivatives; hessian_sup is a
// certified bound on sup_x max_{|a|=2} |d^a V|.
struct Potential {
  enum class Kind { zero, harmonic, inverted_harmonic, stark, cosine, quad_plus_trig, custom };

  Kind kind = Kind::zero;
  int dim = 1;
  std::string name = "zero";
  std::array<double, 2> stark_field{0.0, 0.0};
  double hessian_sup = 0.0;
  bool zero_hessian = true;
  bool exact_propagator = true;

  std::function<double(const double*, int)> custom_value;
  std::function<void(const double*, int, double*)> custom_grad;
  std::function<void(const double*, int, double*)> custom_hess;

  double value(const double* x) const;
  void gradient(const double* x, double* g) const;
  void hessian(const double* x, double* h) const;  // dim x dim row-major
};

// name in {zero, harmonic, inverted_harmonic, stark, cosine, quad_plus_trig};
// stark takes the field vector E (E[1] ignored for dim 1).
Potential builtin_potential(const std::string& name, int dim = 1,
                            std::array<double, 2> stark_field = {0.0, 0.0});

// Custom potentials must declare their own hessian_sup; the certificate
// checks below guard the claim.
Potential custom_potential(int dim, std::function<double(const double*, int)> value,
                           std::function<void(const double*, int, double*)> grad,
                           std::function<void(const double*, int, double*)> hess,
                           double hessian_sup);

// max relative gradient error against central differences of V over random
// points in [-box, box]^n, and the same for the Hessian against the gradient.
double check_gradient_consistency(const Potential& pot, int points, double box,
                                  std::uint64_t seed);
double check_hessian_consistency(const Potential& pot, int points, double box,
                                 std::uint64_t seed);
// largest sampled |Hessian entry|; must not exceed hessian_sup.
double sampled_hessian_max(const Potential& pot, int points, double box,
                           std::uint64_t seed);

// M = 1 + n^2 sup|Hess|: Gronwall constant of the flow separation bounds.
double flow_growth_constant(const Potential& pot, int n);
// Largest T with 2 M^{3/2} e^{M T} T < 1/2 and T < 1/3 (bisection to 1e-12,
// then shrunk by 0.999 to keep strictness).
double separation_time_limit(double M);
// Largest T with n (1 + sup|Hess|) T^2 <= 1/4, capped at 1/3: sufficient for
// the scaled-Jacobian determinant window [1/2, 2].
double det_time_limit(const Potential& pot, int n);

struct FlowHorizons {
  double growth;            // M
  double t_separation;      // T1
  double hessian_plus_one;  // M'
  double t_jacobian;        // T2
};
FlowHorizons flow_horizons(const Potential& pot, int n);

}  // namespace walab
