#pragma once

#include "walab/core.hpp"

namespace walab {

// Largest |t| accepted for the freely evolved window.
inline constexpr double kWindowHorizon = 4.0;

// Gaussian analysis window g(y) = pi^(-n/4) exp(-|y|^2/2), normalized in L2,
// together with its free evolution g(t) = exp(i t Lap / 2) g in closed form:
//   g(t, y) = pi^(-n/4) (1 + i t)^(-n/2) exp(-|y|^2 / (2 (1 + i t))).
struct Window {
  int dim = 1;
  double time = 0.0;

  cdouble width_factor() const;  // (1 + i t)
  cdouble amp() const;           // pi^(-n/4) (1+it)^(-n/2)
  cdouble beta() const;          // 1 / (2 (1+it)); g = amp * exp(-beta |y|^2)
  cdouble value(const double* y) const;
  double sup_abs() const;  // pi^(-n/4) (1+t^2)^(-n/4)
  // |g(t,y)| falls below eps * sup beyond this radius.
  double cutoff_radius(double eps = kWindowCut) const;
  SampledField sample_on(const GridSpec& grid) const;
};

Window gaussian_window(int dim = 1);
// Free evolution of an (already evolved) window; times compose additively.
Window evolved_window(const Window& w, double t);

}  // namespace walab
