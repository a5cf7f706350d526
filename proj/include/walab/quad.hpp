#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace walab {

// Gauss-Legendre nodes/weights on [a, b]. Nodes ascending, deterministic.
struct QuadRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

QuadRule gauss_legendre(int n, double a = -1.0, double b = 1.0);

// Golden-section + parabolic refinement of a smooth 1-d maximum on [a, b].
// Returns the maximal value found; xtol is the abscissa tolerance.
double maximize_scalar(const std::function<double(double)>& f, double a, double b,
                       double xtol = 1e-7);

// Least-squares line y = slope*x + intercept.
struct LineFit {
  double slope;
  double intercept;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// Largest root of an increasing function on [0, hi] by bisection
// (f(0) < 0 assumed); returns hi if f(hi) < 0.
double bisect_increasing(const std::function<double(double)>& f, double hi,
                         double tol = 1e-12);

}  // namespace walab
