#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "walab/potential.hpp"

using namespace walab;

TEST_CASE("builtin potentials and certificates") {
  const Potential zero = builtin_potential("zero");
  CHECK(zero.hessian_sup == 0.0);
  CHECK(zero.zero_hessian);

  const Potential harm = builtin_potential("harmonic");
  CHECK(harm.hessian_sup == 1.0);
  CHECK_FALSE(harm.zero_hessian);

  const Potential stark = builtin_potential("stark", 1, {2.0, 0.0});
  CHECK(stark.hessian_sup == 0.0);
  CHECK(stark.zero_hessian);
  CHECK(stark.exact_propagator);
  const double x = 1.7;
  CHECK(stark.value(&x) == doctest::Approx(3.4));

  const Potential cosine = builtin_potential("cosine");
  CHECK(cosine.hessian_sup == 1.0);
  const Potential qt = builtin_potential("quad_plus_trig");
  CHECK(qt.hessian_sup == 2.0);

  CHECK_THROWS_AS(builtin_potential("quartic"), ConfigError);

  for (const char* name :
       {"zero", "harmonic", "inverted_harmonic", "stark", "cosine", "quad_plus_trig"}) {
    for (int dim : {1, 2}) {
      const Potential p = builtin_potential(name, dim, {1.0, 0.5});
      CHECK(check_gradient_consistency(p, 1000, 5.0, 97) < 1e-6);
      CHECK(check_hessian_consistency(p, 1000, 5.0, 98) < 1e-6);
      CHECK(sampled_hessian_max(p, 10000, 8.0, 99) <= p.hessian_sup + 1e-12);
    }
  }
}

TEST_CASE("custom potentials declare their Hessian bound") {
  auto value = [](const double* x, int) { return 0.25 * std::cos(2.0 * x[0]); };
  auto grad = [](const double* x, int, double* g) { g[0] = -0.5 * std::sin(2.0 * x[0]); };
  auto hess = [](const double* x, int, double* h) { h[0] = -std::cos(2.0 * x[0]); };
  const Potential p = custom_potential(1, value, grad, hess, 1.0);
  CHECK(check_gradient_consistency(p, 500, 4.0, 7) < 1e-6);
  CHECK(sampled_hessian_max(p, 5000, 4.0, 8) <= p.hessian_sup + 1e-12);
  CHECK_THROWS_AS(custom_potential(1, value, grad, hess, -1.0), ConfigError);
}

TEST_CASE("flow growth constant") {
  CHECK(flow_growth_constant(builtin_potential("zero"), 1) == 1.0);
  CHECK(flow_growth_constant(builtin_potential("harmonic"), 1) == 2.0);
  CHECK(flow_growth_constant(builtin_potential("cosine"), 1) == 2.0);
  CHECK(flow_growth_constant(builtin_potential("harmonic", 2), 2) == 5.0);
}

TEST_CASE("separation time limit against a bisection oracle") {
  // independent oracle: solve 2 M^{3/2} e^{M T} T = 1/2 on [0, 1/3]
  auto oracle = [](double M) {
    double lo = 0.0, hi = 1.0 / 3.0;
    auto excess = [M](double t) {
      return 2.0 * std::pow(M, 1.5) * std::exp(M * t) * t - 0.5;
    };
    if (excess(hi) < 0.0) return hi * 0.999;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      (excess(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.999 * lo;
  };
  for (double M : {1.0, 2.0, 3.0, 5.0})
    CHECK(separation_time_limit(M) == doctest::Approx(oracle(M)).epsilon(1e-9));
  // M = 2 lands near 0.0759 (root of 2^{5/2} T e^{2T} = 1/2, shrunk by 0.999)
  CHECK(separation_time_limit(2.0) == doctest::Approx(0.0759).epsilon(2e-3));
  CHECK(separation_time_limit(4.0) < separation_time_limit(2.0));
  // strictness of both constraints
  for (double M : {1.0, 2.0, 7.0}) {
    const double t1 = separation_time_limit(M);
    CHECK(2.0 * std::pow(M, 1.5) * std::exp(M * t1) * t1 < 0.5);
    CHECK(t1 < 1.0 / 3.0);
  }
}

TEST_CASE("determinant time limit") {
  CHECK(det_time_limit(builtin_potential("zero"), 1) == doctest::Approx(1.0 / 3.0));
  // harmonic: min(1/3, sqrt(1/8)) = 1/3
  CHECK(det_time_limit(builtin_potential("harmonic"), 1) == doctest::Approx(1.0 / 3.0));

  auto flat = [](const double*, int) { return 0.0; };
  auto fgrad = [](const double*, int, double* g) { g[0] = 0.0; };
  auto fhess = [](const double*, int, double* h) { h[0] = 0.0; };
  const Potential p3 = custom_potential(1, flat, fgrad, fhess, 3.0);    // M' = 4
  const Potential p15 = custom_potential(1, flat, fgrad, fhess, 15.0);  // M' = 16
  CHECK(det_time_limit(p3, 1) == doctest::Approx(0.25));
  CHECK(det_time_limit(p15, 1) == doctest::Approx(0.125));  // quadrupled M' halves T2

  const FlowHorizons h = flow_horizons(builtin_potential("cosine"), 1);
  CHECK(h.growth == 2.0);
  CHECK(h.hessian_plus_one == 2.0);
  CHECK(h.t_separation == doctest::Approx(separation_time_limit(2.0)));
  CHECK(h.t_jacobian == doctest::Approx(det_time_limit(builtin_potential("cosine"), 1)));
}
