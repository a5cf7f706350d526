#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "walab/flow.hpp"
#include "walab/reference.hpp"
#include "walab/rng.hpp"

using namespace walab;

TEST_CASE("free flow is exact") {
  const Potential zero = builtin_potential("zero");
  const double x0 = 1.2, xi0 = -0.8, t = 0.7;
  const FlowPoint fp = flow(zero, t, &x0, &xi0, min_flow_steps(zero, t));
  CHECK(fp.x[0] == doctest::Approx(x0 + t * xi0).epsilon(1e-14));
  CHECK(fp.xi[0] == doctest::Approx(xi0).epsilon(1e-14));
  // J = [[1, t], [0, 1]]
  CHECK(fp.jac[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(fp.jac[1] == doctest::Approx(t).epsilon(1e-14));
  CHECK(fp.jac[2] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(fp.jac[3] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(fp.phase == doctest::Approx(0.5 * t * xi0 * xi0).epsilon(1e-12));
}

TEST_CASE("harmonic flow hits the rotation") {
  const Potential harm = builtin_potential("harmonic");
  const double x0 = 1.0, xi0 = 0.0, t = 0.5 * M_PI;
  const FlowPoint fp = flow(harm, t, &x0, &xi0, 20000);
  CHECK(std::abs(fp.x[0] - 0.0) < 1e-8);
  CHECK(std::abs(fp.xi[0] + 1.0) < 1e-8);

  // phase oracle for the harmonic orbit from (1, 0):
  // h(tau) = xi^2/2 - x^2/2 = -cos(2 tau)/2, integral -sin(2t)/4
  const double t2 = 0.4;
  const FlowPoint fp2 = flow(harm, t2, &x0, &xi0, 4096);
  CHECK(fp2.phase == doctest::Approx(-std::sin(2.0 * t2) / 4.0).epsilon(1e-9));
}

TEST_CASE("group and inverse laws") {
  const Potential cosine = builtin_potential("cosine");
  const double x0 = 0.7, xi0 = -1.1;
  const double s = 0.1, t = 0.1;
  const FlowPoint fs = flow(cosine, s, &x0, &xi0, 4096);
  const FlowPoint fst = flow(cosine, t, fs.x.data(), fs.xi.data(), 4096);
  const FlowPoint direct = flow(cosine, s + t, &x0, &xi0, 8192);
  CHECK(std::abs(fst.x[0] - direct.x[0]) < 1e-8);
  CHECK(std::abs(fst.xi[0] - direct.xi[0]) < 1e-8);

  const FlowPoint fwd = flow(cosine, 0.5, &x0, &xi0, 8192);
  const FlowPoint back = flow(cosine, -0.5, fwd.x.data(), fwd.xi.data(), 8192);
  CHECK(std::abs(back.x[0] - x0) < 1e-8);
  CHECK(std::abs(back.xi[0] - xi0) < 1e-8);
}

TEST_CASE("Liouville determinant") {
  Rng rng(3);
  for (const char* name : {"zero", "harmonic", "inverted_harmonic", "cosine"}) {
    const Potential pot = builtin_potential(name);
    for (int i = 0; i < 50; ++i) {
      double x0 = rng.uniform(-4.0, 4.0), xi0 = rng.uniform(-4.0, 4.0);
      for (double t : {0.25, 1.0}) {
        const FlowPoint fp = flow(pot, t, &x0, &xi0, default_flow_steps(pot, t));
        CHECK(std::abs(std::abs(flow_det(fp)) - 1.0) <= 1e-8);
      }
    }
  }
  // t = 0 gives the identity
  const Potential harm = builtin_potential("harmonic");
  double x0 = 0.3, xi0 = 0.4;
  CHECK(flow_det(flow(harm, 0.0, &x0, &xi0, 2)) == doctest::Approx(1.0));
  // dim 2 determinant
  const Potential h2 = builtin_potential("quad_plus_trig", 2);
  double x2[2] = {0.4, -1.0}, xi2[2] = {1.0, 0.2};
  const FlowPoint fp2 = flow(h2, 0.5, x2, xi2, default_flow_steps(h2, 0.5));
  CHECK(std::abs(std::abs(flow_det(fp2)) - 1.0) <= 1e-8);
}

TEST_CASE("flow matches an RK4 oracle and is second order") {
  const Potential cosine = builtin_potential("cosine");
  const double x0 = 0.9, xi0 = 0.6, t = 0.8;
  const FlowPoint a = flow(cosine, t, &x0, &xi0, 16384);
  const FlowPoint b = ref::flow_rk4(cosine, t, &x0, &xi0, 16384);
  CHECK(std::abs(a.x[0] - b.x[0]) < 1e-9);
  CHECK(std::abs(a.xi[0] - b.xi[0]) < 1e-9);

  // halving the step shrinks the harmonic trajectory error about 4x
  const Potential harm = builtin_potential("harmonic");
  auto traj_err = [&](int steps) {
    const FlowPoint fp = flow(harm, 1.0, &x0, &xi0, steps);
    const double xe = x0 * std::cos(1.0) + xi0 * std::sin(1.0);
    const double xie = -x0 * std::sin(1.0) + xi0 * std::cos(1.0);
    return std::hypot(fp.x[0] - xe, fp.xi[0] - xie);
  };
  const double ratio = traj_err(256) / traj_err(512);
  CHECK(ratio > 3.4);
  CHECK(ratio < 4.6);

  CHECK_THROWS_AS(flow(harm, 1.0, &x0, &xi0, 10), Error);
}

TEST_CASE("flow_light agrees with flow") {
  const Potential qt = builtin_potential("quad_plus_trig");
  const double x0 = -0.4, xi0 = 1.3, t = -0.27;
  const FlowPoint fp = flow(qt, t, &x0, &xi0, 2048);
  double xs, xis;
  const double phase = flow_light(qt, t, &x0, &xi0, 2048, &xs, &xis);
  CHECK(xs == doctest::Approx(fp.x[0]).epsilon(1e-14));
  CHECK(xis == doctest::Approx(fp.xi[0]).epsilon(1e-14));
  CHECK(phase == doctest::Approx(fp.phase).epsilon(1e-14));
}

TEST_CASE("scaled determinant") {
  const Potential zero = builtin_potential("zero");
  double x0 = 0.9, xi0 = -2.0;
  for (double t : {-0.2, 0.05, 0.3})
    CHECK(scaled_det(zero, t, &x0, &xi0, 512) == doctest::Approx(1.0).epsilon(1e-13));

  // harmonic: x(t; x, xi/t) = x cos t + (xi/t) sin t, so the value is sin(t)/t
  const Potential harm = builtin_potential("harmonic");
  CHECK(scaled_det(harm, 0.3, &x0, &xi0, 8192) ==
        doctest::Approx(std::sin(0.3) / 0.3).epsilon(1e-8));
  CHECK(std::abs(scaled_det(harm, 0.3, &x0, &xi0, 8192) - 0.98507) < 1e-4);

  // limit branch
  CHECK(scaled_det(harm, 1e-8, &x0, &xi0, 512) == 1.0);

  // window [1/2, 2] over a random sample for the trig potentials
  for (const char* name : {"cosine", "quad_plus_trig"}) {
    const Potential pot = builtin_potential(name);
    const double t2 = det_time_limit(pot, 1);
    Rng rng(13);
    for (int i = 0; i < 200; ++i) {
      double x = rng.uniform(-5.0, 5.0), xi = rng.uniform(-5.0, 5.0);
      double t = rng.uniform(-t2, t2);
      const double v = std::abs(scaled_det(pot, t, &x, &xi, 2048));
      CHECK(v >= 0.5 - 1e-6);
      CHECK(v <= 2.0 + 1e-6);
    }
    CHECK_THROWS_AS(scaled_det(pot, t2 + 0.05, &x0, &xi0, 2048), HorizonError);
  }
}

TEST_CASE("separation inequalities") {
  const Potential zero = builtin_potential("zero");
  const double t1_zero = separation_time_limit(flow_growth_constant(zero, 1));
  Rng rng(23);
  std::vector<SeparationTuple> tuples(2000);
  for (auto& tp : tuples) {
    tp.x[0] = rng.uniform(-5.0, 5.0);
    tp.xi[0] = rng.uniform(-5.0, 5.0);
    tp.z[0] = rng.uniform(-5.0, 5.0);
    tp.eta[0] = rng.uniform(-5.0, 5.0);
  }
  SeparationReport rep = check_separation(zero, 0.9 * t1_zero, tuples, 64);
  CHECK(rep.checked == 2000);
  CHECK(rep.violations == 0);
  CHECK(rep.energy_bound_ok);

  // coincident points: both sides vanish
  std::vector<SeparationTuple> coincident(1);
  coincident[0].x[0] = 1.0;
  coincident[0].xi[0] = -1.0;
  coincident[0].z[0] = 1.0;
  coincident[0].eta[0] = -1.0;
  rep = check_separation(zero, 0.9 * t1_zero, coincident, 64);
  CHECK(rep.violations == 0);

  const Potential cosine = builtin_potential("cosine");
  const double t1 = separation_time_limit(flow_growth_constant(cosine, 1));
  rep = check_separation(cosine, 0.9 * t1, tuples, 64);
  CHECK(rep.violations == 0);
  CHECK(rep.energy_bound_ok);

  CHECK_THROWS_AS(check_separation(cosine, t1 * 1.01, tuples, 64), HorizonError);
}
