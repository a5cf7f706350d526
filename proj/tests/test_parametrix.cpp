#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "walab/norms.hpp"
#include "walab/parametrix.hpp"

using namespace walab;
using std::complex_literals::operator""i;

namespace {
const GridSpec kGrid = make_grid(1, 512, 30.0);
const Window kWin = gaussian_window(1);
}  // namespace

TEST_CASE("remainder kernel: closed form vs quadrature") {
  double x = 0.0, y = 0.0;
  for (const char* name : {"harmonic", "inverted_harmonic", "cosine", "quad_plus_trig"}) {
    const Potential pot = builtin_potential(name);
    for (double xx : {-2.0, 0.3, 1.7})
      for (double zz : {-4.0, -0.6, 0.9, 3.0}) {
        x = xx;
        y = xx + zz;
        CHECK(remainder_kernel(pot, &x, &y) ==
              doctest::Approx(remainder_kernel_quadrature(pot, &x, &y))
                  .epsilon(1e-12));
      }
  }
  const Potential stark = builtin_potential("stark", 1, {1.5, 0.0});
  x = 0.7;
  y = -1.2;
  CHECK(remainder_kernel(stark, &x, &y) == 0.0);
}

TEST_CASE("taylor remainder stft") {
  const SampledField u = sample(kGrid, gaussian_form(1.0, 0.5, 1.0));

  for (const char* name : {"zero", "stark"}) {
    const Potential pot = builtin_potential(name, 1, {2.0, 0.0});
    const PhaseSpaceField R = taylor_remainder_stft(u, 0.1, pot, kWin);
    double m = 0.0;
    for (const auto& v : R.values) m = std::max(m, std::abs(v));
    CHECK(m == 0.0);
  }

  // harmonic: the kernel collapses to (y-x)^2/2, so R~u is an STFT with the
  // modified window z^2 g(s, z) scaled by 1/2
  const double s = 0.2;
  const Potential harm = builtin_potential("harmonic");
  const PhaseSpaceField R = taylor_remainder_stft(u, s, harm, kWin);
  const Window ws = evolved_window(kWin, s);
  const GridSpec dual = kGrid.dual();
  double worst = 0.0;
  for (std::size_t j = 120; j < 392; j += 32) {
    const double x = kGrid.coord(static_cast<int>(j));
    for (std::size_t k = 120; k < 392; k += 32) {
      const double xi = dual.coord(static_cast<int>(k));
      cdouble direct{};
      for (int m = 0; m < kGrid.points_per_axis; ++m) {
        const double y = kGrid.coord(m);
        const double z = y - x;
        direct += 0.5 * z * z * std::conj(ws.value(&z)) * u.values[m] *
                  std::exp(cdouble{0.0, -y * xi});
      }
      direct *= kGrid.spacing();
      worst = std::max(worst, std::abs(R.at(j, k) - direct));
    }
  }
  CHECK(worst <= 1e-10);

  // linearity in u
  const SampledField u2 = sample(kGrid, gaussian_form(0.8, -1.0, -2.0));
  std::vector<cdouble> comb(kGrid.size());
  const cdouble alpha = 0.7 + 0.4i;
  for (std::size_t m = 0; m < comb.size(); ++m)
    comb[m] = alpha * u.values[m] + u2.values[m];
  const SampledField uc = make_field(kGrid, std::move(comb));
  const PhaseSpaceField Rc = taylor_remainder_stft(uc, s, harm, kWin);
  const PhaseSpaceField R2 = taylor_remainder_stft(u2, s, harm, kWin);
  double lin = 0.0;
  for (std::size_t i = 0; i < Rc.values.size(); ++i)
    lin = std::max(lin,
                   std::abs(Rc.values[i] - (alpha * R.values[i] + R2.values[i])));
  CHECK(lin < 1e-12);

  // the pointwise evaluator agrees with the grid rows
  for (std::size_t j : {150UL, 256UL, 300UL})
    for (std::size_t k : {130UL, 256UL, 310UL}) {
      const double x = kGrid.coord(static_cast<int>(j));
      const double xi = dual.coord(static_cast<int>(k));
      CHECK(std::abs(taylor_remainder_at(u, s, harm, kWin, &x, &xi) - R.at(j, k)) <
            1e-10);
    }
}

TEST_CASE("phase multiplier conventions") {
  const Potential zero = builtin_potential("zero");
  const double x = 0.8, xi = -1.3;
  const double t = 0.25, s = 0.1;
  // V = 0: M(t, s) = exp(-i (t-s) |xi|^2 / 2)
  const cdouble expect = std::exp(cdouble{0.0, -0.5 * (t - s) * xi * xi});
  CHECK(std::abs(phase_multiplier(t, s, zero, &x, &xi) - expect) < 1e-12);
  CHECK(std::abs(phase_multiplier(t, s, zero, &x, &xi) *
                     phase_multiplier(s, t, zero, &x, &xi) -
                 cdouble{1.0, 0.0}) < 1e-12);

  const Potential cosine = builtin_potential("cosine");
  const cdouble m = phase_multiplier(0.2, 0.05, cosine, &x, &xi);
  CHECK(std::abs(std::abs(m) - 1.0) < 1e-13);
  CHECK(std::abs(phase_multiplier(0.2, 0.2, cosine, &x, &xi) - cdouble{1.0, 0.0}) <
        1e-13);
}

TEST_CASE("parametrix: identity at t = 0 and exactness on zero-Hessian potentials") {
  const SampledField f = sample(kGrid, gaussian_form(1.0, 0.3, 1.0));

  const Potential zero = builtin_potential("zero");
  CHECK(rel_l2_error(parametrix_u0(f, 0.0, zero, kWin), f) <= 1e-8);

  for (double t : {0.05, 0.1}) {
    const SampledField u0t = parametrix_u0(f, t, zero, kWin);
    CHECK(rel_l2_error(u0t, free_prop(f, t)) <= 1e-6);
  }

  const Potential stark = builtin_potential("stark", 1, {1.0, 0.0});
  for (double t : {0.05, 0.1}) {
    const SampledField u0t = parametrix_u0(f, t, stark, kWin);
    CHECK(rel_l2_error(u0t, stark_prop(f, t, 1.0)) <= 1e-6);
  }

  const Potential harm = builtin_potential("harmonic");
  CHECK_THROWS_AS(parametrix_u0(f, 1.5, harm, kWin), HorizonError);

  // L2 bound of U0 for harmonic within its horizon, stable under refinement
  double ratio[2];
  for (int which = 0; which < 2; ++which) {
    const GridSpec g = make_grid(1, which == 0 ? 256 : 512, 30.0);
    const SampledField ff = sample(g, gaussian_form(1.0, 0.3, 1.0));
    const SampledField u = parametrix_u0(ff, 0.07, harm, kWin);
    ratio[which] = l2_norm(u) / l2_norm(ff);
  }
  CHECK(ratio[1] < 10.0);
  CHECK(std::abs(ratio[1] / ratio[0] - 1.0) < 0.10);
}

TEST_CASE("remainder operator") {
  const SampledField u = sample(kGrid, gaussian_form(1.0, 0.0, 1.0));
  const Potential stark = builtin_potential("stark", 1, {2.0, 0.0});
  CHECK(l2_norm(remainder_r(u, 0.05, 0.02, stark, kWin)) == 0.0);

  const Potential harm = builtin_potential("harmonic");
  const double t = 0.06, s = 0.03;
  const SampledField r1 = remainder_r(u, t, s, harm, kWin);

  // linearity in u
  const SampledField u2 = sample(kGrid, gaussian_form(0.7, 0.8, -1.0));
  std::vector<cdouble> comb(kGrid.size());
  for (std::size_t m = 0; m < comb.size(); ++m)
    comb[m] = 2.0 * u.values[m] + u2.values[m];
  const SampledField uc = make_field(kGrid, std::move(comb));
  const SampledField rc = remainder_r(uc, t, s, harm, kWin);
  const SampledField r2 = remainder_r(u2, t, s, harm, kWin);
  double lin = 0.0;
  for (std::size_t j = 0; j < rc.values.size(); ++j)
    lin = std::max(lin,
                   std::abs(rc.values[j] - (2.0 * r1.values[j] + r2.values[j])));
  CHECK(lin < 1e-10);

  // |R(t,s)u|_2 <= C |u|_2 with a refinement-stable fitted constant
  double fitted[2];
  for (int which = 0; which < 2; ++which) {
    const GridSpec g = make_grid(1, which == 0 ? 256 : 512, 30.0);
    const SampledField uu = sample(g, gaussian_form(1.0, 0.0, 1.0));
    fitted[which] = l2_norm(remainder_r(uu, t, s, harm, kWin)) / l2_norm(uu);
  }
  CHECK(fitted[1] < 1e3);
  CHECK(std::abs(fitted[1] / fitted[0] - 1.0) < 0.10);
}

TEST_CASE("defect identity by finite differences") {
  const Potential zero = builtin_potential("zero");
  const SampledField f = sample(kGrid, gaussian_form(1.0, 0.2, 0.5));
  CHECK(l2_norm(parametrix_defect(f, 0.1, zero, kWin)) == 0.0);

  // (i d_t - H) U0(t) f = defect(t) f at second order in the step
  const Potential harm = builtin_potential("harmonic");
  const double t = 0.1;
  const int steps = 512;
  const SampledField defect = parametrix_defect(f, t, harm, kWin, steps);
  const SampledField hmid = apply_hamiltonian(parametrix_u0(f, t, harm, kWin, steps), harm);
  auto fd_residual = [&](double delta) {
    const SampledField up = parametrix_u0(f, t + delta, harm, kWin, steps);
    const SampledField um = parametrix_u0(f, t - delta, harm, kWin, steps);
    double acc = 0.0;
    for (std::size_t j = 0; j < f.values.size(); ++j) {
      const cdouble dt_term = 1.0i * (up.values[j] - um.values[j]) / (2.0 * delta);
      acc += std::norm(dt_term - hmid.values[j] - defect.values[j]);
    }
    return std::sqrt(acc * kGrid.spacing()) / l2_norm(f);
  };
  const double d1 = fd_residual(0.02);
  const double d2 = fd_residual(0.01);
  const double order = std::log2(d1 / d2);
  CHECK(order >= 1.8);
  CHECK(d2 < 1e-2);

  // |defect(t) f|_2 / |f|_2 is bounded and refinement-stable
  double ratio[2];
  for (int which = 0; which < 2; ++which) {
    const GridSpec g = make_grid(1, which == 0 ? 256 : 512, 30.0);
    const SampledField ff = sample(g, gaussian_form(1.0, 0.2, 0.5));
    ratio[which] = l2_norm(parametrix_defect(ff, t, harm, kWin)) / l2_norm(ff);
  }
  CHECK(ratio[1] < 1e3);
  CHECK(std::abs(ratio[1] / ratio[0] - 1.0) < 0.10);
}

TEST_CASE("duhamel residual") {
  const GridSpec g = make_grid(1, 512, 30.0);
  const SampledField u0 = sample(g, gaussian_form(1.0));

  const Potential zero = builtin_potential("zero");
  CHECK(duhamel_residual(u0, 0.0, zero, kWin, 8) == 0.0);
  CHECK(duhamel_residual(u0, 0.2, zero, kWin, 16) <= 1e-6);

  const Potential stark = builtin_potential("stark", 1, {1.0, 0.0});
  CHECK(duhamel_residual(u0, 0.2, stark, kWin, 16) <= 1e-6);

  const Potential harm = builtin_potential("harmonic");
  const double coarse = duhamel_residual(u0, 0.2, harm, kWin, 8);
  const double fine = duhamel_residual(u0, 0.2, harm, kWin, 16);
  CHECK(fine < coarse);
  CHECK(fine < 1e-2);
}
