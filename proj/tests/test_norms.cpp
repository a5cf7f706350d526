#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "walab/fft.hpp"
#include "walab/norms.hpp"
#include "walab/reference.hpp"
#include "walab/rng.hpp"

using namespace walab;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

WeightedSamples field_samples(const SampledField& f) {
  WeightedSamples ws;
  const double cell = std::pow(f.grid.spacing(), f.grid.dim);
  for (const auto& v : f.values) ws.items.emplace_back(std::abs(v), cell);
  return ws;
}
}  // namespace

TEST_CASE("mixed norm: Plancherel, separability, monotonicity") {
  const GridSpec g = make_grid(1, 256, 12.0);
  const Window w = gaussian_window(1);
  const SampledField f =
      sample(g, gaussian_form(1.0, 0.0, 0.0, std::pow(M_PI, -0.25)));
  const PhaseSpaceField F = stft(f, w);
  CHECK(mixed_norm(F, 2.0, 2.0) ==
        doctest::Approx(std::sqrt(2.0 * M_PI)).epsilon(1e-8));
  CHECK(mixed_norm(F, 2.0, 2.0) ==
        doctest::Approx(ref::mixed_norm(F, 2.0, 2.0)).epsilon(1e-13));

  // separable F(x, xi) = a(x) b(xi) factorizes exactly
  const GridSpec dual = g.dual();
  std::vector<cdouble> a(g.size()), b(g.size()), vals(g.size() * g.size());
  for (std::size_t j = 0; j < g.size(); ++j)
    a[j] = std::exp(-0.2 * g.coord(static_cast<int>(j)) * g.coord(static_cast<int>(j)));
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double xi = dual.coord(static_cast<int>(k));
    b[k] = std::exp(-0.5 * xi * xi) * cdouble{0.8, 0.6};
  }
  for (std::size_t j = 0; j < g.size(); ++j)
    for (std::size_t k = 0; k < g.size(); ++k) vals[j * g.size() + k] = a[j] * b[k];
  const PhaseSpaceField S = make_phase_space_field(g, std::move(vals));
  const SampledField fa = make_field(g, a);
  SampledField fb;
  fb.grid = dual;
  fb.values = b;
  for (double p : {1.0, 2.0, 4.0, kInf})
    for (double q : {1.0, 2.0, 3.0, kInf}) {
      const double expect = lp_norm(fa, p) * lp_norm(fb, q);
      CHECK(mixed_norm(S, p, q) == doctest::Approx(expect).epsilon(1e-10));
    }

  // pointwise domination
  PhaseSpaceField S2 = S;
  for (auto& v : S2.values) v *= 1.5;
  S2 = make_phase_space_field(g, S2.values);
  for (double p : {1.5, kInf})
    CHECK(mixed_norm(S, p, 2.0) <= mixed_norm(S2, p, 2.0) + 1e-14);

  CHECK_THROWS_AS(mixed_norm(S, 0.5, 2.0), NormError);
}

TEST_CASE("lorentz norm closed form on steps") {
  // characteristic function of a set of measure 4: |chi|_{L^{2,2}} = 2 exactly
  WeightedSamples chi;
  chi.items = {{1.0, 1.5}, {1.0, 2.5}};
  CHECK(lorentz_norm(chi, 2.0, 2.0) == doctest::Approx(2.0).epsilon(1e-15));

  // q = inf on a two-step function: the sup sits at a step corner
  WeightedSamples two;
  two.items = {{1.0, 6.0}, {3.0, 2.0}};
  const double expect = std::max(std::sqrt(2.0) * 3.0, std::sqrt(8.0) * 1.0);
  CHECK(lorentz_norm(two, 2.0, kInf) == doctest::Approx(expect).epsilon(1e-15));

  // p = q = inf is the plain sup
  CHECK(lorentz_norm(two, kInf, kInf) == doctest::Approx(3.0));

  CHECK_THROWS_AS(lorentz_norm(two, 1.0, 2.0), NormError);
  CHECK_THROWS_AS(lorentz_norm(two, kInf, 2.0), NormError);

  WeightedSamples bad;
  bad.items = {{1.0, 0.0}};
  CHECK_THROWS_AS(lorentz_norm(bad, 2.0, 2.0), NormError);
}

TEST_CASE("L^{p,p} = L^p and rearrangement invariance") {
  const GridSpec g = make_grid(1, 128, 10.0);
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<cdouble> vals(g.size());
    for (auto& v : vals)
      v = cdouble{rng.normal(), rng.normal()} * std::exp(-0.02 * rng.uniform(0, 50));
    const SampledField f = make_field(g, std::move(vals));
    const double p = rng.uniform(1.3, 6.0);
    CHECK(lorentz_norm(field_samples(f), p, p) ==
          doctest::Approx(lp_norm(f, p)).epsilon(1e-10));
  }

  // permuting (value, measure) pairs leaves the norm unchanged
  WeightedSamples ws;
  Rng rng2(17);
  for (int i = 0; i < 40; ++i)
    ws.items.emplace_back(std::abs(rng2.normal()), rng2.uniform(0.1, 2.0));
  const double base = lorentz_norm(ws, 2.5, 1.5);
  for (int shuffle = 0; shuffle < 4; ++shuffle) {
    WeightedSamples perm = ws;
    for (std::size_t i = perm.items.size(); i > 1; --i)
      std::swap(perm.items[i - 1], perm.items[rng2.integer() % i]);
    CHECK(lorentz_norm(perm, 2.5, 1.5) == doctest::Approx(base).epsilon(1e-13));
  }
}

TEST_CASE("lorentz monotone in q and against quadrature oracle") {
  Rng rng(29);
  WeightedSamples ws;
  for (int i = 0; i < 60; ++i)
    ws.items.emplace_back(std::abs(rng.normal()), rng.uniform(0.05, 1.0));
  for (double p : {1.5, 2.0, 4.0}) {
    double prev = -1.0;
    for (double q : {1.0, 1.5, 2.0, 4.0, 16.0}) {
      const double cur = lorentz_norm(ws, p, q);
      if (prev >= 0.0) CHECK(cur <= prev * (1.0 + 1e-12));
      prev = cur;
      const double approx = ref::lorentz_norm_quadrature(ws, p, q, 4096);
      CHECK(std::abs(approx / cur - 1.0) < 1e-6);
    }
    // sup-form sits below every finite-q quasi-norm here as well
    CHECK(lorentz_norm(ws, p, kInf) <= prev * (1.0 + 1e-12));
  }
}

TEST_CASE("amalgam norm") {
  const GridSpec g = make_grid(1, 512, 16.0);
  const Window w = gaussian_window(1);
  const SampledField f = sample(g, gaussian_form(0.9, 0.4, 2.0));

  CHECK(amalgam_norm(f, 2.0, 2.0, w) ==
        doctest::Approx(std::sqrt(2.0 * M_PI) * lp_norm(f, 2.0)).epsilon(1e-8));

  SampledField cf = f;
  for (auto& v : cf.values) v *= cdouble{1.2, -0.7};
  cf = make_field(g, cf.values);
  CHECK(amalgam_norm(cf, 3.0, 1.5, w) ==
        doctest::Approx(std::abs(cdouble{1.2, -0.7}) * amalgam_norm(f, 3.0, 1.5, w))
            .epsilon(1e-12));

  // streaming amalgam equals the mixed norm of the materialized stft
  const PhaseSpaceField F = stft(f, w);
  for (double p : {1.0, 2.0, kInf})
    for (double q : {1.0, 2.0, kInf})
      CHECK(amalgam_norm(f, p, q, w) == doctest::Approx(mixed_norm(F, p, q)).epsilon(1e-12));

  // concentration raises local-spectrum content at equal L2 mass
  const GridSpec gw = make_grid(1, 1024, 40.0);
  const SampledField narrow = sample(gw, gaussian_form(0.25));
  const SampledField wide = sample(gw, gaussian_form(4.0));
  const double mass_n = lp_norm(narrow, 2.0), mass_w = lp_norm(wide, 2.0);
  const double n_w1 = amalgam_norm(narrow, kInf, 1.0, w) / mass_n;
  const double w_w1 = amalgam_norm(wide, kInf, 1.0, w) / mass_w;
  CHECK(n_w1 > w_w1);
}

TEST_CASE("amalgam Lorentz norm") {
  const GridSpec g = make_grid(1, 256, 12.0);
  const Window w = gaussian_window(1);
  const SampledField f = sample(g, gaussian_form(1.0, 0.3, 1.0));

  // inner (p', p') collapses to the plain amalgam norm
  for (double p : {2.0, 3.0, 4.0}) {
    const double pprime = p / (p - 1.0);
    CHECK(amalgam_lorentz_norm(f, p, w, pprime) ==
          doctest::Approx(amalgam_norm(f, p, pprime, w)).epsilon(1e-10));
  }

  const SampledField zero = make_field(g, std::vector<cdouble>(g.size()));
  CHECK(amalgam_lorentz_norm(zero, 4.0, w) == 0.0);

  CHECK_THROWS_AS(amalgam_lorentz_norm(f, kInf, w), NormError);

  // n = 2 endpoint p = 4 is finite on Gaussian data
  const GridSpec g2 = make_grid(2, 32, 8.0);
  const Window w2 = gaussian_window(2);
  const SampledField f2 = sample(g2, gaussian_form_2d(1.0, {0.0, 0.0}, {0.0, 0.0}));
  const double v = amalgam_lorentz_norm(f2, 4.0, w2);
  CHECK(v > 0.0);
  CHECK(v < 1e6);
}

TEST_CASE("time mixed norm") {
  std::vector<double> ts, ones;
  const double T = 0.7;
  for (int i = 0; i < 33; ++i) {
    ts.push_back(-T + 2.0 * T * i / 32);
    ones.push_back(1.0);
  }
  for (double rho : {1.0, 2.0, 3.5})
    CHECK(time_mixed_norm(ts, ones, rho) ==
          doctest::Approx(std::pow(2.0 * T, 1.0 / rho)).epsilon(1e-12));
  std::vector<double> bumpy = ones;
  bumpy[5] = 3.0;
  CHECK(time_mixed_norm(ts, bumpy, kInf) == doctest::Approx(3.0));
  CHECK_THROWS_AS(time_mixed_norm({}, {}, 2.0), NormError);

  // trapezoid refinement on a smooth trajectory moves the value < 1%
  auto traj = [T](int n) {
    std::vector<double> tt(n), vv(n);
    for (int i = 0; i < n; ++i) {
      tt[i] = -T + 2.0 * T * i / (n - 1);
      vv[i] = 1.0 / (1.0 + tt[i] * tt[i]);
    }
    return time_mixed_norm(tt, vv, 2.0);
  };
  CHECK(std::abs(traj(65) / traj(129) - 1.0) < 0.01);
}

TEST_CASE("refined sup-slice norm dominates the grid sup") {
  const GridSpec g = make_grid(1, 256, 12.0);
  const Window w = gaussian_window(1);
  const SampledField f = sample(g, gaussian_form(0.7, 0.123, 2.0));
  const double grid_sup = amalgam_norm(f, kInf, 1.0, w);
  const double refined = w_inf1_norm_refined(f, w);
  CHECK(refined >= grid_sup - 1e-12);
  CHECK(refined <= grid_sup * 1.05);
}

TEST_CASE("inclusion constant W^{p,p'} into L^p is refinement-stable") {
  const Window w = gaussian_window(1);
  const double p = 4.0, pprime = 4.0 / 3.0;
  double fitted[2];
  for (int which = 0; which < 2; ++which) {
    const GridSpec g = make_grid(1, which == 0 ? 256 : 512, 20.0);
    Rng rng(31);
    double sup = 0.0;
    for (int i = 0; i < 30; ++i) {
      std::vector<cdouble> vals(g.size());
      // random smooth bump superpositions
      double c[3], s[3], k[3];
      for (int b = 0; b < 3; ++b) {
        c[b] = rng.uniform(-3.0, 3.0);
        s[b] = rng.uniform(0.6, 1.8);
        k[b] = rng.uniform(-3.0, 3.0);
      }
      for (int j = 0; j < g.points_per_axis; ++j) {
        const double x = g.coord(j);
        cdouble acc{};
        for (int b = 0; b < 3; ++b)
          acc += std::exp(-(x - c[b]) * (x - c[b]) / (2.0 * s[b] * s[b])) *
                 std::exp(cdouble{0.0, k[b] * x});
        vals[j] = acc;
      }
      const SampledField f = make_field(g, std::move(vals));
      sup = std::max(sup, lp_norm(f, p) / amalgam_norm(f, p, pprime, w));
    }
    fitted[which] = sup;
  }
  CHECK(fitted[0] < 1e6);
  CHECK(std::abs(fitted[1] / fitted[0] - 1.0) < 0.10);
}

TEST_CASE("convolution relation with fitted constant") {
  const Window w = gaussian_window(1);
  double fitted[2];
  for (int which = 0; which < 2; ++which) {
    const GridSpec g = make_grid(1, which == 0 ? 256 : 512, 14.0);
    const SampledField f = sample(g, gaussian_form(0.8, 0.5, 1.0));
    const SampledField u = sample(g, gaussian_form(1.2, -0.7, -2.0));
    // f * u through the transform convention
    SampledField Ff = fourier(f), Fu = fourier(u);
    for (std::size_t i = 0; i < Ff.values.size(); ++i) Ff.values[i] *= Fu.values[i];
    const SampledField conv = inv_fourier(Ff);
    const double lhs = amalgam_norm(conv, 4.0, 2.0, w);
    const double rhs =
        amalgam_norm(f, 1.0, kInf, w) * amalgam_norm(u, 4.0, 2.0, w);
    fitted[which] = lhs / rhs;
  }
  CHECK(fitted[0] < 1e3);
  CHECK(std::abs(fitted[1] / fitted[0] - 1.0) < 0.10);
}
