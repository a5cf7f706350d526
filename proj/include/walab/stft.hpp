#pragma once

#include <functional>

#include "walab/core.hpp"
#include "walab/window.hpp"

namespace walab {

// Default ceiling for the |F|^2 mass fraction near the Nyquist edge.
inline constexpr double kDefaultBandTol = 1e-10;

// Discrete image of the short-time Fourier transform V_g f(x, xi) on the
// x-grid times its dual grid. Rows are x-nodes, columns xi-nodes, both in
// row-major flat order of the respective GridSpec.
struct PhaseSpaceField {
  GridSpec xgrid;
  std::vector<cdouble> values;
  double band_tail_fraction = 0.0;

  GridSpec xigrid() const { return xgrid.dual(); }
  std::size_t rows() const { return xgrid.size(); }
  cdouble at(std::size_t xnode, std::size_t xinode) const {
    return values[xnode * rows() + xinode];
  }
  // quadrature weights: h^n per x-cell, (pi/L)^n per xi-cell
  double x_weight() const;
  double xi_weight() const;
};

double band_mass_fraction(const GridSpec& xgrid, const std::vector<cdouble>& values);
PhaseSpaceField make_phase_space_field(const GridSpec& xgrid, std::vector<cdouble> values);

using PhaseSpaceForm = std::function<cdouble(const double* x, const double* xi)>;
PhaseSpaceField sample_phase_space(const GridSpec& xgrid, const PhaseSpaceForm& form);

// V_g f(x_j, xi_k) = h^n sum_y conj(g(y - x_j)) f(y) exp(-i y.xi_k) for every
// grid pair; one windowed transform per x-node.
PhaseSpaceField stft(const SampledField& f, const Window& w,
                     double tail_tol = kDefaultTailTol);

// Streaming variant: sink(row_index, row_values) is invoked once per x-node,
// possibly from different threads but with disjoint rows.
void stft_rows(const SampledField& f, const Window& w,
               const std::function<void(std::size_t, const cdouble*)>& sink,
               double tail_tol = kDefaultTailTol);

// Direct quadrature of the same sum at an arbitrary phase-space point.
cdouble stft_at(const SampledField& f, const Window& w, const double* x,
                const double* xi);

// V_g^* F(x) = sum_{y,xi} g(x - y) F(y, xi) exp(i x.xi) h^n (pi/L)^n / (2 pi)^n.
SampledField adjoint_stft(const PhaseSpaceField& F, const Window& w,
                          double band_tol = kDefaultBandTol);

// |V_{g(s)} V_{g(t)}^* F| / |F| in the mixed L^p_x L^q_xi norm.
double cross_ambiguity_ratio(double s, double t, const PhaseSpaceField& F, double p,
                             double q);

}  // namespace walab
