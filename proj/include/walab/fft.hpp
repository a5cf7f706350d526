#pragma once

#include "walab/core.hpp"

namespace walab {

// Continuum-convention transforms on the truncated grid:
//   Ff(xi_k)   = h^n sum_j f(x_j) exp(-i x_j . xi_k)
//   invF F(x_j) = (2 pi)^-n (pi/L)^n sum_k F(xi_k) exp(i x_j . xi_k)
// Forward output lives on the dual grid (half width pi/h); the pair inverts
// to round-off and satisfies the discrete Parseval |Ff|_2^2 = (2 pi)^n |f|_2^2
// exactly. In-place variants operate on raw buffers for per-row use.
SampledField fourier(const SampledField& f);
SampledField inv_fourier(const SampledField& F);

void fourier_inplace(const GridSpec& primal, cdouble* data);
void inv_fourier_inplace(const GridSpec& primal, cdouble* data);

}  // namespace walab
