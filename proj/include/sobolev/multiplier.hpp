#pragma once

#include <cmath>
#include <functional>

#include "sobolev/core.hpp"

namespace sobolev {

/// Multiplier weight w(|xi|) >= 1 of the H^s inner product; w(0) = 1 for every variant.
double sobolev_weight_radial(double abs_xi, const SobolevSpec& spec);

template <typename Derived>
double sobolev_weight(const Eigen::MatrixBase<Derived>& xi, const SobolevSpec& spec) {
  return sobolev_weight_radial(xi.norm(), spec);
}

/// Weight per FFT bin of a periodic domain, using physical frequencies k / period.
RVector weight_table(const Domain& d, const SobolevSpec& spec);

/// Multiply Fourier coefficients by m(|xi|). Real input gives real output.
GridFn apply_radial_multiplier(const GridFn& u, const std::function<double(double)>& m);

/// E_s* u = F^{-1}( w^{-1} F u ).
GridFn adjoint_embedding(const GridFn& u, const SobolevSpec& spec);

/// (I - Delta)^{-s/2} u, multiplier (1 + 4 pi^2 |xi|^2)^{-s/2}; s may be negative.
GridFn bessel_potential(const GridFn& u, double s);

/// sum_k w(k) u_k conj(v_k) times the frequency cell measure.
Complex sobolev_inner(const GridFn& u, const GridFn& v, const SobolevSpec& spec);
double sobolev_norm(const GridFn& u, const SobolevSpec& spec);

/// (E_s*)^{-1/2} u: coefficients times sqrt(w), so |result|_L2 = |u|_{H^s}.
GridFn inv_sqrt_adjoint(const GridFn& u, const SobolevSpec& spec);

/// L^t u for the Hilbert-scale generator L = (E_s*)^{-1/2}: coefficients times w^{t/2}.
GridFn hilbert_scale_apply(const GridFn& u, const SobolevSpec& spec, double t);

/// The embedding E_s* as a LinOp L2 -> H^s with adjoint E_s (the identity).
LinOp adjoint_embedding_op(const Domain& d, const SobolevSpec& spec);

struct NormEquivalenceReport {
  double order = 0;
  int kmax = 0;
  bool holds = false;
  /// min over k of (1+4pi^2k^2)^s / (C1 (1 + (2 pi k)^{2s})) - 1, with C1 = 1/2.
  double lower_margin = 0;
  /// min over k of C2 (1 + (2 pi k)^{2s}) / (1+4pi^2k^2)^s - 1, with C2 = 2^{s-1}.
  double upper_margin = 0;
};

/// Pointwise check 1/2 (1+(2pi|k|)^{2s}) <= (1+4pi^2|k|^2)^s <= 2^{s-1} (1+(2pi|k|)^{2s}) for |k| <= kmax.
NormEquivalenceReport norm_equivalence_check(double s, int kmax);

}  // namespace sobolev
