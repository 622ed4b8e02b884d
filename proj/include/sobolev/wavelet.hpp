#pragma once

#include <vector>

#include "sobolev/core.hpp"

namespace sobolev {

enum class WaveletFamily { Haar, Daubechies4 };

/// Orthonormal two-channel filter bank. High-pass taps are g_k = (-1)^k h_{L-1-k}.
struct WaveletBasis {
  WaveletFamily family = WaveletFamily::Daubechies4;
  RVector low_pass;
  RVector high_pass;
  /// Sobolev regularity of the scaling function; the H^s characterization needs s < r.
  double regularity = 0.0;

  static WaveletBasis haar();
  static WaveletBasis daubechies4();
};

/// Periodized wavelet coefficients on a 1D torus.
///
/// Level convention: details[j] for j = 0 (coarsest detail level, n / 2^levels
/// coefficients) up to j = levels - 1 (finest, n / 2 coefficients). The scaling
/// factor 2^{-2js} of the adjoint embedding uses this j. Coefficients carry
/// the sqrt(h) sample weight, so the coefficient l2 norm equals the L2 norm.
struct WaveletDecomposition {
  Domain domain;
  CVector approx;
  std::vector<CVector> details;

  int levels() const { return static_cast<int>(details.size()); }
};

WaveletDecomposition fwt(const GridFn& u, const WaveletBasis& basis, int levels);
GridFn ifwt(const WaveletDecomposition& d, const WaveletBasis& basis);

/// Zero decomposition with the layout fwt would produce.
WaveletDecomposition empty_decomposition(const Domain& d, int levels);

/// Approximation coefficients unchanged, level-j details scaled by 2^{-2js}.
GridFn adjoint_embedding_wavelet(const GridFn& u, double s, const WaveletBasis& basis, int levels);

/// (sum |approx|^2 + sum_j 2^{2js} |detail_j|^2)^{1/2}
double wavelet_sobolev_norm(const GridFn& u, double s, const WaveletBasis& basis, int levels);
Complex wavelet_sobolev_inner(const GridFn& u, const GridFn& v, double s, const WaveletBasis& basis, int levels);

/// Wavelet E_s* as a LinOp L2 -> H^s(wavelet norm).
LinOp adjoint_embedding_wavelet_op(const Domain& d, double s, const WaveletBasis& basis, int levels);

}  // namespace sobolev
