#pragma once

#include "sobolev/core.hpp"

namespace sobolev {

/// Gamma function for x > 0 (Lanczos, g = 7).
double gamma_fn(double x);

/// Modified Bessel function of the second kind K_nu(x), x > 0, from
/// K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt by composite Gauss-Legendre.
double bessel_k(double nu, double x);

/// How G_s is evaluated.
///   ClosedForm       elementary forms for N = 1, s in {2, 4}
///   IntegralKnu      Bessel-K formula with bessel_k above
///   SpectralInverse  Gaussian subordination of the Fourier multiplier,
///                    G_s(x) = ((4 pi)^{s/2} Gamma(s/2))^{-1} int_0^inf e^{-pi|x|^2/d - d/(4pi)} d^{(s-N)/2} dd/d
enum class KernelEval { ClosedForm, IntegralKnu, SpectralInverse };

struct KernelSpec {
  double order = 2.0;
  int dims = 1;
  KernelEval mode = KernelEval::IntegralKnu;

  void validate() const;
  bool has_closed_form() const { return dims == 1 && (order == 2.0 || order == 4.0); }
  /// G_s is square integrable iff s > N/2.
  bool square_integrable() const { return order > 0.5 * dims; }
  /// G_s is bounded at the origin iff s > N.
  bool finite_at_origin() const { return order > dims; }
};

/// Bessel kernel G_s at radius r = |x|. r = 0 is allowed only when s > N.
double kernel_eval(const KernelSpec& spec, double r);

template <typename Derived>
double kernel_eval(const KernelSpec& spec, const Eigen::MatrixBase<Derived>& x) {
  return kernel_eval(spec, x.norm());
}

/// Mean of G_s over the origin cell of a grid with spacing h (segment in 1D,
/// equal-area disk in 2D). Finite for every s > 0.
double kernel_origin_cell_average(const KernelSpec& spec, double h);

enum class AsymptoticRegime { SmallX_sLtN, SmallX_sEqN, SmallX_sGtN, LargeX };

/// Leading-order asymptote of G_s in the given regime.
double kernel_asymptote(const KernelSpec& spec, AsymptoticRegime regime, double r);

struct AsymptoticReport {
  double max_deviation = 0;      // max |G/asymptote - 1| over the log-spaced sample
  double extreme_deviation = 0;  // the same at the sample point deepest into the regime
  double extreme_x = 0;
  double threshold = 0;
  bool pass = false;
};

/// Samples 20 log-spaced radii: [1e-1, 1e-3] for small-x regimes ([1e-1, 1e-4] when s = N),
/// [5, 20] for LargeX. Pass threshold at the extreme point is 0.05 (0.10 when s = N,
/// where the logarithmic limit is approached slowly).
AsymptoticReport kernel_asymptotics_check(const KernelSpec& spec, AsymptoticRegime regime);

/// Radius beyond which G_s < tol.
double kernel_truncation_radius(const KernelSpec& spec, double tol = 1e-12);

/// E_s* u = G_{2s} * u by circular convolution with the periodized, truncated kernel.
/// truncation_radius <= 0 selects kernel_truncation_radius(G_{2s}). The origin sample
/// uses the cell average when G_{2s} is singular there.
GridFn convolve_adjoint(const GridFn& u, double s, KernelEval mode = KernelEval::IntegralKnu,
                        double truncation_radius = 0.0);

}  // namespace sobolev
