#pragma once

#include <array>
#include <string>
#include <vector>

#include "sobolev/core.hpp"

namespace sobolev {

struct EigenPair {
  double lambda;
  GridFn eigfn;
  std::array<int, 2> index;  // (m, n)
  std::string branch;        // "sin", "cos" (disk) or "" (rectangle)
};

/// Dirichlet Laplacian eigenpairs, nondecreasing in lambda, L2-normalized.
struct EigenSystem {
  Domain domain;
  std::vector<EigenPair> entries;

  size_t count() const { return entries.size(); }
  /// First k entries (k <= count()).
  EigenSystem truncated(size_t k) const;
};

/// max |G - I| for the L2 Gram matrix of the eigenfunctions.
double orthonormality_defect(const EigenSystem& sys);

/// sin(m pi x/a) sin(n pi y/b) for 1 <= m <= max_m, 1 <= n <= max_n on a
/// Rectangle grid spanning [0,a]x[0,b]; normalization 2/sqrt(ab).
EigenSystem rectangle_dirichlet_eigs(double a, double b, int max_m, int max_n, const Domain& grid);

/// J_m(x), periodic trapezoid rule on the Bessel integral; |error| < 1e-10 for |x| <= 60.
double bessel_j(int m, double x);
/// n-th positive zero of J_m (n >= 1).
double bessel_j_zero(int m, int n);

/// J_m(j_{m,n} r/a) cos(m theta) and, for m > 0, the sin branch, normalized by
/// pixel-mask quadrature on a DiskMask of the same radius.
EigenSystem disk_dirichlet_eigs(double radius, int max_m, int max_n, const Domain& grid);

/// sum_k (1/lambda_k) <u, u_k> u_k.
GridFn adjoint_embedding_eigs(const GridFn& u, const EigenSystem& eigs);

struct SingularTriple {
  double sigma;
  GridFn v;  // sigma e_k, orthonormal in H^s
  GridFn u;  // e_k, orthonormal in L2
  std::array<int, 2> k;
};

/// Singular system of E_s : H^s(T^N) -> L2(T^N), nonincreasing sigma.
struct SingularSystem {
  SobolevSpec spec;
  std::vector<SingularTriple> triples;
};

/// The K largest triples, ordered by |k| (ties by FFT bin order).
SingularSystem svd_from_multiplier(const SobolevSpec& spec, const Domain& torus, int K);

/// E_s v = sum sigma_k <v, v_k>_{H^s} u_k.
GridFn svd_embed(const GridFn& v, const SingularSystem& sys);
/// E_s* u = sum sigma_k <u, u_k>_{L2} v_k.
GridFn svd_adjoint(const GridFn& u, const SingularSystem& sys);

}  // namespace sobolev
