#pragma once

#include <vector>

#include "sobolev/core.hpp"

namespace sobolev {

/// Finite-dimensional setting: X_m = span(phi) in H^s, Y_n = span(psi) in L2.
///   hx(k, l) = <phi_l, phi_k>_{H^s}
///   hy(i, j) = <psi_j, psi_i>_{L2}
///   m(k, j)  = <psi_j, phi_k>_{L2}
struct DiscreteSetting {
  Domain domain;
  std::vector<GridFn> basis_x;
  std::vector<GridFn> basis_y;
  InnerProductSpec x_inner;
  Eigen::MatrixXcd hx;
  Eigen::MatrixXcd hy;
  Eigen::MatrixXcd m;
  Eigen::LLT<Eigen::MatrixXcd> hx_llt;
  Eigen::LLT<Eigen::MatrixXcd> hy_llt;
};

/// Throws NumericalFailure when a Gram matrix is not numerically SPD.
DiscreteSetting assemble(std::vector<GridFn> basis_x, std::vector<GridFn> basis_y, const SobolevSpec& spec);
/// Same with an arbitrary X inner product (e.g. a discrete BVP form).
DiscreteSetting assemble(std::vector<GridFn> basis_x, std::vector<GridFn> basis_y, const InnerProductSpec& x_inner);

struct ProjectedAdjoint {
  CVector coeffs;  // z = H_X^{-1} M H_Y^{-1} (<u, psi_j>)
  GridFn function; // sum_k z_k phi_k
};

ProjectedAdjoint projected_adjoint(const DiscreteSetting& s, const GridFn& u);

/// Q_n u, the L2-orthogonal projection onto span(psi).
GridFn project_y(const DiscreteSetting& s, const GridFn& u);
/// P_m v, the X-orthogonal projection onto span(phi).
GridFn project_x(const DiscreteSetting& s, const GridFn& v);
GridFn synthesize_x(const DiscreteSetting& s, const CVector& coeffs);

/// (E_{m,n})* as a LinOp L2 -> X_m; its adjoint is Q_n P_m.
LinOp projected_adjoint_op(const DiscreteSetting& s);

/// e^{2 pi i k x} for |k| <= kmax on a 1D torus, ordered 0, 1, -1, 2, -2, ...
std::vector<GridFn> fourier_mode_basis(const Domain& torus, int kmax);

/// Piecewise-linear hats on `cells` uniform cells of an Interval, sampled at
/// the grid nodes. The grid must refine the coarse mesh.
std::vector<GridFn> hat_basis(const Domain& interval, int cells);

}  // namespace sobolev
