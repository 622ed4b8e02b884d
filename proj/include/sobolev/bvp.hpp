#pragma once

#include <Eigen/SparseCore>

#include "sobolev/core.hpp"

namespace sobolev {

enum class BoundaryCondition { NeumannLike, Dirichlet };

/// Which inner product on H^m (resp. H_0^m) the solve realizes.
///   FullDa        sum_{|a| <= m} <D^a z, D^a v>
///   SimplePlusL2  sum_{|a| = m} <D^a z, D^a v> + <z, v>
///   SeminormOnly  sum_{|a| = m} <D^a z, D^a v>        (Dirichlet only)
enum class NormChoice { FullDa, SimplePlusL2, SeminormOnly };

struct BvpSpec {
  int order = 1;
  BoundaryCondition bc = BoundaryCondition::NeumannLike;
  NormChoice norm = NormChoice::FullDa;

  void validate() const;
};

/// Symmetric positive definite band matrix stored by lower diagonals,
/// factored in place by banded Cholesky.
class BandedSystem {
 public:
  BandedSystem(Eigen::Index n, int half_bandwidth);
  static BandedSystem from_sparse(const Eigen::SparseMatrix<double>& a, int half_bandwidth);

  Eigen::Index size() const { return n_; }
  int half_bandwidth() const { return bw_; }
  /// Entry (i, j) with 0 <= i - j <= half_bandwidth.
  double& lower(Eigen::Index i, Eigen::Index j) { return bands_(i - j, j); }

  /// Throws NumericalFailure when a pivot is not positive.
  void factor();
  RVector solve(const RVector& rhs) const;

 private:
  Eigen::Index n_;
  int bw_;
  bool factored_ = false;
  Eigen::MatrixXd bands_;  // bands_(d, j) = A(j + d, j)
};

/// Discrete form a(z, v) = conj(v)^T A z on the unknown nodes, plus the
/// quadrature weights that define the L2 side. Unknowns exclude boundary
/// nodes for Dirichlet conditions on node grids.
struct DiscreteBvp {
  Domain domain;
  BvpSpec spec;
  Eigen::SparseMatrix<double> matrix;
  RVector mass;                        // L2 weights on the unknowns
  std::vector<Eigen::Index> unknowns;  // active sample index per unknown
  int half_bandwidth = -1;             // >= 0 when a banded direct solve applies
};

DiscreteBvp assemble_bvp(const Domain& d, const BvpSpec& spec);

/// Solves a(z, v) = <u, v>_L2 for all discrete test functions v. Interval
/// domains use banded Cholesky; 2D and periodic domains use Jacobi-preconditioned
/// conjugate gradients (relative tolerance 1e-12, at most 10 n iterations).
GridFn solve_bvp(const GridFn& u, const BvpSpec& spec);

/// -Laplace z + z = u with homogeneous Neumann data (E_1* for the full H^1 norm).
/// Accepts Interval, Rectangle, DiskMask and, without boundary, Torus domains.
GridFn solve_neumann_helmholtz(const GridFn& u, const BvpSpec& spec = {});

enum class Order2mBoundary {
  NaturalD_j,   // (-1)^m D^{2m} z + z = u, natural conditions D^k z = 0, m <= k <= 2m-1
  DirichletD_j  // (-1)^m D^{2m} z = u, D^j z = 0 for 0 <= j <= m-1
};

/// 1D order-2m problem on an Interval, m in {1, 2}.
GridFn solve_1d_order2m(const GridFn& u, int m, Order2mBoundary bc);

/// Discrete H^m inner product conj(v)^T A z matching the solver for spec.
Complex bvp_inner(const GridFn& z, const GridFn& v, const BvpSpec& spec);

/// max over nodal test vectors e_i of |a(z, e_i) - <u, e_i>_L2| / |e_i|_L2.
double variational_gap(const GridFn& z, const GridFn& u, const BvpSpec& spec);

/// E* via solve_bvp as a LinOp L2 -> H^m(discrete). For Dirichlet specs the
/// adjoint (the embedding) zeroes boundary nodes, i.e. it acts on discrete H_0^m.
LinOp bvp_adjoint_op(const Domain& d, const BvpSpec& spec);

/// Discrete H^2 seminorm (sum_i w_i |second difference_i|^2)^{1/2} over interior nodes (1D).
double discrete_h2_seminorm(const GridFn& z);

}  // namespace sobolev
