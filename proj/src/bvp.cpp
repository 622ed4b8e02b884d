#include "sobolev/bvp.hpp"

#include <cmath>
#include <memory>
#include <sstream>

#include <Eigen/IterativeLinearSolvers>

namespace sobolev {

namespace {

using Triplet = Eigen::Triplet<double>;
using SpMat = Eigen::SparseMatrix<double>;

constexpr Eigen::Index kFixed = -1;  // Dirichlet node held at zero
constexpr Eigen::Index kNone = -2;   // no neighbour, natural boundary

bool on_node_boundary(const Domain& d, int ix, int iy) {
  if (d.kind() == DomainKind::Interval) return ix == 0 || ix == d.nx() - 1;
  if (d.kind() == DomainKind::Rectangle)
    return ix == 0 || iy == 0 || ix == d.nx() - 1 || iy == d.ny() - 1;
  return false;
}

double trapezoid_1d(const Domain& d, int axis, int i) {
  const double h = d.spacing(axis);
  return (i == 0 || i == d.points(axis) - 1) ? 0.5 * h : h;
}

// Edge weight for the first-order form along `axis`, at transverse index t.
double edge_weight(const Domain& d, int axis, int t) {
  const double h = d.spacing(axis);
  if (d.dims() == 1) return 1.0 / h;
  const int other = 1 - axis;
  const double wt = d.kind() == DomainKind::Rectangle ? trapezoid_1d(d, other, t) : d.spacing(other);
  return wt / h;
}

struct Layout {
  std::vector<Eigen::Index> unknowns;  // unknown -> active
  std::vector<Eigen::Index> of_grid;   // grid -> unknown, kFixed, or kNone (outside)
};

Layout make_layout(const Domain& d, bool dirichlet) {
  Layout l;
  l.of_grid.assign(static_cast<size_t>(d.grid_size()), kNone);
  for (Eigen::Index a = 0; a < d.size(); ++a) {
    const auto [ix, iy] = d.grid_index(a);
    const Eigen::Index g = static_cast<Eigen::Index>(iy) * d.nx() + ix;
    if (dirichlet && on_node_boundary(d, ix, iy)) {
      l.of_grid[g] = kFixed;
    } else {
      l.of_grid[g] = static_cast<Eigen::Index>(l.unknowns.size());
      l.unknowns.push_back(a);
    }
  }
  return l;
}

// Neighbour status of (ix, iy) shifted by dir along axis.
Eigen::Index neighbour(const Domain& d, const Layout& l, int ix, int iy, int axis, int dir, bool dirichlet) {
  int c[2] = {ix, iy};
  c[axis] += dir;
  const int n = d.points(axis);
  if (c[axis] < 0 || c[axis] >= n) {
    if (!d.periodic()) return dirichlet ? kFixed : kNone;
    c[axis] = (c[axis] + n) % n;
  }
  const Eigen::Index st = l.of_grid[static_cast<Eigen::Index>(c[1]) * d.nx() + c[0]];
  // masked pixels act as the zero exterior for Dirichlet data
  if (st == kNone && dirichlet) return kFixed;
  return st;
}

void add_first_order(const Domain& d, const Layout& l, bool dirichlet, double scale,
                     std::vector<Triplet>& t) {
  for (size_t p = 0; p < l.unknowns.size(); ++p) {
    const auto [ix, iy] = d.grid_index(l.unknowns[p]);
    for (int axis = 0; axis < d.dims(); ++axis) {
      const double w = scale * edge_weight(d, axis, axis == 0 ? iy : ix);
      for (int dir : {-1, 1}) {
        const Eigen::Index q = neighbour(d, l, ix, iy, axis, dir, dirichlet);
        if (q == kNone) continue;
        t.emplace_back(p, p, w);
        if (q >= 0) t.emplace_back(p, q, -w);
      }
    }
  }
}

// Second-difference form on an Interval: sum_i c_i (d2 z)_i (d2 v)_i.
void add_second_order_1d(const Domain& d, bool dirichlet, std::vector<Triplet>& t) {
  const int n = d.nx();
  const double h = d.spacing(0);
  const double h4 = h * h * h * h;
  if (!dirichlet) {
    // natural closure: second differences at interior nodes only
    for (int i = 1; i < n - 1; ++i) {
      const int idx[3] = {i - 1, i, i + 1};
      const double c[3] = {1.0, -2.0, 1.0};
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) t.emplace_back(idx[a], idx[b], h * c[a] * c[b] / h4);
    }
    return;
  }
  // clamped: unknowns are nodes 1..n-2 (index i-1), ghost z_{-1} = z_1
  auto put = [&](int i, int j, double v) {
    if (i >= 1 && i <= n - 2 && j >= 1 && j <= n - 2) t.emplace_back(i - 1, j - 1, v);
  };
  for (int i = 1; i < n - 1; ++i) {
    const int idx[3] = {i - 1, i, i + 1};
    const double c[3] = {1.0, -2.0, 1.0};
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) put(idx[a], idx[b], h * c[a] * c[b] / h4);
  }
  put(1, 1, 0.5 * h * 4.0 / h4);
  put(n - 2, n - 2, 0.5 * h * 4.0 / h4);
}

void check_domain(const Domain& d, const BvpSpec& spec) {
  switch (d.kind()) {
    case DomainKind::Interval:
    case DomainKind::Rectangle:
    case DomainKind::DiskMask:
      break;
    case DomainKind::Torus:
    case DomainKind::RealLineTrunc:
      if (spec.bc == BoundaryCondition::Dirichlet)
        throw InvalidArgument("Dirichlet data needs a bounded domain, got " + d.describe());
      break;
    default:
      throw DomainMismatch("boundary-value solve not defined on " + d.describe());
  }
  if (spec.order > 2) throw InvalidArgument("order m > 2 is unsupported");
  if (spec.order == 2 && d.kind() != DomainKind::Interval)
    throw InvalidArgument("order m = 2 is only supported on an Interval");
}

RVector gather(const RVector& x, const std::vector<Eigen::Index>& idx) {
  RVector out(static_cast<Eigen::Index>(idx.size()));
  for (size_t k = 0; k < idx.size(); ++k) out[static_cast<Eigen::Index>(k)] = x[idx[k]];
  return out;
}

CVector gather(const CVector& x, const std::vector<Eigen::Index>& idx) {
  CVector out(static_cast<Eigen::Index>(idx.size()));
  for (size_t k = 0; k < idx.size(); ++k) out[static_cast<Eigen::Index>(k)] = x[idx[k]];
  return out;
}

RVector solve_real(const DiscreteBvp& sys, const RVector& rhs) {
  if (sys.half_bandwidth >= 0) {
    BandedSystem band = BandedSystem::from_sparse(sys.matrix, sys.half_bandwidth);
    band.factor();
    return band.solve(rhs);
  }
  if (rhs.norm() == 0.0) return RVector::Zero(rhs.size());
  Eigen::ConjugateGradient<SpMat, Eigen::Lower | Eigen::Upper, Eigen::DiagonalPreconditioner<double>> cg;
  cg.setTolerance(1e-12);
  cg.setMaxIterations(10 * sys.matrix.rows());
  cg.compute(sys.matrix);
  RVector x = cg.solve(rhs);
  double rel = (rhs - sys.matrix * x).norm() / rhs.norm();
  // the recursive CG residual drifts from the true one on fine grids
  for (int pass = 0; pass < 3 && x.allFinite() && rel > 1e-10; ++pass) {
    x += cg.solve(rhs - sys.matrix * x);
    rel = (rhs - sys.matrix * x).norm() / rhs.norm();
  }
  if (!x.allFinite() || rel > 1e-10) {
    std::ostringstream os;
    os << "conjugate gradients stalled at relative residual " << rel << " after " << cg.iterations() << " iterations";
    throw NumericalFailure(os.str());
  }
  return x;
}

Complex form(const DiscreteBvp& sys, const GridFn& z, const GridFn& v) {
  const CVector zi = gather(z.values(), sys.unknowns);
  const CVector vi = gather(v.values(), sys.unknowns);
  const CVector az = sys.matrix * zi;
  return vi.dot(az);  // conj(v)^T A z
}

void require_same(const DiscreteBvp& sys, const GridFn& f) {
  if (!(f.domain() == sys.domain))
    throw DomainMismatch("function lives on " + f.domain().describe() + ", form on " + sys.domain.describe());
}

}  // namespace

void BvpSpec::validate() const {
  if (order < 1) throw InvalidArgument("BVP order m must be >= 1");
  if (norm == NormChoice::SeminormOnly && bc != BoundaryCondition::Dirichlet)
    throw InvalidArgument("the seminorm is a norm only on H_0^m; use Dirichlet conditions");
}

// ---------------------------------------------------------------------------
// BandedSystem

BandedSystem::BandedSystem(Eigen::Index n, int half_bandwidth)
    : n_(n), bw_(half_bandwidth), bands_(Eigen::MatrixXd::Zero(half_bandwidth + 1, n)) {
  if (n < 1 || half_bandwidth < 0) throw InvalidArgument("banded system needs n >= 1 and bandwidth >= 0");
}

BandedSystem BandedSystem::from_sparse(const Eigen::SparseMatrix<double>& a, int half_bandwidth) {
  BandedSystem b(a.rows(), half_bandwidth);
  for (int k = 0; k < a.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(a, k); it; ++it) {
      const Eigen::Index i = it.row(), j = it.col();
      if (i < j) continue;
      if (i - j > half_bandwidth) throw InvalidArgument("entry outside declared bandwidth");
      b.lower(i, j) += it.value();
    }
  return b;
}

void BandedSystem::factor() {
  // L stored over the lower bands; column-oriented Cholesky.
  for (Eigen::Index j = 0; j < n_; ++j) {
    const Eigen::Index k0 = std::max<Eigen::Index>(0, j - bw_);
    double djj = bands_(0, j);
    for (Eigen::Index k = k0; k < j; ++k) djj -= bands_(j - k, k) * bands_(j - k, k);
    if (!(djj > 0.0)) throw NumericalFailure("banded system is not positive definite");
    const double ljj = std::sqrt(djj);
    bands_(0, j) = ljj;
    const Eigen::Index iend = std::min<Eigen::Index>(n_ - 1, j + bw_);
    for (Eigen::Index i = j + 1; i <= iend; ++i) {
      double s = bands_(i - j, j);
      for (Eigen::Index k = std::max<Eigen::Index>(k0, i - bw_); k < j; ++k)
        s -= bands_(i - k, k) * bands_(j - k, k);
      bands_(i - j, j) = s / ljj;
    }
  }
  factored_ = true;
}

RVector BandedSystem::solve(const RVector& rhs) const {
  if (!factored_) throw InvalidArgument("banded system must be factored before solving");
  if (rhs.size() != n_) throw InvalidArgument("right-hand side size mismatch");
  RVector y = rhs;
  for (Eigen::Index i = 0; i < n_; ++i) {
    for (Eigen::Index k = std::max<Eigen::Index>(0, i - bw_); k < i; ++k) y[i] -= bands_(i - k, k) * y[k];
    y[i] /= bands_(0, i);
  }
  for (Eigen::Index i = n_ - 1; i >= 0; --i) {
    const Eigen::Index iend = std::min<Eigen::Index>(n_ - 1, i + bw_);
    for (Eigen::Index k = i + 1; k <= iend; ++k) y[i] -= bands_(k - i, i) * y[k];
    y[i] /= bands_(0, i);
  }
  return y;
}

// ---------------------------------------------------------------------------

DiscreteBvp assemble_bvp(const Domain& d, const BvpSpec& spec) {
  spec.validate();
  check_domain(d, spec);
  const bool dirichlet = spec.bc == BoundaryCondition::Dirichlet;
  const Layout l = make_layout(d, dirichlet);
  const auto n = static_cast<Eigen::Index>(l.unknowns.size());
  if (n == 0) throw InvalidArgument("no interior unknowns on " + d.describe());

  std::vector<Triplet> t;
  if (spec.order == 1) {
    add_first_order(d, l, dirichlet, 1.0, t);
  } else {
    add_second_order_1d(d, dirichlet, t);
    if (spec.norm == NormChoice::FullDa) add_first_order(d, l, dirichlet, 1.0, t);
  }

  DiscreteBvp sys{d, spec, SpMat(n, n), gather(d.weights(), l.unknowns), l.unknowns, -1};
  if (spec.norm != NormChoice::SeminormOnly)
    for (Eigen::Index p = 0; p < n; ++p) t.emplace_back(p, p, sys.mass[p]);
  sys.matrix.setFromTriplets(t.begin(), t.end());
  sys.matrix.makeCompressed();
  if (d.kind() == DomainKind::Interval) sys.half_bandwidth = spec.order;
  return sys;
}

GridFn solve_bvp(const GridFn& u, const BvpSpec& spec) {
  const DiscreteBvp sys = assemble_bvp(u.domain(), spec);
  const RVector wr = sys.mass.cwiseProduct(gather(RVector(u.values().real()), sys.unknowns));
  const RVector wi = sys.mass.cwiseProduct(gather(RVector(u.values().imag()), sys.unknowns));
  const RVector zr = solve_real(sys, wr);
  CVector z = CVector::Zero(u.size());
  if (u.is_real()) {
    for (size_t k = 0; k < sys.unknowns.size(); ++k) z[sys.unknowns[k]] = zr[static_cast<Eigen::Index>(k)];
  } else {
    const RVector zi = solve_real(sys, wi);
    for (size_t k = 0; k < sys.unknowns.size(); ++k) {
      const auto kk = static_cast<Eigen::Index>(k);
      z[sys.unknowns[k]] = Complex(zr[kk], zi[kk]);
    }
  }
  return GridFn(u.domain(), std::move(z));
}

GridFn solve_neumann_helmholtz(const GridFn& u, const BvpSpec& spec) {
  if (spec.order != 1 || spec.bc != BoundaryCondition::NeumannLike || spec.norm == NormChoice::SeminormOnly)
    throw InvalidArgument("Neumann-Helmholtz solve needs m = 1 with Neumann conditions and the full H^1 norm");
  return solve_bvp(u, spec);
}

GridFn solve_1d_order2m(const GridFn& u, int m, Order2mBoundary bc) {
  if (m < 1 || m > 2) throw InvalidArgument("order-2m solve supports m in {1, 2}, got " + std::to_string(m));
  if (u.domain().kind() != DomainKind::Interval)
    throw DomainMismatch("order-2m solve needs an Interval, got " + u.domain().describe());
  const BvpSpec spec = bc == Order2mBoundary::NaturalD_j
                           ? BvpSpec{m, BoundaryCondition::NeumannLike, NormChoice::SimplePlusL2}
                           : BvpSpec{m, BoundaryCondition::Dirichlet, NormChoice::SeminormOnly};
  return solve_bvp(u, spec);
}

Complex bvp_inner(const GridFn& z, const GridFn& v, const BvpSpec& spec) {
  const DiscreteBvp sys = assemble_bvp(z.domain(), spec);
  require_same(sys, v);
  return form(sys, z, v);
}

double variational_gap(const GridFn& z, const GridFn& u, const BvpSpec& spec) {
  const DiscreteBvp sys = assemble_bvp(z.domain(), spec);
  require_same(sys, u);
  const CVector r = sys.matrix * gather(z.values(), sys.unknowns) -
                    sys.mass.cast<Complex>().cwiseProduct(gather(u.values(), sys.unknowns));
  double gap = 0.0;
  for (Eigen::Index i = 0; i < r.size(); ++i) gap = std::max(gap, std::abs(r[i]) / std::sqrt(sys.mass[i]));
  return gap;
}

LinOp bvp_adjoint_op(const Domain& d, const BvpSpec& spec) {
  auto sys = std::make_shared<const DiscreteBvp>(assemble_bvp(d, spec));
  return {"E_m* (bvp)",
          d,
          d,
          [spec](const GridFn& u) { return solve_bvp(u, spec); },
          [sys](const GridFn& z) {
            CVector out = CVector::Zero(z.size());
            for (Eigen::Index a : sys->unknowns) out[a] = z[a];
            return GridFn(z.domain(), std::move(out));
          },
          InnerProductSpec::l2(),
          InnerProductSpec::custom_product("discrete H^" + std::to_string(spec.order),
                                           [sys](const GridFn& a, const GridFn& b) {
                                             require_same(*sys, a);
                                             require_same(*sys, b);
                                             return form(*sys, a, b);
                                           })};
}

double discrete_h2_seminorm(const GridFn& z) {
  const Domain& d = z.domain();
  if (d.kind() != DomainKind::Interval) throw DomainMismatch("H^2 seminorm helper needs an Interval");
  const double h = d.spacing(0);
  double acc = 0.0;
  for (Eigen::Index i = 1; i + 1 < z.size(); ++i)
    acc += h * std::norm((z[i - 1] - 2.0 * z[i] + z[i + 1]) / (h * h));
  return std::sqrt(acc);
}

}  // namespace sobolev
