#include "sobolev/discrete.hpp"

#include <cmath>
#include <memory>
#include <numbers>

namespace sobolev {

namespace {

Eigen::MatrixXcd gram(const std::vector<GridFn>& b, const InnerProductSpec& ip) {
  const auto n = static_cast<Eigen::Index>(b.size());
  Eigen::MatrixXcd g(n, n);
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index l = k; l < n; ++l) {
      g(k, l) = inner(b[l], b[k], ip);
      g(l, k) = std::conj(g(k, l));
    }
  for (Eigen::Index k = 0; k < n; ++k) g(k, k) = g(k, k).real();
  return g;
}

// LLT succeeds on many numerically singular matrices; also reject tiny pivots.
Eigen::LLT<Eigen::MatrixXcd> spd_factor(const Eigen::MatrixXcd& g, const char* which) {
  Eigen::LLT<Eigen::MatrixXcd> llt(g);
  bool ok = llt.info() == Eigen::Success;
  if (ok) {
    const Eigen::VectorXd piv = llt.matrixLLT().diagonal().real().cwiseAbs2();
    const double hmax = g.diagonal().real().maxCoeff();
    ok = piv.allFinite() && piv.minCoeff() > 1e-13 * hmax;
  }
  if (!ok) throw NumericalFailure(std::string(which) + " Gram matrix is not positive definite (dependent basis?)");
  return llt;
}

void check_bases(const std::vector<GridFn>& x, const std::vector<GridFn>& y) {
  if (x.empty() || y.empty()) throw InvalidArgument("bases must be nonempty");
  const Domain& d = x.front().domain();
  for (const auto* b : {&x, &y})
    for (const GridFn& f : *b)
      if (!(f.domain() == d)) throw DomainMismatch("basis functions live on different domains");
}

CVector y_moments(const DiscreteSetting& s, const GridFn& u) {
  if (!(u.domain() == s.domain))
    throw DomainMismatch("input lives on " + u.domain().describe() + ", setting on " + s.domain.describe());
  CVector b(static_cast<Eigen::Index>(s.basis_y.size()));
  for (size_t j = 0; j < s.basis_y.size(); ++j) b[static_cast<Eigen::Index>(j)] = inner(u, s.basis_y[j]);
  return b;
}

GridFn combine(const Domain& d, const std::vector<GridFn>& basis, const CVector& c) {
  CVector out = CVector::Zero(d.size());
  for (size_t k = 0; k < basis.size(); ++k) out += c[static_cast<Eigen::Index>(k)] * basis[k].values();
  return GridFn(d, std::move(out));
}

}  // namespace

DiscreteSetting assemble(std::vector<GridFn> basis_x, std::vector<GridFn> basis_y, const SobolevSpec& spec) {
  spec.validate();
  return assemble(std::move(basis_x), std::move(basis_y), InnerProductSpec::sobolev_space(spec));
}

DiscreteSetting assemble(std::vector<GridFn> basis_x, std::vector<GridFn> basis_y, const InnerProductSpec& x_inner) {
  check_bases(basis_x, basis_y);
  const Domain d = basis_x.front().domain();
  Eigen::MatrixXcd hx = gram(basis_x, x_inner);
  Eigen::MatrixXcd hy = gram(basis_y, InnerProductSpec::l2());
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(basis_x.size()), static_cast<Eigen::Index>(basis_y.size()));
  for (Eigen::Index k = 0; k < m.rows(); ++k)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(k, j) = inner(basis_y[j], basis_x[k]);
  if (!m.allFinite()) throw NumericalFailure("transfer matrix has non-finite entries");
  auto lx = spd_factor(hx, "H_X");
  auto ly = spd_factor(hy, "H_Y");
  return {d, std::move(basis_x), std::move(basis_y), x_inner, std::move(hx), std::move(hy), std::move(m),
          std::move(lx), std::move(ly)};
}

ProjectedAdjoint projected_adjoint(const DiscreteSetting& s, const GridFn& u) {
  const CVector d = s.hy_llt.solve(y_moments(s, u));
  CVector z = s.hx_llt.solve(s.m * d);
  if (!z.allFinite()) throw NumericalFailure("projected adjoint solve produced non-finite coefficients");
  GridFn f = synthesize_x(s, z);
  return {std::move(z), std::move(f)};
}

GridFn project_y(const DiscreteSetting& s, const GridFn& u) {
  return combine(s.domain, s.basis_y, s.hy_llt.solve(y_moments(s, u)));
}

GridFn project_x(const DiscreteSetting& s, const GridFn& v) {
  if (!(v.domain() == s.domain)) throw DomainMismatch("input lives on " + v.domain().describe());
  CVector b(static_cast<Eigen::Index>(s.basis_x.size()));
  for (size_t k = 0; k < s.basis_x.size(); ++k) b[static_cast<Eigen::Index>(k)] = inner(v, s.basis_x[k], s.x_inner);
  return combine(s.domain, s.basis_x, s.hx_llt.solve(b));
}

GridFn synthesize_x(const DiscreteSetting& s, const CVector& coeffs) {
  if (coeffs.size() != static_cast<Eigen::Index>(s.basis_x.size()))
    throw InvalidArgument("coefficient count differs from basis size");
  return combine(s.domain, s.basis_x, coeffs);
}

LinOp projected_adjoint_op(const DiscreteSetting& s) {
  auto sp = std::make_shared<const DiscreteSetting>(s);
  return {"E_mn* (discrete)",
          s.domain,
          s.domain,
          [sp](const GridFn& u) { return projected_adjoint(*sp, u).function; },
          [sp](const GridFn& v) { return project_y(*sp, project_x(*sp, v)); },
          InnerProductSpec::l2(),
          s.x_inner};
}

std::vector<GridFn> fourier_mode_basis(const Domain& torus, int kmax) {
  if (torus.kind() != DomainKind::Torus || torus.dims() != 1)
    throw DomainMismatch("Fourier-mode basis needs a 1D torus, got " + torus.describe());
  if (kmax < 0 || 2 * kmax >= torus.nx()) throw InvalidArgument("kmax must satisfy 0 <= 2 kmax < n");
  std::vector<GridFn> b;
  for (int k = 0; k <= kmax; ++k)
    for (int sgn : {1, -1}) {
      if (k == 0 && sgn < 0) continue;
      const int kk = sgn * k;
      b.push_back(GridFn::sample(torus, [kk](double x, double) {
        return std::polar(1.0, 2.0 * std::numbers::pi * kk * x);
      }));
    }
  return b;
}

std::vector<GridFn> hat_basis(const Domain& interval, int cells) {
  if (interval.kind() != DomainKind::Interval) throw DomainMismatch("hat basis needs an Interval");
  if (cells < 1 || (interval.nx() - 1) % cells != 0)
    throw InvalidArgument("grid with " + std::to_string(interval.nx() - 1) + " cells does not refine " +
                          std::to_string(cells) + " coarse cells");
  const double a = interval.lower(0);
  const double width = interval.spacing(0) * (interval.nx() - 1);
  const double H = width / cells;
  std::vector<GridFn> b;
  for (int k = 0; k <= cells; ++k) {
    const double c = a + k * H;
    b.push_back(GridFn::sample(interval, [c, H](double x, double) {
      return Complex(std::max(0.0, 1.0 - std::abs(x - c) / H));
    }));
  }
  return b;
}

}  // namespace sobolev
