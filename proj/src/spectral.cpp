#include "sobolev/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sobolev/multiplier.hpp"

namespace sobolev {

namespace {

using std::numbers::pi;

void sort_by_lambda(std::vector<EigenPair>& e) {
  std::stable_sort(e.begin(), e.end(), [](const EigenPair& a, const EigenPair& b) { return a.lambda < b.lambda; });
}

// J_m'(x) = (J_{m-1}(x) - J_{m+1}(x)) / 2, with J_{-1} = -J_1.
double bessel_j_prime(int m, double x) {
  const double jm1 = m == 0 ? -bessel_j(1, x) : bessel_j(m - 1, x);
  return 0.5 * (jm1 - bessel_j(m + 1, x));
}

}  // namespace

EigenSystem EigenSystem::truncated(size_t k) const {
  if (k > entries.size()) throw InvalidArgument("cannot keep more eigenpairs than the system holds");
  return {domain, std::vector<EigenPair>(entries.begin(), entries.begin() + static_cast<std::ptrdiff_t>(k))};
}

double orthonormality_defect(const EigenSystem& sys) {
  double worst = 0.0;
  for (size_t i = 0; i < sys.count(); ++i)
    for (size_t j = i; j < sys.count(); ++j) {
      const Complex g = inner(sys.entries[i].eigfn, sys.entries[j].eigfn);
      worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
    }
  return worst;
}

EigenSystem rectangle_dirichlet_eigs(double a, double b, int max_m, int max_n, const Domain& grid) {
  if (!(a > 0) || !(b > 0)) throw InvalidArgument("rectangle sides must be positive");
  if (max_m < 1 || max_n < 1) throw InvalidArgument("need max_m, max_n >= 1");
  if (grid.kind() != DomainKind::Rectangle)
    throw DomainMismatch("rectangle eigensystem needs a Rectangle grid, got " + grid.describe());
  const double ga = grid.spacing(0) * (grid.nx() - 1), gb = grid.spacing(1) * (grid.ny() - 1);
  if (std::abs(ga - a) > 1e-12 * a || std::abs(gb - b) > 1e-12 * b)
    throw DomainMismatch("grid does not span [0,a]x[0,b]");

  const double c = 2.0 / std::sqrt(a * b);
  std::vector<EigenPair> e;
  for (int m = 1; m <= max_m; ++m)
    for (int n = 1; n <= max_n; ++n) {
      const double lam = pi * pi * ((m / a) * (m / a) + (n / b) * (n / b));
      GridFn f = GridFn::sample(grid, [&](double x, double y) {
        return Complex(c * std::sin(m * pi * x / a) * std::sin(n * pi * y / b));
      });
      e.push_back({lam, std::move(f), {m, n}, ""});
    }
  sort_by_lambda(e);
  return {grid, std::move(e)};
}

double bessel_j(int m, double x) {
  if (m < 0) throw InvalidArgument("bessel_j needs m >= 0");
  if (!std::isfinite(x)) throw InvalidArgument("bessel_j needs finite x");
  // (1/2pi) int_0^{2pi} cos(m t - x sin t) dt; the integrand is entire and periodic
  const int n = 64 + 2 * static_cast<int>(std::ceil(std::abs(x) + m));
  double acc = 0.0;
  for (int k = 0; k < n; ++k) {
    const double t = 2.0 * pi * k / n;
    acc += std::cos(m * t - x * std::sin(t));
  }
  return acc / n;
}

double bessel_j_zero(int m, int n) {
  if (m < 0 || n < 1) throw InvalidArgument("bessel_j_zero needs m >= 0 and n >= 1");
  // Consecutive zeros are more than 2.5 apart, so a 0.25 scan sees each sign change.
  const double step = 0.25;
  const double guess = (n + 0.5 * m - 0.25) * pi;
  double lo = m == 0 ? 1e-3 : std::max(1e-3, static_cast<double>(m) * 0.5);
  double flo = bessel_j(m, lo);
  int found = 0;
  const double limit = guess + 2.0 * m + 10.0;
  while (lo < limit) {
    const double hi = lo + step;
    const double fhi = bessel_j(m, hi);
    if (flo == 0.0 || flo * fhi < 0.0) {
      if (++found == n) {
        double a = lo, b = hi, fa = flo;
        for (int it = 0; it < 60 && b - a > 1e-6; ++it) {
          const double mid = 0.5 * (a + b);
          const double fm = bessel_j(m, mid);
          if ((fa < 0) == (fm < 0)) { a = mid; fa = fm; } else { b = mid; }
        }
        double x = 0.5 * (a + b);
        for (int it = 0; it < 8; ++it) {
          const double dx = bessel_j(m, x) / bessel_j_prime(m, x);
          x -= dx;
          if (std::abs(dx) < 1e-15 * x) break;
        }
        return x;
      }
    }
    lo = hi;
    flo = fhi;
  }
  throw NumericalFailure("no bracket for zero " + std::to_string(n) + " of J_" + std::to_string(m));
}

EigenSystem disk_dirichlet_eigs(double radius, int max_m, int max_n, const Domain& grid) {
  if (!(radius > 0)) throw InvalidArgument("disk radius must be positive");
  if (max_m < 0 || max_n < 1) throw InvalidArgument("need max_m >= 0 and max_n >= 1");
  if (grid.kind() != DomainKind::DiskMask)
    throw DomainMismatch("disk eigensystem needs a DiskMask grid, got " + grid.describe());
  if (std::abs(grid.lower(0) + radius) > 1e-12 * radius) throw DomainMismatch("grid radius differs from disk radius");

  std::vector<EigenPair> e;
  for (int m = 0; m <= max_m; ++m)
    for (int n = 1; n <= max_n; ++n) {
      const double j = bessel_j_zero(m, n);
      const double lam = (j / radius) * (j / radius);
      for (const char* br : {"cos", "sin"}) {
        const bool is_sin = br[0] == 's';
        if (m == 0 && is_sin) continue;
        GridFn f = GridFn::sample(grid, [&](double x, double y) {
          const double r = std::hypot(x, y), th = std::atan2(y, x);
          return Complex(bessel_j(m, j * r / radius) * (is_sin ? std::sin(m * th) : std::cos(m * th)));
        });
        const double nn = norm(f);
        if (!(nn > 0)) throw NumericalFailure("eigenfunction vanishes on the pixel mask");
        e.push_back({lam, f * (1.0 / nn), {m, n}, br});
      }
    }
  sort_by_lambda(e);
  return {grid, std::move(e)};
}

GridFn adjoint_embedding_eigs(const GridFn& u, const EigenSystem& eigs) {
  if (eigs.entries.empty()) throw InvalidArgument("empty eigensystem");
  if (!(u.domain() == eigs.domain))
    throw DomainMismatch("eigensystem lives on " + eigs.domain.describe() + ", input on " + u.domain().describe());
  CVector z = CVector::Zero(u.size());
  for (const EigenPair& p : eigs.entries) z += (inner(u, p.eigfn) / p.lambda) * p.eigfn.values();
  return GridFn(u.domain(), std::move(z));
}

SingularSystem svd_from_multiplier(const SobolevSpec& spec, const Domain& torus, int K) {
  spec.validate();
  if (torus.kind() != DomainKind::Torus)
    throw DomainMismatch("multiplier singular system needs a torus, got " + torus.describe());
  if (K < 1 || K > torus.size())
    throw InvalidArgument("K must lie in [1, " + std::to_string(torus.size()) + "], got " + std::to_string(K));

  struct Bin { long k2; Eigen::Index idx; int kx, ky; };
  std::vector<Bin> bins;
  for (int iy = 0; iy < torus.ny(); ++iy)
    for (int ix = 0; ix < torus.nx(); ++ix) {
      const int kx = torus.frequency_index(0, ix);
      const int ky = torus.dims() == 2 ? torus.frequency_index(1, iy) : 0;
      bins.push_back({static_cast<long>(kx) * kx + static_cast<long>(ky) * ky,
                      static_cast<Eigen::Index>(iy) * torus.nx() + ix, kx, ky});
    }
  std::stable_sort(bins.begin(), bins.end(), [](const Bin& a, const Bin& b) { return a.k2 < b.k2; });

  SingularSystem sys{spec, {}};
  for (int t = 0; t < K; ++t) {
    const Bin& b = bins[static_cast<size_t>(t)];
    const double sigma = 1.0 / std::sqrt(sobolev_weight_radial(std::sqrt(static_cast<double>(b.k2)), spec));
    GridFn e = GridFn::sample(torus, [&](double x, double y) {
      return std::polar(1.0, 2.0 * pi * (b.kx * x + b.ky * y));
    });
    sys.triples.push_back({sigma, e * sigma, e, {b.kx, b.ky}});
  }
  return sys;
}

GridFn svd_embed(const GridFn& v, const SingularSystem& sys) {
  if (sys.triples.empty()) throw InvalidArgument("empty singular system");
  CVector out = CVector::Zero(v.size());
  for (const SingularTriple& t : sys.triples)
    out += (t.sigma * sobolev_inner(v, t.v, sys.spec)) * t.u.values();
  return GridFn(v.domain(), std::move(out));
}

GridFn svd_adjoint(const GridFn& u, const SingularSystem& sys) {
  if (sys.triples.empty()) throw InvalidArgument("empty singular system");
  CVector out = CVector::Zero(u.size());
  for (const SingularTriple& t : sys.triples) out += (t.sigma * inner(u, t.u)) * t.v.values();
  return GridFn(u.domain(), std::move(out));
}

}  // namespace sobolev
