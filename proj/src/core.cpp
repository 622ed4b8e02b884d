#include "sobolev/core.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <unsupported/Eigen/FFT>

#include "sobolev/multiplier.hpp"

namespace sobolev {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidArgument(what);
}

void require_even(int n, const char* what) {
  require(n >= 2 && n % 2 == 0, std::string(what) + " must be even and >= 2, got " + std::to_string(n));
}

// Unscaled in-place DFT over a row-major nx-by-ny array.
void fft_inplace(CVector& data, int nx, int ny, bool inverse) {
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::Unscaled);
  std::vector<Complex> in, out;

  in.resize(nx);
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) in[ix] = data[static_cast<Eigen::Index>(iy) * nx + ix];
    if (inverse) fft.inv(out, in); else fft.fwd(out, in);
    for (int ix = 0; ix < nx; ++ix) data[static_cast<Eigen::Index>(iy) * nx + ix] = out[ix];
  }
  if (ny == 1) return;
  in.resize(ny);
  for (int ix = 0; ix < nx; ++ix) {
    for (int iy = 0; iy < ny; ++iy) in[iy] = data[static_cast<Eigen::Index>(iy) * nx + ix];
    if (inverse) fft.inv(out, in); else fft.fwd(out, in);
    for (int iy = 0; iy < ny; ++iy) data[static_cast<Eigen::Index>(iy) * nx + ix] = out[iy];
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Domain

Domain Domain::torus(int dims, int points) {
  require(dims == 1 || dims == 2, "torus dimension must be 1 or 2");
  require_even(points, "torus points per dimension");
  Domain d;
  d.kind_ = DomainKind::Torus;
  d.dims_ = dims;
  d.n_ = {points, dims == 2 ? points : 1};
  d.h_ = {1.0 / points, dims == 2 ? 1.0 / points : 1.0};
  d.build_mask();
  return d;
}

Domain Domain::real_line(double half_width, int points, int dims) {
  require(dims == 1 || dims == 2, "real-line dimension must be 1 or 2");
  require(half_width > 0, "half width must be positive");
  require_even(points, "real-line points");
  Domain d;
  d.kind_ = DomainKind::RealLineTrunc;
  d.dims_ = dims;
  const double h = 2.0 * half_width / points;
  d.n_ = {points, dims == 2 ? points : 1};
  d.h_ = {h, dims == 2 ? h : 1.0};
  d.lo_ = {-half_width, dims == 2 ? -half_width : 0.0};
  d.offset_ = {0.5 * h, dims == 2 ? 0.5 * h : 0.0};
  d.build_mask();
  return d;
}

Domain Domain::interval(double a, double b, int points) {
  require(b > a, "interval requires a < b");
  require(points >= 2, "interval needs at least 2 points");
  Domain d;
  d.kind_ = DomainKind::Interval;
  d.dims_ = 1;
  d.n_ = {points, 1};
  d.h_ = {(b - a) / (points - 1), 1.0};
  d.lo_ = {a, 0.0};
  d.build_mask();
  return d;
}

Domain Domain::rectangle(double a, double b, int nx, int ny) {
  require(a > 0 && b > 0, "rectangle side lengths must be positive");
  require(nx >= 2 && ny >= 2, "rectangle needs at least 2 nodes per side");
  Domain d;
  d.kind_ = DomainKind::Rectangle;
  d.dims_ = 2;
  d.n_ = {nx, ny};
  d.h_ = {a / (nx - 1), b / (ny - 1)};
  d.build_mask();
  return d;
}

Domain Domain::disk_mask(double radius, int pixels) {
  require(radius > 0, "disk radius must be positive");
  require_even(pixels, "disk pixels per side");
  Domain d;
  d.kind_ = DomainKind::DiskMask;
  d.dims_ = 2;
  d.radius_ = radius;
  const double h = 2.0 * radius / pixels;
  d.n_ = {pixels, pixels};
  d.h_ = {h, h};
  d.lo_ = {-radius, -radius};
  d.offset_ = {0.5 * h, 0.5 * h};
  d.build_mask();
  return d;
}

Domain Domain::sinogram(int n_offsets, int n_angles, double offset_extent) {
  require(n_offsets >= 1 && n_angles >= 1, "sinogram needs n_offsets, n_angles >= 1");
  require(offset_extent > 0, "sinogram offset extent must be positive");
  Domain d;
  d.kind_ = DomainKind::Sinogram;
  d.dims_ = 2;
  const double ds = 2.0 * offset_extent / n_offsets;
  d.n_ = {n_offsets, n_angles};
  d.h_ = {ds, std::numbers::pi / n_angles};
  d.lo_ = {-offset_extent, 0.0};
  d.offset_ = {0.5 * ds, 0.0};
  d.build_mask();
  return d;
}

void Domain::build_mask() {
  const Eigen::Index total = grid_size();
  active_.clear();
  grid_map_.assign(static_cast<std::size_t>(total), -1);
  for (int iy = 0; iy < n_[1]; ++iy) {
    for (int ix = 0; ix < n_[0]; ++ix) {
      const Eigen::Index g = static_cast<Eigen::Index>(iy) * n_[0] + ix;
      bool on = true;
      if (kind_ == DomainKind::DiskMask) {
        const double x = coordinate(0, ix), y = coordinate(1, iy);
        on = x * x + y * y < radius_ * radius_;
      }
      if (on) {
        grid_map_[static_cast<std::size_t>(g)] = static_cast<Eigen::Index>(active_.size());
        active_.push_back(g);
      }
    }
  }
}

double Domain::period(int axis) const {
  if (kind_ == DomainKind::Torus) return 1.0;
  return h_[axis] * n_[axis];
}

double Domain::coordinate(int axis, int i) const { return lo_[axis] + offset_[axis] + i * h_[axis]; }

std::array<int, 2> Domain::grid_index(Eigen::Index active) const {
  const Eigen::Index g = active_[static_cast<std::size_t>(active)];
  return {static_cast<int>(g % n_[0]), static_cast<int>(g / n_[0])};
}

Eigen::Index Domain::active_index(int ix, int iy) const {
  if (ix < 0 || iy < 0 || ix >= n_[0] || iy >= n_[1]) return -1;
  return grid_map_[static_cast<std::size_t>(iy) * n_[0] + ix];
}

std::array<double, 2> Domain::point(Eigen::Index active) const {
  const auto [ix, iy] = grid_index(active);
  return {coordinate(0, ix), dims_ == 2 ? coordinate(1, iy) : 0.0};
}

double Domain::cell_measure() const { return dims_ == 2 ? h_[0] * h_[1] : h_[0]; }

RVector Domain::weights() const {
  RVector w = RVector::Constant(size(), cell_measure());
  if (kind_ == DomainKind::Interval || kind_ == DomainKind::Rectangle) {
    for (Eigen::Index k = 0; k < size(); ++k) {
      const auto [ix, iy] = grid_index(k);
      if (ix == 0 || ix == n_[0] - 1) w[k] *= 0.5;
      if (dims_ == 2 && (iy == 0 || iy == n_[1] - 1)) w[k] *= 0.5;
    }
  }
  return w;
}

int Domain::frequency_index(int axis, int i) const {
  const int n = n_[axis];
  return i <= n / 2 ? i : i - n;
}

double Domain::frequency(int axis, int i) const { return frequency_index(axis, i) / period(axis); }

std::string Domain::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case DomainKind::Torus: os << "Torus" << dims_ << "(" << n_[0] << ")"; break;
    case DomainKind::RealLineTrunc:
      os << "RealLineTrunc" << dims_ << "(W=" << -lo_[0] << ", " << n_[0] << ")";
      break;
    case DomainKind::Interval:
      os << "Interval(" << lo_[0] << ", " << lo_[0] + h_[0] * (n_[0] - 1) << ", " << n_[0] << ")";
      break;
    case DomainKind::Rectangle:
      os << "Rectangle(" << h_[0] * (n_[0] - 1) << ", " << h_[1] * (n_[1] - 1) << ", " << n_[0] << ", "
         << n_[1] << ")";
      break;
    case DomainKind::DiskMask: os << "DiskMask(R=" << radius_ << ", " << n_[0] << ")"; break;
    case DomainKind::Sinogram: os << "Sinogram(" << n_[0] << " offsets, " << n_[1] << " angles)"; break;
  }
  return os.str();
}

bool Domain::operator==(const Domain& o) const {
  return kind_ == o.kind_ && dims_ == o.dims_ && n_ == o.n_ && h_ == o.h_ && lo_ == o.lo_ &&
         radius_ == o.radius_;
}

// ---------------------------------------------------------------------------
// GridFn

GridFn::GridFn(Domain domain, CVector values) : domain_(std::move(domain)), values_(std::move(values)) {
  if (values_.size() != domain_.size())
    throw InvalidArgument("GridFn: " + std::to_string(values_.size()) + " values for " +
                          std::to_string(domain_.size()) + " active samples on " + domain_.describe());
  if (!values_.allFinite()) throw NumericalFailure("GridFn: non-finite sample on " + domain_.describe());
}

GridFn GridFn::zeros(const Domain& d) { return GridFn(d, CVector::Zero(d.size())); }

GridFn GridFn::constant(const Domain& d, Complex c) { return GridFn(d, CVector::Constant(d.size(), c)); }

GridFn GridFn::sample(const Domain& d, const std::function<Complex(double, double)>& f) {
  CVector v(d.size());
  for (Eigen::Index k = 0; k < d.size(); ++k) {
    const auto p = d.point(k);
    v[k] = f(p[0], p[1]);
  }
  return GridFn(d, std::move(v));
}

GridFn GridFn::from_real(const Domain& d, const RVector& values) {
  return GridFn(d, values.cast<Complex>());
}

bool GridFn::is_real() const { return (values_.imag().array() == 0.0).all(); }

GridFn GridFn::operator+(const GridFn& o) const {
  if (!(domain_ == o.domain_)) throw DomainMismatch("GridFn +: domains differ");
  return GridFn(domain_, values_ + o.values_);
}

GridFn GridFn::operator-(const GridFn& o) const {
  if (!(domain_ == o.domain_)) throw DomainMismatch("GridFn -: domains differ");
  return GridFn(domain_, values_ - o.values_);
}

GridFn GridFn::operator*(Complex c) const { return GridFn(domain_, values_ * c); }

GridFn& GridFn::operator+=(const GridFn& o) {
  if (!(domain_ == o.domain_)) throw DomainMismatch("GridFn +=: domains differ");
  values_ += o.values_;
  return *this;
}

GridFn& GridFn::operator-=(const GridFn& o) {
  if (!(domain_ == o.domain_)) throw DomainMismatch("GridFn -=: domains differ");
  values_ -= o.values_;
  return *this;
}

// ---------------------------------------------------------------------------
// FFT

double spectral_measure(const Domain& d) {
  double m = 1.0 / d.period(0);
  if (d.dims() == 2) m /= d.period(1);
  return m;
}

SpectralField fft_forward(const GridFn& u) {
  const Domain& d = u.domain();
  if (!d.periodic()) throw InvalidArgument("fft_forward: domain " + d.describe() + " is not periodic");
  CVector c = u.values();
  fft_inplace(c, d.nx(), d.ny(), false);
  c *= d.cell_measure();
  return {d, std::move(c)};
}

GridFn fft_inverse(const SpectralField& c) {
  const Domain& d = c.domain;
  if (!d.periodic()) throw InvalidArgument("fft_inverse: domain " + d.describe() + " is not periodic");
  if (c.coeffs.size() != d.size())
    throw InvalidArgument("fft_inverse: " + std::to_string(c.coeffs.size()) + " coefficients for grid of " +
                          std::to_string(d.size()));
  CVector v = c.coeffs;
  fft_inplace(v, d.nx(), d.ny(), true);
  v *= spectral_measure(d);
  return GridFn(d, std::move(v));
}

// ---------------------------------------------------------------------------
// Inner products

InnerProductSpec InnerProductSpec::l2() { return {}; }

InnerProductSpec InnerProductSpec::sobolev_space(SobolevSpec spec) {
  spec.validate();
  InnerProductSpec p;
  p.kind = Kind::Sobolev;
  p.sobolev = spec;
  std::ostringstream os;
  os << "H^" << spec.order << "[" << to_string(spec.variant) << "]";
  p.name = os.str();
  return p;
}

InnerProductSpec InnerProductSpec::custom_product(std::string name,
                                                  std::function<Complex(const GridFn&, const GridFn&)> fn) {
  InnerProductSpec p;
  p.kind = Kind::Custom;
  p.custom = std::move(fn);
  p.name = std::move(name);
  return p;
}

Complex inner(const GridFn& u, const GridFn& v, const InnerProductSpec& spec) {
  if (!(u.domain() == v.domain()))
    throw DomainMismatch("inner: " + u.domain().describe() + " vs " + v.domain().describe());
  switch (spec.kind) {
    case InnerProductSpec::Kind::L2: {
      const RVector w = u.domain().weights();
      return (u.values().array() * v.values().conjugate().array() * w.array().cast<Complex>()).sum();
    }
    case InnerProductSpec::Kind::Sobolev: return sobolev_inner(u, v, spec.sobolev);
    case InnerProductSpec::Kind::Custom: return spec.custom(u, v);
  }
  return {};
}

double norm(const GridFn& u, const InnerProductSpec& spec) {
  return std::sqrt(std::max(0.0, inner(u, u, spec).real()));
}

LinOp identity_op(const Domain& d) {
  auto id = [](const GridFn& u) { return u; };
  return {"identity", d, d, id, id, InnerProductSpec::l2(), InnerProductSpec::l2()};
}

GridFn random_real(const Domain& d, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  RVector v(d.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = dist(gen);
  return GridFn::from_real(d, v);
}

double check_adjoint(const LinOp& op, int trials, std::uint64_t seed) {
  if (trials < 1) throw InvalidArgument("check_adjoint: trials must be >= 1");
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const GridFn v = random_real(op.domain, seed + 2 * static_cast<std::uint64_t>(t));
    const GridFn u = random_real(op.codomain, seed + 2 * static_cast<std::uint64_t>(t) + 1);
    const Complex lhs = inner(op.apply(v), u, op.codomain_inner);
    const Complex rhs = inner(v, op.apply_adjoint(u), op.domain_inner);
    const double scale = norm(u, op.codomain_inner) * norm(v, op.domain_inner);
    worst = std::max(worst, std::abs(lhs - rhs) / scale);
  }
  return worst;
}

}  // namespace sobolev
