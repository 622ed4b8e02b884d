#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sobolev/errors.hpp"
#include "sobolev/norm.hpp"

namespace sobolev {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

enum class DomainKind { Torus, Interval, Rectangle, DiskMask, RealLineTrunc, Sinogram };

/// Uniform sampling grid over a declared domain.
///
/// Layout is row-major with x as the fast axis: index = iy * nx + ix.
/// Coordinates per kind:
///   Torus          [0,1)^N, x_i = i/n                     (periodic)
///   RealLineTrunc  [-W,W)^N, cell centers -W + (i+1/2)h   (periodic, period 2W)
///   Interval       [a,b], nodes a + i h, h = (b-a)/(n-1)
///   Rectangle      [0,a]x[0,b], nodes, nx*ny points
///   DiskMask       [-R,R]^2 pixel centers, active iff center lies inside the circle
///   Sinogram       offsets (cell centers in [-S,S]) x angles j*pi/n_angles
class Domain {
 public:
  static Domain torus(int dims, int points);
  static Domain real_line(double half_width, int points, int dims = 1);
  static Domain interval(double a, double b, int points);
  static Domain rectangle(double a, double b, int nx, int ny);
  static Domain disk_mask(double radius, int pixels);
  static Domain sinogram(int n_offsets, int n_angles, double offset_extent);

  DomainKind kind() const { return kind_; }
  int dims() const { return dims_; }
  int nx() const { return n_[0]; }
  int ny() const { return n_[1]; }
  int points(int axis) const { return n_[axis]; }
  /// Number of active samples (equals nx*ny except for DiskMask).
  Eigen::Index size() const { return static_cast<Eigen::Index>(active_.size()); }
  Eigen::Index grid_size() const { return static_cast<Eigen::Index>(n_[0]) * n_[1]; }

  double spacing(int axis) const { return h_[axis]; }
  /// Lower corner along an axis (first coordinate is lower + offset).
  double lower(int axis) const { return lo_[axis]; }
  /// Period length along an axis; only meaningful for periodic kinds.
  double period(int axis) const;
  bool periodic() const { return kind_ == DomainKind::Torus || kind_ == DomainKind::RealLineTrunc; }

  double coordinate(int axis, int i) const;
  /// Grid (ix, iy) of the k-th active sample.
  std::array<int, 2> grid_index(Eigen::Index active) const;
  /// Active index of grid point (ix, iy), or -1 when masked out.
  Eigen::Index active_index(int ix, int iy) const;
  std::array<double, 2> point(Eigen::Index active) const;

  /// Quadrature weight per active sample (cell measure; trapezoid on node grids).
  RVector weights() const;
  /// Product of spacings, h^N.
  double cell_measure() const;

  /// Signed integer frequency of FFT bin i on an axis; Nyquist is +n/2.
  int frequency_index(int axis, int i) const;
  /// Physical frequency xi = k / period for FFT bin i.
  double frequency(int axis, int i) const;

  std::string describe() const;
  bool operator==(const Domain& other) const;

 private:
  Domain() = default;
  void build_mask();

  DomainKind kind_ = DomainKind::Torus;
  int dims_ = 1;
  std::array<int, 2> n_{1, 1};
  std::array<double, 2> h_{1.0, 1.0};
  std::array<double, 2> lo_{0.0, 0.0};
  std::array<double, 2> offset_{0.0, 0.0};
  double radius_ = 0.0;
  std::vector<Eigen::Index> active_;    // active -> grid
  std::vector<Eigen::Index> grid_map_;  // grid -> active or -1
};

/// Sampled function on a Domain. Values are complex, finite, one per active sample.
class GridFn {
 public:
  GridFn(Domain domain, CVector values);

  static GridFn zeros(const Domain& d);
  static GridFn constant(const Domain& d, Complex c);
  static GridFn sample(const Domain& d, const std::function<Complex(double, double)>& f);
  static GridFn from_real(const Domain& d, const RVector& values);

  const Domain& domain() const { return domain_; }
  const CVector& values() const { return values_; }
  Eigen::Index size() const { return values_.size(); }
  Complex operator[](Eigen::Index i) const { return values_[i]; }

  RVector real() const { return values_.real(); }
  bool is_real() const;

  GridFn operator+(const GridFn& o) const;
  GridFn operator-(const GridFn& o) const;
  GridFn operator*(Complex c) const;
  GridFn& operator+=(const GridFn& o);
  GridFn& operator-=(const GridFn& o);

 private:
  Domain domain_;
  CVector values_;
};

inline GridFn operator*(Complex c, const GridFn& u) { return u * c; }

/// Fourier coefficients of a periodic GridFn in FFT bin order.
struct SpectralField {
  Domain domain;
  CVector coeffs;
};

SpectralField fft_forward(const GridFn& u);
GridFn fft_inverse(const SpectralField& c);

/// Measure of a single frequency cell, 1/period^N (1 on the unit torus).
double spectral_measure(const Domain& d);

struct InnerProductSpec {
  enum class Kind { L2, Sobolev, Custom };

  Kind kind = Kind::L2;
  SobolevSpec sobolev{};
  std::function<Complex(const GridFn&, const GridFn&)> custom;
  std::string name = "L2";

  static InnerProductSpec l2();
  static InnerProductSpec sobolev_space(SobolevSpec spec);
  static InnerProductSpec custom_product(std::string name,
                                         std::function<Complex(const GridFn&, const GridFn&)> fn);
};

/// <u, v> = sum_i w_i u_i conj(v_i) for L2; Sobolev kinds dispatch to sobolev_inner.
Complex inner(const GridFn& u, const GridFn& v, const InnerProductSpec& spec = InnerProductSpec::l2());
double norm(const GridFn& u, const InnerProductSpec& spec = InnerProductSpec::l2());

/// Linear operator between sampled function spaces with declared inner products.
struct LinOp {
  std::string name;
  Domain domain;
  Domain codomain;
  std::function<GridFn(const GridFn&)> apply;
  std::function<GridFn(const GridFn&)> apply_adjoint;
  InnerProductSpec domain_inner;
  InnerProductSpec codomain_inner;
};

LinOp identity_op(const Domain& d);

/// max over trials of |<Av,u> - <v,A*u>| / (|u| |v|), with real uniform random u, v.
double check_adjoint(const LinOp& op, int trials, std::uint64_t seed);

/// Real uniform(-1, 1) samples from a seeded generator.
GridFn random_real(const Domain& d, std::uint64_t seed);

}  // namespace sobolev
