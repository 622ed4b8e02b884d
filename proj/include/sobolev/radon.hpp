#pragma once

#include <vector>

#include <Eigen/SparseCore>

#include "sobolev/core.hpp"

namespace sobolev {

/// Parallel-beam geometry. The image is an N x N pixel grid on [-1,1]^2
/// (a 2D RealLineTrunc domain, so spectral embeddings apply directly).
/// Offsets are bin centres on [-S, S]; angles j pi / n_angles.
struct RadonGeometry {
  int pixels = 64;
  int n_offsets = 100;
  int n_angles = 60;
  double offset_extent = 1.4142135623730951;  // covers the image diagonal

  void validate() const;
  Domain image_domain() const;
  Domain sinogram_domain() const;
};

/// Sparse ray/pixel intersection lengths, one row per (angle, offset) bin in
/// sinogram layout (offset fastest), one column per pixel.
class RadonMatrix {
 public:
  explicit RadonMatrix(const RadonGeometry& g);

  const RadonGeometry& geometry() const { return geom_; }
  const Eigen::SparseMatrix<double, Eigen::RowMajor>& lengths() const { return lengths_; }

  /// (Ru)(s, phi) = sum over pixels of length * value.
  GridFn forward(const GridFn& u) const;
  /// Transpose with quadrature weights: (ds dphi / h^2) L^T g, so that
  /// <Ru, g>_sinogram = <u, R*g>_image exactly.
  GridFn adjoint(const GridFn& g) const;

  LinOp op() const;

 private:
  RadonGeometry geom_;
  Domain image_;
  Domain sino_;
  Eigen::SparseMatrix<double, Eigen::RowMajor> lengths_;
};

GridFn radon_forward(const GridFn& u, const RadonGeometry& g);
GridFn radon_adjoint(const GridFn& g, const RadonGeometry& geom);

/// Exact lengths of the intersections of the line {s w + t w_perp} with the
/// pixels of an N x N grid on [-1,1]^2, as (pixel index, length) pairs.
std::vector<std::pair<Eigen::Index, double>> ray_pixel_lengths(int pixels, double s, double phi);

enum class PhantomKind { SheppLogan, SmoothBumps };

struct Ellipse {
  double intensity, a, b, x0, y0, theta_deg;
};

/// Modified (high-contrast) Shepp-Logan table, 10 ellipses.
const std::vector<Ellipse>& shepp_logan_ellipses();

/// Sum of ellipse indicators point-sampled at pixel centres.
GridFn ellipse_phantom(const Domain& image, const std::vector<Ellipse>& ellipses);

struct Phantom {
  PhantomKind kind;
  GridFn image;
};

/// Both need N >= 16 (even).
Phantom shepp_logan(int n);
/// Three fixed Gaussians inside the unit disk, peak 1.
Phantom smooth_phantom(int n);

}  // namespace sobolev
