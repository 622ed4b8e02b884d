#include "sobolev/radon.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

namespace sobolev {

namespace {

using std::numbers::pi;

GridFn sample_on(const Domain& d, const std::function<double(double, double)>& f) {
  return GridFn::sample(d, [&](double x, double y) { return Complex(f(x, y)); });
}

}  // namespace

void RadonGeometry::validate() const {
  if (pixels < 2 || pixels % 2 != 0) throw InvalidArgument("image pixels per side must be even and >= 2");
  if (n_offsets < 1 || n_angles < 1) throw InvalidArgument("need at least one offset and one angle");
  if (!(offset_extent > 0)) throw InvalidArgument("offset extent must be positive");
}

Domain RadonGeometry::image_domain() const { return Domain::real_line(1.0, pixels, 2); }

Domain RadonGeometry::sinogram_domain() const { return Domain::sinogram(n_offsets, n_angles, offset_extent); }

std::vector<std::pair<Eigen::Index, double>> ray_pixel_lengths(int pixels, double s, double phi) {
  const double h = 2.0 / pixels;
  const double p0[2] = {s * std::cos(phi), s * std::sin(phi)};
  const double dir[2] = {-std::sin(phi), std::cos(phi)};

  // parameter interval inside [-1,1]^2
  double tmin = -1e300, tmax = 1e300;
  for (int a = 0; a < 2; ++a) {
    if (std::abs(dir[a]) < 1e-15) {
      if (p0[a] <= -1.0 || p0[a] >= 1.0) return {};
      continue;
    }
    const double t1 = (-1.0 - p0[a]) / dir[a], t2 = (1.0 - p0[a]) / dir[a];
    tmin = std::max(tmin, std::min(t1, t2));
    tmax = std::min(tmax, std::max(t1, t2));
  }
  if (!(tmax > tmin)) return {};

  std::vector<double> ts{tmin, tmax};
  for (int a = 0; a < 2; ++a) {
    if (std::abs(dir[a]) < 1e-15) continue;
    for (int i = 1; i < pixels; ++i) {
      const double t = (-1.0 + i * h - p0[a]) / dir[a];
      if (t > tmin && t < tmax) ts.push_back(t);
    }
  }
  std::sort(ts.begin(), ts.end());

  std::vector<std::pair<Eigen::Index, double>> out;
  for (size_t k = 1; k < ts.size(); ++k) {
    const double len = ts[k] - ts[k - 1];
    if (len <= 1e-14) continue;
    const double tm = 0.5 * (ts[k] + ts[k - 1]);
    const int ix = std::clamp(static_cast<int>(std::floor((p0[0] + tm * dir[0] + 1.0) / h)), 0, pixels - 1);
    const int iy = std::clamp(static_cast<int>(std::floor((p0[1] + tm * dir[1] + 1.0) / h)), 0, pixels - 1);
    out.emplace_back(static_cast<Eigen::Index>(iy) * pixels + ix, len);
  }
  return out;
}

RadonMatrix::RadonMatrix(const RadonGeometry& g)
    : geom_((g.validate(), g)), image_(g.image_domain()), sino_(g.sinogram_domain()) {
  std::vector<Eigen::Triplet<double>> t;
  for (int j = 0; j < g.n_angles; ++j) {
    const double phi = sino_.coordinate(1, j);
    for (int i = 0; i < g.n_offsets; ++i) {
      const Eigen::Index row = static_cast<Eigen::Index>(j) * g.n_offsets + i;
      for (const auto& [px, len] : ray_pixel_lengths(g.pixels, sino_.coordinate(0, i), phi))
        t.emplace_back(row, px, len);
    }
  }
  lengths_.resize(sino_.size(), image_.size());
  lengths_.setFromTriplets(t.begin(), t.end());
  lengths_.makeCompressed();
}

GridFn RadonMatrix::forward(const GridFn& u) const {
  if (!(u.domain() == image_)) throw DomainMismatch("image lives on " + u.domain().describe() + ", expected " + image_.describe());
  CVector out(sino_.size());
  out.real() = lengths_ * u.values().real();
  out.imag() = lengths_ * u.values().imag();
  return GridFn(sino_, std::move(out));
}

GridFn RadonMatrix::adjoint(const GridFn& g) const {
  if (!(g.domain() == sino_)) throw DomainMismatch("sinogram lives on " + g.domain().describe() + ", expected " + sino_.describe());
  const double scale = sino_.cell_measure() / image_.cell_measure();
  CVector out(image_.size());
  out.real() = scale * (lengths_.transpose() * g.values().real());
  out.imag() = scale * (lengths_.transpose() * g.values().imag());
  return GridFn(image_, std::move(out));
}

LinOp RadonMatrix::op() const {
  auto self = std::make_shared<const RadonMatrix>(*this);
  return {"Radon",
          image_,
          sino_,
          [self](const GridFn& u) { return self->forward(u); },
          [self](const GridFn& g) { return self->adjoint(g); },
          InnerProductSpec::l2(),
          InnerProductSpec::l2()};
}

GridFn radon_forward(const GridFn& u, const RadonGeometry& g) { return RadonMatrix(g).forward(u); }

GridFn radon_adjoint(const GridFn& g, const RadonGeometry& geom) { return RadonMatrix(geom).adjoint(g); }

const std::vector<Ellipse>& shepp_logan_ellipses() {
  static const std::vector<Ellipse> table = {
      {1.0, 0.69, 0.92, 0.0, 0.0, 0.0},        {-0.8, 0.6624, 0.874, 0.0, -0.0184, 0.0},
      {-0.2, 0.11, 0.31, 0.22, 0.0, -18.0},    {-0.2, 0.16, 0.41, -0.22, 0.0, 18.0},
      {0.1, 0.21, 0.25, 0.0, 0.35, 0.0},       {0.1, 0.046, 0.046, 0.0, 0.1, 0.0},
      {0.1, 0.046, 0.046, 0.0, -0.1, 0.0},     {0.1, 0.046, 0.023, -0.08, -0.605, 0.0},
      {0.1, 0.023, 0.023, 0.0, -0.606, 0.0},   {0.1, 0.023, 0.046, 0.06, -0.605, 0.0},
  };
  return table;
}

GridFn ellipse_phantom(const Domain& image, const std::vector<Ellipse>& ellipses) {
  return sample_on(image, [&](double x, double y) {
    double v = 0.0;
    for (const Ellipse& e : ellipses) {
      const double th = e.theta_deg * pi / 180.0;
      const double c = std::cos(th), s = std::sin(th);
      const double xr = (x - e.x0) * c + (y - e.y0) * s;
      const double yr = -(x - e.x0) * s + (y - e.y0) * c;
      if ((xr / e.a) * (xr / e.a) + (yr / e.b) * (yr / e.b) <= 1.0) v += e.intensity;
    }
    return v;
  });
}

Phantom shepp_logan(int n) {
  if (n < 16) throw InvalidArgument("phantom needs N >= 16");
  const RadonGeometry g{n, 1, 1, 1.0};
  g.validate();
  return {PhantomKind::SheppLogan, ellipse_phantom(g.image_domain(), shepp_logan_ellipses())};
}

Phantom smooth_phantom(int n) {
  if (n < 16) throw InvalidArgument("phantom needs N >= 16");
  const RadonGeometry g{n, 1, 1, 1.0};
  g.validate();
  struct Bump { double x0, y0, sigma, amp; };
  static const Bump bumps[] = {{-0.3, 0.2, 0.1, 1.0}, {0.35, 0.1, 0.1, 0.8}, {0.0, -0.35, 0.08, 0.6}};
  auto f = [](double x, double y) {
    double v = 0.0;
    for (const Bump& b : bumps) {
      const double r2 = (x - b.x0) * (x - b.x0) + (y - b.y0) * (y - b.y0);
      v += b.amp * std::exp(-r2 / (2 * b.sigma * b.sigma));
    }
    return v;
  };
  GridFn img = sample_on(g.image_domain(), f);
  const double peak = img.values().real().maxCoeff();
  return {PhantomKind::SmoothBumps, img * (1.0 / peak)};
}

}  // namespace sobolev
