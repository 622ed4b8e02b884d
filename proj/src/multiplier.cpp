#include "sobolev/multiplier.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace sobolev {

namespace {

constexpr double kFourPiSq = 4.0 * std::numbers::pi * std::numbers::pi;

void require_periodic(const Domain& d, const char* op) {
  if (!d.periodic())
    throw DomainMismatch(std::string(op) + ": needs a torus or truncated real-line domain, got " + d.describe());
}

template <typename F>
void for_each_bin(const Domain& d, F&& f) {
  for (int iy = 0; iy < d.ny(); ++iy) {
    const double fy = d.dims() == 2 ? d.frequency(1, iy) : 0.0;
    for (int ix = 0; ix < d.nx(); ++ix) {
      const double fx = d.frequency(0, ix);
      f(static_cast<Eigen::Index>(iy) * d.nx() + ix, std::hypot(fx, fy));
    }
  }
}

}  // namespace

void SobolevSpec::validate() const {
  if (!(order >= 0.0) || !std::isfinite(order))
    throw InvalidArgument("Sobolev order must be finite and >= 0");
  if (variant == NormVariant::BesselV2 && order < 1.0)
    throw InvalidArgument("BesselV2 norm is only equivalent for s >= 1");
  if (variant == NormVariant::SeriesM && order != std::floor(order))
    throw InvalidArgument("SeriesM norm needs an integer order");
}

std::string to_string(NormVariant v) {
  switch (v) {
    case NormVariant::BesselV1: return "BesselV1";
    case NormVariant::BesselV2: return "BesselV2";
    case NormVariant::SeriesM: return "SeriesM";
    case NormVariant::TorusS: return "TorusS";
  }
  return "?";
}

NormVariant norm_variant_from_string(const std::string& name) {
  if (name == "BesselV1") return NormVariant::BesselV1;
  if (name == "BesselV2") return NormVariant::BesselV2;
  if (name == "SeriesM") return NormVariant::SeriesM;
  if (name == "TorusS") return NormVariant::TorusS;
  throw InvalidArgument("unknown norm variant '" + name + "'");
}

double sobolev_weight_radial(double abs_xi, const SobolevSpec& spec) {
  spec.validate();
  const double s = spec.order;
  if (s == 0.0) return 1.0;
  switch (spec.variant) {
    case NormVariant::BesselV2: return 1.0 + std::pow(2.0 * std::numbers::pi * abs_xi, 2.0 * s);
    case NormVariant::BesselV1:
    case NormVariant::SeriesM:
    case NormVariant::TorusS: return std::pow(1.0 + kFourPiSq * abs_xi * abs_xi, s);
  }
  return 1.0;
}

RVector weight_table(const Domain& d, const SobolevSpec& spec) {
  require_periodic(d, "weight_table");
  spec.validate();
  RVector w(d.size());
  for_each_bin(d, [&](Eigen::Index i, double xi) { w[i] = sobolev_weight_radial(xi, spec); });
  return w;
}

GridFn apply_radial_multiplier(const GridFn& u, const std::function<double(double)>& m) {
  require_periodic(u.domain(), "multiplier");
  SpectralField c = fft_forward(u);
  for_each_bin(u.domain(), [&](Eigen::Index i, double xi) { c.coeffs[i] *= m(xi); });
  GridFn out = fft_inverse(c);
  if (u.is_real()) return GridFn::from_real(out.domain(), out.real());
  return out;
}

GridFn adjoint_embedding(const GridFn& u, const SobolevSpec& spec) {
  spec.validate();
  if (spec.order == 0.0) return u;
  return apply_radial_multiplier(u, [&](double xi) { return 1.0 / sobolev_weight_radial(xi, spec); });
}

GridFn bessel_potential(const GridFn& u, double s) {
  if (s == 0.0) return u;
  return apply_radial_multiplier(u, [s](double xi) { return std::pow(1.0 + kFourPiSq * xi * xi, -0.5 * s); });
}

Complex sobolev_inner(const GridFn& u, const GridFn& v, const SobolevSpec& spec) {
  if (!(u.domain() == v.domain())) throw DomainMismatch("sobolev_inner: domains differ");
  const Domain& d = u.domain();
  require_periodic(d, "sobolev_inner");
  const SpectralField cu = fft_forward(u);
  const SpectralField cv = fft_forward(v);
  const RVector w = weight_table(d, spec);
  const Complex sum = (w.array().cast<Complex>() * cu.coeffs.array() * cv.coeffs.conjugate().array()).sum();
  return sum * spectral_measure(d);
}

double sobolev_norm(const GridFn& u, const SobolevSpec& spec) {
  return std::sqrt(std::max(0.0, sobolev_inner(u, u, spec).real()));
}

GridFn inv_sqrt_adjoint(const GridFn& u, const SobolevSpec& spec) { return hilbert_scale_apply(u, spec, 1.0); }

GridFn hilbert_scale_apply(const GridFn& u, const SobolevSpec& spec, double t) {
  spec.validate();
  if (t == 0.0 || spec.order == 0.0) return u;
  return apply_radial_multiplier(u, [&](double xi) { return std::pow(sobolev_weight_radial(xi, spec), 0.5 * t); });
}

LinOp adjoint_embedding_op(const Domain& d, const SobolevSpec& spec) {
  require_periodic(d, "adjoint_embedding_op");
  spec.validate();
  return {"E_s* (multiplier)",
          d,
          d,
          [spec](const GridFn& u) { return adjoint_embedding(u, spec); },
          [](const GridFn& v) { return v; },
          InnerProductSpec::l2(),
          InnerProductSpec::sobolev_space(spec)};
}

NormEquivalenceReport norm_equivalence_check(double s, int kmax) {
  if (s < 1.0) throw InvalidArgument("norm equivalence constants hold for s >= 1");
  NormEquivalenceReport r;
  r.order = s;
  r.kmax = kmax;
  r.lower_margin = r.upper_margin = std::numeric_limits<double>::infinity();
  const double c1 = 0.5, c2 = std::pow(2.0, s - 1.0);
  bool ok = true;
  for (int k = 0; k <= kmax; ++k) {
    const double v1 = std::pow(1.0 + kFourPiSq * k * k, s);
    const double v2 = 1.0 + std::pow(2.0 * std::numbers::pi * k, 2.0 * s);
    // s = 1 makes the upper bound an identity; allow one rounding step.
    constexpr double slack = 1.0 + 4.0 * std::numeric_limits<double>::epsilon();
    ok = ok && c1 * v2 <= v1 * slack && v1 <= c2 * v2 * slack;
    r.lower_margin = std::min(r.lower_margin, v1 / (c1 * v2) - 1.0);
    r.upper_margin = std::min(r.upper_margin, c2 * v2 / v1 - 1.0);
  }
  r.holds = ok;
  return r;
}

}  // namespace sobolev
