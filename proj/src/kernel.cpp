#include "sobolev/kernel.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <unordered_map>

#include "sobolev/quadrature.hpp"

namespace sobolev {

namespace {

constexpr double kPi = std::numbers::pi;

// Integrates exp(g(t)) over [lo, hi] where g is unimodal with maximum at peak.
// The integration window is clipped where g drops 45 below its maximum.
template <typename G>
double integrate_log_unimodal(G&& g, double lo, double peak, double hi) {
  const double gmax = g(peak);
  auto edge = [&](double inside, double outside) {
    if (g(outside) > gmax - 45.0) return outside;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (inside + outside);
      if (g(mid) > gmax - 45.0) inside = mid; else outside = mid;
      if (std::abs(outside - inside) < 1e-10) break;
    }
    return outside;
  };
  const double a = peak > lo ? edge(peak, lo) : lo;
  const double b = edge(peak, hi);
  auto f = [&](double t) { return std::exp(g(t) - gmax); };
  const int panels = 64;
  double sum = 0.0;
  if (a < peak) sum += integrate(f, a, peak, panels / 2);
  sum += integrate(f, peak, b, panels / 2);
  return sum * std::exp(gmax);
}

// Root of a decreasing function on [lo, hi] by bisection; clamps when no sign change.
template <typename F>
double decreasing_root(F&& f, double lo, double hi) {
  if (f(lo) <= 0.0) return lo;
  if (f(hi) >= 0.0) return hi;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) > 0.0) lo = mid; else hi = mid;
    if (hi - lo < 1e-12) break;
  }
  return 0.5 * (lo + hi);
}

double log_cosh(double z) {
  z = std::abs(z);
  return z + std::log1p(std::exp(-2.0 * z)) - std::numbers::ln2;
}

double kernel_prefactor(const KernelSpec& spec) {
  const double n = spec.dims, s = spec.order;
  return 1.0 / (std::pow(2.0, 0.5 * (n + s - 2.0)) * std::pow(kPi, 0.5 * n) * gamma_fn(0.5 * s));
}

double kernel_at_origin(const KernelSpec& spec) {
  const double n = spec.dims, s = spec.order;
  return gamma_fn(0.5 * (s - n)) / (std::pow(2.0, n) * std::pow(kPi, 0.5 * n) * gamma_fn(0.5 * s));
}

double kernel_closed_form(const KernelSpec& spec, double r) {
  if (spec.order == 2.0) return 0.5 * std::exp(-r);
  return 0.25 * std::exp(-r) * (r + 1.0);
}

double kernel_bessel(const KernelSpec& spec, double r) {
  const double nu = 0.5 * (spec.dims - spec.order);
  return kernel_prefactor(spec) * bessel_k(nu, r) * std::pow(r, 0.5 * (spec.order - spec.dims));
}

double kernel_subordination(const KernelSpec& spec, double r) {
  const double a = 0.5 * (spec.order - spec.dims);
  const double pr2 = kPi * r * r;
  auto g = [&](double t) { return -pr2 * std::exp(-t) - std::exp(t) / (4.0 * kPi) + a * t; };
  auto dg = [&](double t) { return pr2 * std::exp(-t) - std::exp(t) / (4.0 * kPi) + a; };
  const double peak = decreasing_root(dg, -200.0, 200.0);
  const double integral = integrate_log_unimodal(g, -300.0, peak, 300.0);
  return integral / (std::pow(4.0 * kPi, 0.5 * spec.order) * gamma_fn(0.5 * spec.order));
}

}  // namespace

double gamma_fn(double x) {
  if (!(x > 0.0)) throw InvalidArgument("gamma_fn: argument must be positive");
  static constexpr std::array<double, 9> c{0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                                           771.32342877765313,   -176.61502916214059,   12.507343278686905,
                                           -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  if (x < 0.5) return kPi / (std::sin(kPi * x) * gamma_fn(1.0 - x));
  const double z = x - 1.0;
  double sum = c[0];
  for (int i = 1; i < 9; ++i) sum += c[i] / (z + i);
  const double t = z + 7.5;
  return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * sum;
}

double bessel_k(double nu, double x) {
  if (!(x > 0.0)) throw InvalidArgument("bessel_k: argument must be positive");
  nu = std::abs(nu);
  auto g = [&](double t) { return -x * std::cosh(t) + log_cosh(nu * t); };
  auto dg = [&](double t) { return -x * std::sinh(t) + nu * std::tanh(nu * t); };
  const double peak = decreasing_root(dg, 0.0, 60.0);
  return integrate_log_unimodal(g, 0.0, peak, 60.0);
}

void KernelSpec::validate() const {
  if (!(order > 0.0)) throw InvalidArgument("kernel order must be positive");
  if (dims != 1 && dims != 2) throw InvalidArgument("kernel dimension must be 1 or 2");
  if (mode == KernelEval::ClosedForm && !has_closed_form())
    throw InvalidArgument("closed form only available for N = 1, s in {2, 4}");
}

double kernel_eval(const KernelSpec& spec, double r) {
  spec.validate();
  r = std::abs(r);
  if (r == 0.0) {
    if (!spec.finite_at_origin())
      throw InvalidArgument("kernel_eval: G_s is singular at the origin for s <= N");
    if (spec.mode == KernelEval::ClosedForm) return kernel_closed_form(spec, 0.0);
    return kernel_at_origin(spec);
  }
  switch (spec.mode) {
    case KernelEval::ClosedForm: return kernel_closed_form(spec, r);
    case KernelEval::IntegralKnu: return kernel_bessel(spec, r);
    case KernelEval::SpectralInverse: return kernel_subordination(spec, r);
  }
  return 0.0;
}

double kernel_origin_cell_average(const KernelSpec& spec, double h) {
  spec.validate();
  if (spec.dims == 1) {
    // (2/h) int_0^{h/2} G(r) dr with r = (h/2) t^2
    const double a = 0.5 * h;
    auto f = [&](double t) { return t == 0.0 ? 0.0 : kernel_eval(spec, a * t * t) * 2.0 * a * t; };
    return integrate(f, 0.0, 1.0, 8, 16) / a;
  }
  // equal-area disk of radius h / sqrt(pi): (1/h^2) int_0^rho G(r) 2 pi r dr
  const double rho = h / std::sqrt(kPi);
  auto f = [&](double t) {
    if (t == 0.0) return 0.0;
    const double r = rho * t * t;
    return kernel_eval(spec, r) * 2.0 * kPi * r * 2.0 * rho * t;
  };
  return integrate(f, 0.0, 1.0, 8, 16) / (h * h);
}

double kernel_asymptote(const KernelSpec& spec, AsymptoticRegime regime, double r) {
  const double n = spec.dims, s = spec.order;
  const double gs = gamma_fn(0.5 * s);
  switch (regime) {
    case AsymptoticRegime::SmallX_sLtN:
      return gamma_fn(0.5 * (n - s)) / (std::pow(2.0, s) * std::pow(kPi, 0.5 * n) * gs) * std::pow(r, s - n);
    case AsymptoticRegime::SmallX_sEqN:
      return std::log(1.0 / r) / (std::pow(2.0, n - 1.0) * std::pow(kPi, 0.5 * n) * gamma_fn(0.5 * n));
    case AsymptoticRegime::SmallX_sGtN:
      return gamma_fn(0.5 * (s - n)) / (std::pow(2.0, n) * std::pow(kPi, 0.5 * n) * gs);
    case AsymptoticRegime::LargeX:
      return std::pow(r, 0.5 * (s - n - 1.0)) * std::exp(-r) /
             (std::pow(2.0, 0.5 * (n + s - 1.0)) * std::pow(kPi, 0.5 * (n - 1.0)) * gs);
  }
  return 0.0;
}

AsymptoticReport kernel_asymptotics_check(const KernelSpec& spec, AsymptoticRegime regime) {
  spec.validate();
  const double s = spec.order, n = spec.dims;
  const bool consistent = (regime == AsymptoticRegime::SmallX_sLtN && s < n) ||
                          (regime == AsymptoticRegime::SmallX_sEqN && s == n) ||
                          (regime == AsymptoticRegime::SmallX_sGtN && s > n) || regime == AsymptoticRegime::LargeX;
  if (!consistent) throw InvalidArgument("kernel_asymptotics_check: regime inconsistent with (N, s)");

  double from = 1e-1, to = 1e-3, threshold = 0.05;
  if (regime == AsymptoticRegime::SmallX_sEqN) to = 1e-4, threshold = 0.10;
  if (regime == AsymptoticRegime::LargeX) from = 5.0, to = 20.0;

  AsymptoticReport rep;
  rep.threshold = threshold;
  rep.extreme_x = to;
  const int samples = 20;
  for (int i = 0; i < samples; ++i) {
    const double x = from * std::pow(to / from, static_cast<double>(i) / (samples - 1));
    const double dev = std::abs(kernel_eval(spec, x) / kernel_asymptote(spec, regime, x) - 1.0);
    rep.max_deviation = std::max(rep.max_deviation, dev);
    if (i == samples - 1) rep.extreme_deviation = dev;
  }
  rep.pass = rep.extreme_deviation < threshold;
  return rep;
}

double kernel_truncation_radius(const KernelSpec& spec, double tol) {
  spec.validate();
  double r = 1.0;
  while (kernel_eval(spec, r) >= tol) {
    r += 1.0;
    if (r > 1000.0) throw NumericalFailure("kernel_truncation_radius: no decay below tolerance");
  }
  return r;
}

GridFn convolve_adjoint(const GridFn& u, double s, KernelEval mode, double truncation_radius) {
  const Domain& d = u.domain();
  if (!d.periodic()) throw DomainMismatch("convolve_adjoint: needs a periodic domain, got " + d.describe());
  if (s < 0.0) throw InvalidArgument("convolve_adjoint: order must be >= 0");
  if (s == 0.0) return u;  // G_0 is the delta distribution
  if (mode == KernelEval::ClosedForm && d.dims() == 2) mode = KernelEval::IntegralKnu;

  const KernelSpec ks{2.0 * s, d.dims(), mode};
  ks.validate();
  const double radius = truncation_radius > 0.0 ? truncation_radius : kernel_truncation_radius(ks);
  const double h = d.spacing(0);
  const int nx = d.nx(), ny = d.ny();
  const long long reach = static_cast<long long>(std::ceil(radius / h));
  const double origin = ks.finite_at_origin() ? kernel_eval(ks, 0.0) : kernel_origin_cell_average(ks, h);

  // Kernel values depend only on the squared lattice distance.
  std::unordered_map<long long, double> memo;
  auto sample = [&](long long q2) {
    if (q2 == 0) return origin;
    auto it = memo.find(q2);
    if (it != memo.end()) return it->second;
    const double v = kernel_eval(ks, h * std::sqrt(static_cast<double>(q2)));
    memo.emplace(q2, v);
    return v;
  };

  auto images = [&](int j, int n) {
    std::vector<long long> out;
    const long long base = j <= n / 2 ? j : j - n;
    for (long long m = -(reach / n + 1); m <= reach / n + 1; ++m) {
      const long long q = base + m * n;
      if (std::llabs(q) <= reach) out.push_back(q);
    }
    return out;
  };

  CVector kernel = CVector::Zero(d.size());
  const long long reach2 = reach * reach;
  for (int iy = 0; iy < ny; ++iy) {
    const std::vector<long long> qy = d.dims() == 2 ? images(iy, ny) : std::vector<long long>{0};
    for (int ix = 0; ix < nx; ++ix) {
      const std::vector<long long> qx = images(ix, nx);
      double acc = 0.0;
      for (long long a : qy)
        for (long long b : qx) {
          const long long q2 = a * a + b * b;
          if (q2 <= reach2) acc += sample(q2);
        }
      kernel[static_cast<Eigen::Index>(iy) * nx + ix] = acc;
    }
  }

  SpectralField cu = fft_forward(u);
  const SpectralField ck = fft_forward(GridFn(d, std::move(kernel)));
  cu.coeffs.array() *= ck.coeffs.array();
  GridFn out = fft_inverse(cu);
  if (u.is_real()) return GridFn::from_real(d, out.real());
  return out;
}

}  // namespace sobolev
