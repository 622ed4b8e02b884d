#include "sobolev/experiments.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "sobolev/bvp.hpp"
#include "sobolev/discrete.hpp"
#include "sobolev/multiplier.hpp"
#include "sobolev/spectral.hpp"
#include "sobolev/wavelet.hpp"

namespace sobolev {

namespace {

using std::numbers::pi;

// Real trigonometric polynomial with modes 0..kmax on the unit torus.
GridFn band_limited(const Domain& d, int kmax, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> a, b;
  for (int k = 0; k <= kmax; ++k) {
    a.push_back(dist(gen));
    b.push_back(k == 0 ? 0.0 : dist(gen));
  }
  return GridFn::sample(d, [&](double x, double) {
    double v = 0;
    for (int k = 0; k <= kmax; ++k) v += a[k] * std::cos(2 * pi * k * x) + b[k] * std::sin(2 * pi * k * x);
    return Complex(v);
  });
}

double rel(const GridFn& a, const GridFn& ref) { return norm(a - ref) / norm(ref); }

int full_depth(Eigen::Index n) {
  int levels = 0;
  while (n % 2 == 0 && n / 2 >= 4) {
    n /= 2;
    ++levels;
  }
  return levels;
}

double total_variation(const GridFn& u) {
  const Domain& d = u.domain();
  double tv = 0;
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    const auto [ix, iy] = d.grid_index(i);
    const Eigen::Index right = ix + 1 < d.nx() ? d.active_index(ix + 1, iy) : -1;
    const Eigen::Index up = iy + 1 < d.ny() ? d.active_index(ix, iy + 1) : -1;
    const double dx = right >= 0 ? std::abs(u[right] - u[i]) : 0.0;
    const double dy = up >= 0 ? std::abs(u[up] - u[i]) : 0.0;
    tv += std::hypot(dx, dy) * d.spacing(0);
  }
  return tv;
}

}  // namespace

std::string to_string(Backend b) {
  switch (b) {
    case Backend::Multiplier: return "multiplier";
    case Backend::Kernel: return "kernel";
    case Backend::Wavelet: return "wavelet";
    case Backend::Bvp: return "bvp";
    case Backend::Eigs: return "eigs";
    case Backend::Discrete: return "discrete";
  }
  return "?";
}

Backend backend_from_string(const std::string& name) {
  for (Backend b : {Backend::Multiplier, Backend::Kernel, Backend::Wavelet, Backend::Bvp, Backend::Eigs, Backend::Discrete})
    if (to_string(b) == name) return b;
  throw InvalidArgument("unknown backend '" + name + "'");
}

EmbeddingBackend make_embedding_backend(Backend b, const SobolevSpec& spec, const Domain& d) {
  spec.validate();
  const double s = spec.order;
  switch (b) {
    case Backend::Multiplier:
      if (!d.periodic()) throw DomainMismatch("multiplier backend needs a periodic domain, got " + d.describe());
      return [spec](const GridFn& u) { return adjoint_embedding(u, spec); };
    case Backend::Kernel:
      if (!d.periodic()) throw DomainMismatch("kernel backend needs a periodic domain, got " + d.describe());
      return [s](const GridFn& u) { return convolve_adjoint(u, s); };
    case Backend::Wavelet: {
      if (d.kind() != DomainKind::Torus || d.dims() != 1) throw DomainMismatch("wavelet backend needs a 1D torus");
      const int levels = full_depth(d.size());
      if (levels < 1) throw InvalidArgument("grid too short for a wavelet backend");
      return [s, levels](const GridFn& u) { return adjoint_embedding_wavelet(u, s, WaveletBasis::daubechies4(), levels); };
    }
    case Backend::Bvp:
      if (s != 1.0) throw InvalidArgument("bvp backend realizes s = 1 only");
      if (d.kind() == DomainKind::Sinogram) throw DomainMismatch("bvp backend cannot act on a sinogram");
      return [](const GridFn& u) { return solve_neumann_helmholtz(u); };
    case Backend::Eigs:
    case Backend::Discrete:
      throw InvalidArgument(to_string(b) + " is not available inside iterations");
  }
  throw InvalidArgument("unknown backend");
}

RadonReconResult radon_reconstruction(const RadonReconOptions& opt, double s_eval) {
  if (opt.s < 0) throw InvalidArgument("s must be >= 0");
  if (!(opt.noise > 0)) throw InvalidArgument("noise level must be positive for the discrepancy principle");
  const RadonMatrix r(opt.geometry);
  const GridFn truth =
      opt.phantom == PhantomKind::SheppLogan ? shepp_logan(opt.geometry.pixels).image : smooth_phantom(opt.geometry.pixels).image;
  const NoisyData nd = add_noise(r.forward(truth), opt.noise, opt.seed);

  InverseProblem p{r.op(), nd.y_delta, nd.delta, std::nullopt, {}, std::nullopt};
  p.truth = truth;
  if (opt.s > 0) {
    const SobolevSpec spec{opt.s, NormVariant::BesselV1};
    p.embedding = spec;
    p.backend = make_embedding_backend(opt.backend, spec, opt.geometry.image_domain());
  }
  LandweberOptions lo;
  lo.step = opt.step;
  lo.max_iter = opt.max_iter;
  lo.stop = StoppingRule::discrepancy(opt.tau);
  const LandweberResult lw = landweber(p, lo);

  const SobolevSpec eval{s_eval, NormVariant::BesselV1};
  RadonReconResult out{opt, truth, lw.u, lw.log, nd.delta, lw.step, lw.stop_index, 0, 0};
  out.rel_error_l2 = rel(lw.u, truth);
  out.rel_error_hs = sobolev_norm(lw.u - truth, eval) / sobolev_norm(truth, eval);
  return out;
}

std::vector<CrossCheckRow> cross_check_1d(const CrossCheckOptions& opt) {
  if (opt.grid < 8 || opt.grid % 2 != 0) throw InvalidArgument("cross check grid must be even and >= 8");
  if (2 * opt.kmax >= opt.grid / 2) throw InvalidArgument("kmax too large for the grid");
  const SobolevSpec spec{opt.s, NormVariant::TorusS};
  const Domain d = Domain::torus(1, opt.grid);
  const GridFn u = band_limited(d, opt.kmax, opt.seed);
  const GridFn ref = adjoint_embedding(u, spec);
  std::vector<CrossCheckRow> rows;
  auto add = [&](std::string pair, double disc, double tol, std::string note) {
    rows.push_back({std::move(pair), disc, tol, disc < tol, std::move(note)});
  };

  add("multiplier/kernel", rel(convolve_adjoint(u, opt.s, KernelEval::IntegralKnu, opt.kernel_half_width), ref), 1e-3,
      "truncation W = " + std::to_string(opt.kernel_half_width));

  if (opt.s == 1.0) {
    const Domain coarse = Domain::torus(1, opt.grid / 2);
    const GridFn uc = band_limited(coarse, opt.kmax, opt.seed);
    const double e_fine = rel(solve_neumann_helmholtz(u), ref);
    const double e_coarse = rel(solve_neumann_helmholtz(uc), adjoint_embedding(uc, spec));
    const double ratio = e_coarse / e_fine;
    // C h^2 with C = (2 pi kmax)^2 / 12 + 1, the leading symbol error of the 3-point Laplacian
    const double h = 1.0 / opt.grid;
    const double c = std::pow(2 * pi * opt.kmax, 2) / 12.0 + 1.0;
    add("multiplier/bvp", e_fine, c * h * h, "");
    rows.push_back({"bvp Richardson ratio", ratio, 0.0, ratio >= 3.5 && ratio <= 4.5, "expected in [3.5, 4.5]"});
  }

  const SingularSystem sys = svd_from_multiplier(spec, d, static_cast<int>(d.size()));
  add("multiplier/svd", rel(svd_adjoint(u, sys), ref), 1e-10, "all " + std::to_string(d.size()) + " singular triples");

  const auto modes = fourier_mode_basis(d, opt.kmax);
  const DiscreteSetting ds = assemble(modes, modes, spec);
  add("multiplier/discrete", rel(projected_adjoint(ds, u).function, ref), 1e-12,
      std::to_string(modes.size()) + " Fourier modes");

  if ((opt.grid & (opt.grid - 1)) == 0) {
    const EmbeddingBackend wav = make_embedding_backend(Backend::Wavelet, spec, d);
    const GridFn v = band_limited(d, opt.kmax, opt.seed + 1);
    const Complex lhs = inner(wav(u), v), rhs = inner(u, wav(v));
    add("wavelet symmetry", std::abs(lhs - rhs) / std::abs(rhs), 1e-10,
        "wavelet H^s is only an equivalent norm; L2 symmetry compared");
  }
  return rows;
}

SmoothingResult adjoint_smoothing_2d(int pixels, std::uint64_t seed, Backend backend) {
  if (backend != Backend::Bvp) throw InvalidArgument("smoothing picture on a disk uses the bvp backend");
  if (pixels < 16) throw InvalidArgument("smoothing picture needs at least 16 pixels");
  const Domain d = Domain::disk_mask(1.0, pixels);
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> pos(-0.6, 0.6), val(0.3, 1.0);
  struct Square { double x0, y0, half, value; };
  std::vector<Square> squares;
  for (int k = 0; k < 4; ++k) squares.push_back({pos(gen), pos(gen), 0.15 + 0.1 * val(gen), val(gen)});
  const GridFn u = GridFn::sample(d, [&](double x, double y) {
    double v = 0;
    for (const Square& q : squares)
      if (std::abs(x - q.x0) <= q.half && std::abs(y - q.y0) <= q.half) v = std::max(v, q.value);
    return Complex(v);
  });
  const GridFn z = solve_neumann_helmholtz(u);
  return {u, z, norm(u), norm(z), total_variation(u), total_variation(z)};
}

}  // namespace sobolev
