// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "sobolev/bvp.hpp"
#include "sobolev/discrete.hpp"
#include "sobolev/experiments.hpp"
#include "sobolev/kernel.hpp"
#include "sobolev/multiplier.hpp"
#include "sobolev/radon.hpp"
#include "sobolev/spectral.hpp"
#include "sobolev/wavelet.hpp"
#include "test_util.hpp"

using namespace sobolev;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

template <class... T>
std::string cat(const T&... parts) {
  std::ostringstream os;
  os.precision(4);
  (os << ... << parts);
  return os.str();
}

double rel(const GridFn& a, const GridFn& ref) { return norm(a - ref) / norm(ref); }

// ---------------------------------------------------------------------------

Outcome c1_cross_representation() {
  bool ok = true;
  std::string d;
  for (const CrossCheckRow& r : cross_check_1d({})) {
    if (r.pair == "wavelet symmetry") continue;  // not part of this criterion
    ok = ok && r.pass;
    d += cat(r.pair, "=", r.discrepancy, r.pass ? "" : "(FAIL)", "; ");
  }
  return {ok, d};
}

Outcome c2_closed_form_kernels() {
  bool ok = true;
  std::string d;
  for (double s : {2.0, 4.0}) {
    double worst = 0;
    for (int i = 0; i < 50; ++i) {
      const double x = 0.01 * std::pow(1000.0, i / 49.0);  // 0.01 .. 10
      const double a = kernel_eval({s, 1, KernelEval::ClosedForm}, x);
      const double b = kernel_eval({s, 1, KernelEval::IntegralKnu}, x);
      worst = std::max(worst, std::abs(a - b) / std::abs(a));
    }
    ok = ok && worst < 1e-7;
    d += cat("closed/integral s=", s, ": ", worst, "; ");
  }
  // G_2 = e^{-|x|}/2 and G_4 = e^{-|x|}(|x|+1)/4 in 1D
  const double x = 0.7;
  const double g2 = kernel_eval({2.0, 1, KernelEval::IntegralKnu}, x) - 0.5 * std::exp(-x);
  const double g4 = kernel_eval({4.0, 1, KernelEval::IntegralKnu}, x) - 0.25 * std::exp(-x) * (x + 1);
  ok = ok && std::abs(g2) < 1e-7 && std::abs(g4) < 1e-7;
  int regimes = 0, passed = 0;
  for (int n : {1, 2})
    for (double s : {0.5, 1.0, 1.5, 2.0, 3.0}) {
      const AsymptoticRegime small = s < n ? AsymptoticRegime::SmallX_sLtN
                                     : s == n ? AsymptoticRegime::SmallX_sEqN
                                              : AsymptoticRegime::SmallX_sGtN;
      for (AsymptoticRegime g : {small, AsymptoticRegime::LargeX}) {
        const AsymptoticReport r = kernel_asymptotics_check({s, n, KernelEval::IntegralKnu}, g);
        ++regimes;
        passed += r.pass;
        if (!r.pass) d += cat("asymptote N=", n, " s=", s, " dev=", r.extreme_deviation, " FAIL; ");
      }
    }
  ok = ok && passed == regimes;
  d += cat("asymptotic regimes ", passed, "/", regimes);
  return {ok, d};
}

Outcome c3_norm_equivalence() {
  bool ok = true;
  std::string d;
  for (double s : {1.0, 1.5, 2.0, 3.0}) {
    const NormEquivalenceReport r = norm_equivalence_check(s, 64);
    ok = ok && r.holds;
    d += cat("s=", s, " margins ", r.lower_margin, "/", r.upper_margin, "; ");
  }
  return {ok, d};
}

Outcome c4_adjointness() {
  struct Case {
    std::string name;
    LinOp op;
    double tol;
  };
  const SobolevSpec s1{1.0, NormVariant::TorusS};
  const Domain t = Domain::torus(1, 256);
  const auto modes = fourier_mode_basis(Domain::torus(1, 64), 8);
  const auto hats = hat_basis(Domain::interval(0, 1, 65), 16);
  const InnerProductSpec h1 = InnerProductSpec::custom_product(
      "discrete H1", [](const GridFn& a, const GridFn& b) { return bvp_inner(a, b, BvpSpec{}); });
  std::vector<Case> cases = {
      {"multiplier T1", adjoint_embedding_op(t, s1), 1e-10},
      {"multiplier T2", adjoint_embedding_op(Domain::torus(2, 32), {1.5, NormVariant::TorusS}), 1e-10},
      {"multiplier R", adjoint_embedding_op(Domain::real_line(4.0, 128), {0.5, NormVariant::BesselV1}), 1e-10},
      {"wavelet haar", adjoint_embedding_wavelet_op(t, 0.5, WaveletBasis::haar(), 6), 1e-10},
      {"wavelet db4", adjoint_embedding_wavelet_op(t, 1.0, WaveletBasis::daubechies4(), 6), 1e-10},
      {"discrete fourier", projected_adjoint_op(assemble(modes, modes, s1)), 1e-10},
      {"discrete hats", projected_adjoint_op(assemble(hats, hats, h1)), 1e-10},
      {"bvp interval", bvp_adjoint_op(Domain::interval(0, 1, 129), {}), 1e-9},
      {"bvp interval m=2", bvp_adjoint_op(Domain::interval(0, 1, 65), {2, BoundaryCondition::Dirichlet, NormChoice::SeminormOnly}), 1e-9},
      {"bvp rectangle", bvp_adjoint_op(Domain::rectangle(1, 2, 17, 33), {1, BoundaryCondition::Dirichlet}), 1e-9},
      {"bvp disk", bvp_adjoint_op(Domain::disk_mask(1.0, 32), {}), 1e-9},
      {"bvp torus", bvp_adjoint_op(Domain::torus(2, 16), {}), 1e-9},
  };
  bool ok = true;
  std::string d;
  std::uint64_t seed = 1;
  for (const Case& c : cases) {
    const double defect = check_adjoint(c.op, 20, seed++);
    ok = ok && defect < c.tol;
    d += cat(c.name, "=", defect, defect < c.tol ? "" : "(FAIL)", "; ");
  }
  return {ok, d};
}

Outcome c5_eigen_vs_bvp() {
  const Domain grid = Domain::rectangle(1, 1, 129, 129);  // 128 x 128 cells
  const GridFn u = GridFn::constant(grid, 1.0);
  const GridFn oracle = solve_bvp(u, {1, BoundaryCondition::Dirichlet, NormChoice::SeminormOnly});
  const EigenSystem sys = rectangle_dirichlet_eigs(1, 1, 10, 10, grid);
  const double err = rel(adjoint_embedding_eigs(u, sys.truncated(100)), oracle);
  return {err < 2e-2, cat("K=100 relative L2 discrepancy ", err, " (tol 2e-2)")};
}

Outcome c6_hilbert_scale() {
  const Domain d = Domain::torus(1, 128);
  const GridFn y = testing::BandLimited::random(63, 6).sample(d);  // 64 modes
  auto sym = [](double xi) { return 1.0 / (1.0 + xi); };
  auto f = [&](const GridFn& u) { return apply_radial_multiplier(u, sym); };
  const LinOp g{"diag", d, d, f, f, InnerProductSpec::l2(), InnerProductSpec::l2()};
  InverseProblem p{g, y, 0.0, SobolevSpec{1.0, NormVariant::TorusS}, {}, std::nullopt};
  const InverseProblem plain{g, y, 0.0, std::nullopt, {}, std::nullopt};
  LandweberOptions opt;
  opt.step = 0.9;
  double w0 = 0, w1 = 0;
  for (int k = 1; k <= 50; ++k) {
    opt.max_iter = k;
    const GridFn a0 = landweber_hilbert_scale(p, 0.0, opt).u, emb = landweber(p, opt).u;
    const GridFn a1 = landweber_hilbert_scale(p, 1.0, opt).u, l2 = landweber(plain, opt).u;
    w0 = std::max(w0, norm(a0 - emb) / norm(emb));
    w1 = std::max(w1, norm(a1 - l2) / norm(l2));
  }
  return {w0 < 1e-10 && w1 < 1e-10, cat("a=0 vs embedded ", w0, "; a=1 vs plain ", w1, " (50 iterates, tol 1e-10)")};
}

Outcome c7_radon() {
  bool ok = true;
  std::string d;
  double hs[2][2] = {};
  for (int ph = 0; ph < 2; ++ph)
    for (int si = 0; si < 2; ++si) {
      RadonReconOptions o;
      o.geometry = {64, 100, 60, std::sqrt(2.0)};
      o.phantom = ph == 0 ? PhantomKind::SmoothBumps : PhantomKind::SheppLogan;
      o.s = si == 0 ? 0.0 : 0.5;
      o.noise = 0.10;
      o.tau = 1.01;
      o.seed = 1;
      const RadonReconResult r = radon_reconstruction(o);
      const bool stop_ok = r.log.residual.back() <= o.tau * r.delta;
      ok = ok && stop_ok;
      hs[ph][si] = r.rel_error_hs;
      d += cat(ph == 0 ? "smooth" : "shepp", " s=", o.s, ": stop ", r.stop_index, stop_ok ? "" : " (residual above tau delta)",
               ", H^0.5 err ", r.rel_error_hs, "; ");
    }
  const double reduction = 1.0 - hs[0][1] / hs[0][0];
  const double spread = std::abs(hs[1][1] - hs[1][0]) / std::min(hs[1][0], hs[1][1]);
  ok = ok && reduction >= 0.10 && spread < 0.15;
  d += cat("smooth reduction ", 100 * reduction, "% (target >= 10%, reference ~25%); shepp spread ", 100 * spread,
           "% (< 15%)");
  return {ok, d};
}

// alpha by a 10-point log sweep: the largest alpha whose residual is at most tau delta
double sweep_alpha(const InverseProblem& p, double tau, double lo, double hi) {
  double chosen = lo;
  for (int i = 0; i < 10; ++i) {
    const double a = lo * std::pow(hi / lo, i / 9.0);
    const TikhonovResult t = tikhonov(p, a);
    if (norm(p.forward.apply(t.u) - p.data) <= tau * p.noise_level) chosen = a;
  }
  return chosen;
}

double range_defect(const InverseProblem& p, double alpha) {
  const GridFn u = tikhonov(p, alpha).u;
  const LinOp& g = p.forward;
  const GridFn v = adjoint_embedding(g.apply_adjoint(p.data) - g.apply_adjoint(g.apply(u)), *p.embedding) * (1 / alpha);
  return norm(v - u) / norm(u);
}

Outcome c8_tikhonov_range() {
  const double tau = 1.01;
  std::string d;

  const Domain t = Domain::torus(1, 256);
  auto sym = [](double xi) { return 1.0 / (1.0 + xi); };
  auto f = [&](const GridFn& u) { return apply_radial_multiplier(u, sym); };
  const LinOp diag{"diag", t, t, f, f, InnerProductSpec::l2(), InnerProductSpec::l2()};
  const GridFn truth = testing::BandLimited::random(4, 3).sample(t);
  const NoisyData nd = add_noise(f(truth), 0.05, 2);
  const InverseProblem pd{diag, nd.y_delta, nd.delta, SobolevSpec{1.0, NormVariant::TorusS}, {}, std::nullopt};
  const double ad = sweep_alpha(pd, tau, 1e-7, 1e-2);
  const double ed = range_defect(pd, ad);

  const RadonGeometry geo{64, 100, 60, std::sqrt(2.0)};
  const RadonMatrix r(geo);
  const NoisyData nr = add_noise(r.forward(smooth_phantom(64).image), 0.10, 1);
  const InverseProblem pr{r.op(), nr.y_delta, nr.delta, SobolevSpec{0.5, NormVariant::BesselV1}, {}, std::nullopt};
  const double ar = sweep_alpha(pr, tau, 1e-5, 1.0);
  const double er = range_defect(pr, ar);

  d = cat("diagonal alpha=", ad, " defect ", ed, "; radon alpha=", ar, " defect ", er, " (tol 1e-8)");
  return {ed < 1e-8 && er < 1e-8, d};
}

Outcome c9_wavelet_eigen() {
  const Domain d = Domain::torus(1, 256);
  double worst = 0;
  int atoms = 0;
  for (const WaveletBasis& b : {WaveletBasis::haar(), WaveletBasis::daubechies4()})
    for (double s : {0.5, 1.0})
      for (int levels = 1; levels <= 6; ++levels) {
        const WaveletDecomposition shape = empty_decomposition(d, levels);
        auto check = [&](int j, Eigen::Index k) {
          WaveletDecomposition dec = shape;
          double lambda = 1.0;
          if (j < 0) {
            dec.approx[k] = 1.0;
          } else {
            dec.details[static_cast<size_t>(j)][k] = 1.0;
            lambda = std::pow(2.0, -2.0 * j * s);
          }
          const GridFn psi = ifwt(dec, b);
          const GridFn e = adjoint_embedding_wavelet(psi, s, b, levels);
          worst = std::max(worst, (e.values() - lambda * psi.values()).cwiseAbs().maxCoeff());
          ++atoms;
        };
        for (Eigen::Index k = 0; k < shape.approx.size(); ++k) check(-1, k);
        for (int j = 0; j < levels; ++j)
          for (Eigen::Index k = 0; k < shape.details[static_cast<size_t>(j)].size(); ++k) check(j, k);
      }
  return {worst < 1e-12, cat(atoms, " atoms, max |E*psi - lambda psi| = ", worst, " (tol 1e-12)")};
}

Outcome c10_special_functions() {
  const double z = bessel_j_zero(0, 1);
  const double j = std::abs(bessel_j(0, z));
  const double k = std::abs(bessel_k(0.5, 1.0) - std::sqrt(pi / 2) * std::exp(-1.0));
  const double g = std::abs(gamma_fn(5.0) - 24.0);
  const bool ok = z >= 2.40 && z <= 2.41 && j < 1e-9 && k < 1e-8 && g < 1e-12;
  return {ok, cat("j01=", z, " |J0(j01)|=", j, " |K_1/2(1)-ref|=", k, " |Gamma(5)-24|=", g)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all = {
      {1, "cross-representation agreement", 10, c1_cross_representation},
      {2, "closed-form kernels and asymptotics", 5, c2_closed_form_kernels},
      {3, "norm-equivalence sandwich", 1, c3_norm_equivalence},
      {4, "adjointness of every backend", 0, c4_adjointness},
      {5, "eigenexpansion vs BVP", 30, c5_eigen_vs_bvp},
      {6, "Hilbert-scale reductions", 0, c6_hilbert_scale},
      {7, "Radon reconstruction, desk scale", 120, c7_radon},
      {8, "Tikhonov range property", 0, c8_tikhonov_range},
      {9, "wavelet eigen-structure", 0, c9_wavelet_eigen},
      {10, "special functions", 0, c10_special_functions},
  };
  int failed = 0;
  for (const Criterion& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0 && secs > c.budget_s) {
      o.pass = false;
      o.detail += cat(" [over the ", c.budget_s, " s budget]");
    }
    failed += !o.pass;
    std::printf("%s  criterion %2d  %-38s %7.2fs  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
  return failed == 0 ? 0 : 1;
}
