#include "sobolev/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "sobolev/bvp.hpp"
#include "sobolev/discrete.hpp"
#include "sobolev/io.hpp"
#include "sobolev/multiplier.hpp"
#include "sobolev/wavelet.hpp"

namespace sobolev {

namespace fs = std::filesystem;

namespace {

std::string header(const RunConfig& c, const std::string& what) { return to_string(c.experiment) + ": " + what; }

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw InvalidArgument("cannot open " + path.string() + " for writing");
  f << text;
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(6) << x;
  return os.str();
}

void run_cross_check(const RunConfig& c, const fs::path& dir, std::ostream& log) {
  CrossCheckOptions o;
  o.grid = c.grid;
  o.kmax = c.kmax;
  o.s = c.s;
  o.seed = c.seed;
  const auto rows = cross_check_1d(o);
  std::ostringstream t;
  t << "# " << header(c, "pairwise E_s* discrepancies on the unit torus") << '\n';
  t << "# grid = " << c.grid << ", kmax = " << c.kmax << ", s = " << format_double(c.s) << '\n';
  t << "pair,discrepancy,tolerance,pass,note\n";
  bool ok = true;
  for (const CrossCheckRow& r : rows) {
    t << r.pair << ',' << format_double(r.discrepancy) << ',' << format_double(r.tolerance) << ','
      << (r.pass ? "PASS" : "FAIL") << ',' << r.note << '\n';
    ok = ok && r.pass;
  }
  write_text(dir / "crosscheck.csv", t.str());
  log << t.str();
  if (!ok) throw NumericalFailure("cross check exceeded a tolerance");
}

void run_smoothing(const RunConfig& c, const fs::path& dir, std::ostream& log) {
  const SmoothingResult r = adjoint_smoothing_2d(c.grid, c.seed, c.backend);
  // each picture uses its own grey range; E_1* u is much flatter than u on the unit disk
  write_pgm(dir / "u.pgm", to_pgm(r.u));
  write_pgm(dir / "adjoint_u.pgm", to_pgm(r.z));
  const Domain& d = r.u.domain();
  std::vector<std::vector<double>> rows;
  const int iy = d.ny() / 2;
  for (int ix = 0; ix < d.nx(); ++ix) {
    const Eigen::Index k = d.active_index(ix, iy);
    if (k < 0) continue;
    rows.push_back({d.point(k)[0], r.u[k].real(), r.z[k].real()});
  }
  write_csv(dir / "profile.csv", {header(c, "u and E_1* u along the middle row (Neumann problem on a disk)")},
            {"x", "u", "adjoint_u"}, rows);
  std::ostringstream t;
  t << "# " << header(c, "piecewise-constant u and its smoothed image E_1* u") << '\n'
    << "pixels = " << c.grid << '\n'
    << "l2_u = " << format_double(r.l2_u) << '\n'
    << "l2_adjoint_u = " << format_double(r.l2_z) << '\n'
    << "total_variation_u = " << format_double(r.total_variation_u) << '\n'
    << "total_variation_adjoint_u = " << format_double(r.total_variation_z) << '\n';
  write_text(dir / "summary.txt", t.str());
  log << t.str();
}

std::string phantom_name(PhantomKind k) { return k == PhantomKind::SheppLogan ? "shepp_logan" : "smooth"; }

void run_radon(const RunConfig& c, const fs::path& dir, std::ostream& log) {
  std::vector<PhantomKind> kinds;
  if (c.phantom != PhantomChoice::SheppLogan) kinds.push_back(PhantomKind::SmoothBumps);
  if (c.phantom != PhantomChoice::SmoothBumps) kinds.push_back(PhantomKind::SheppLogan);
  std::vector<double> orders{0.0};
  if (c.s > 0) orders.push_back(c.s);

  std::ostringstream t;
  t << "# " << header(c, "Landweber without (s = 0) and with embedding, discrepancy principle") << '\n'
    << "# N = " << c.grid << ", offsets = " << c.offsets << ", angles = " << c.angles
    << ", noise = " << format_double(c.noise) << ", tau = " << format_double(c.tau) << ", seed = " << c.seed << '\n'
    << "phantom,s,stop_index,residual,tau_delta,step,rel_error_l2,rel_error_h0.5\n";
  for (PhantomKind kind : kinds) {
    const std::string name = phantom_name(kind);
    for (double s : orders) {
      RadonReconOptions o;
      o.geometry = {c.grid, c.offsets, c.angles, std::sqrt(2.0)};
      o.phantom = kind;
      o.s = s;
      o.noise = c.noise;
      o.tau = c.tau;
      o.seed = c.seed;
      o.max_iter = c.max_iter;
      o.step = c.step;
      o.backend = c.backend;
      const RadonReconResult r = radon_reconstruction(o);
      const std::string tag = name + "_s" + format_double(s);
      if (s == 0.0) {
        const GridFn& u = r.truth;
        write_pgm(dir / (name + "_truth.pgm"), to_pgm(u));
        write_pgm(dir / (name + "_sinogram.pgm"), to_pgm(RadonMatrix(o.geometry).forward(u)));
      }
      const double lo = r.truth.values().real().minCoeff(), hi = r.truth.values().real().maxCoeff();
      write_pgm(dir / (tag + ".pgm"), to_pgm(r.reconstruction, lo, hi));
      std::vector<std::vector<double>> rows;
      for (size_t k = 0; k < r.log.residual.size(); ++k)
        rows.push_back({static_cast<double>(k), r.log.residual[k], r.log.error_l2[k] / norm(r.truth)});
      write_csv(dir / (tag + "_log.csv"), {header(c, "residual and relative L2 error per iteration, " + tag)},
                {"k", "residual", "rel_error_l2"}, rows);
      t << name << ',' << format_double(s) << ',' << r.stop_index << ',' << format_double(r.log.residual.back())
        << ',' << format_double(c.tau * r.delta) << ',' << format_double(r.step) << ','
        << format_double(r.rel_error_l2) << ',' << format_double(r.rel_error_hs) << '\n';
    }
  }
  write_text(dir / "summary.csv", t.str());
  log << t.str();
}

void run_norm_equivalence(const RunConfig& c, const fs::path& dir, std::ostream& log) {
  std::vector<double> orders{1.0, 1.5, 2.0, 3.0};
  if (std::find(orders.begin(), orders.end(), c.s) == orders.end() && c.s >= 1.0) orders.push_back(c.s);
  std::vector<std::vector<double>> rows;
  bool ok = true;
  for (double s : orders) {
    const NormEquivalenceReport r = norm_equivalence_check(s, c.kmax);
    rows.push_back({s, static_cast<double>(r.kmax), r.holds ? 1.0 : 0.0, r.lower_margin, r.upper_margin});
    ok = ok && r.holds;
  }
  const std::string h = header(c, "C1 (1 + (2 pi k)^2s) <= (1 + 4 pi^2 k^2)^s <= C2 (1 + (2 pi k)^2s), C1 = 1/2, C2 = 2^(s-1)");
  write_csv(dir / "norm_equivalence.csv", {h}, {"s", "kmax", "holds", "lower_margin", "upper_margin"}, rows);
  log << "# " << h << '\n' << "s,kmax,holds,lower_margin,upper_margin\n";
  for (const auto& r : rows)
    log << format_double(r[0]) << ',' << r[1] << ',' << r[2] << ',' << format_double(r[3]) << ',' << format_double(r[4])
        << '\n';
  if (!ok) throw NumericalFailure("norm equivalence violated");
}

void run_kernel_asymptotics(const RunConfig& c, const fs::path& dir, std::ostream& log) {
  std::vector<std::vector<double>> rows;
  std::ostringstream t;
  const std::string h = header(c, "kernel G_s against its small- and large-x asymptotes, N = 1");
  t << "# " << h << "\ns,regime,max_deviation,extreme_deviation,extreme_x,threshold,pass\n";
  bool ok = true;
  for (double s : {0.5, 1.0, 1.5, 2.0, 3.0}) {
    const KernelSpec spec{s, 1, KernelEval::IntegralKnu};
    const AsymptoticRegime small = s < 1 ? AsymptoticRegime::SmallX_sLtN
                                   : s == 1 ? AsymptoticRegime::SmallX_sEqN
                                            : AsymptoticRegime::SmallX_sGtN;
    int regime = 0;
    for (AsymptoticRegime g : {small, AsymptoticRegime::LargeX}) {
      const AsymptoticReport r = kernel_asymptotics_check(spec, g);
      const std::string rname = g == AsymptoticRegime::LargeX ? "large_x" : "small_x";
      rows.push_back({s, static_cast<double>(regime++), r.max_deviation, r.extreme_deviation, r.extreme_x, r.threshold,
                      r.pass ? 1.0 : 0.0});
      t << format_double(s) << ',' << rname << ',' << format_double(r.max_deviation) << ','
        << format_double(r.extreme_deviation) << ',' << format_double(r.extreme_x) << ',' << format_double(r.threshold)
        << ',' << (r.pass ? "PASS" : "FAIL") << '\n';
      ok = ok && r.pass;
    }
  }
  write_text(dir / "kernel_asymptotics.csv", t.str());
  log << t.str();
  if (!ok) throw NumericalFailure("kernel asymptotics check failed");
}

}  // namespace

void run_experiment(const RunConfig& c, std::ostream& log) {
  const fs::path dir(c.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InvalidArgument("cannot create output directory " + c.out + ": " + ec.message());
  write_text(dir / "config.txt", print_config(c));
  switch (c.experiment) {
    case Experiment::CrossCheck1D: run_cross_check(c, dir, log); break;
    case Experiment::AdjointSmoothing2D: run_smoothing(c, dir, log); break;
    case Experiment::RadonRecon: run_radon(c, dir, log); break;
    case Experiment::NormEquivalence: run_norm_equivalence(c, dir, log); break;
    case Experiment::KernelAsymptotics: run_kernel_asymptotics(c, dir, log); break;
  }
}

std::vector<SelftestRow> selftest_rows() {
  std::vector<SelftestRow> rows;
  auto add = [&](std::string name, double v, double tol) { rows.push_back({std::move(name), v, tol, v < tol}); };
  for (const CrossCheckRow& r : cross_check_1d({})) {
    if (r.tolerance > 0)
      add(r.pair, r.discrepancy, r.tolerance);
    else
      rows.push_back({r.pair, r.discrepancy, 0.0, r.pass});
  }

  const SobolevSpec s1{1.0, NormVariant::TorusS};
  const Domain t = Domain::torus(1, 256);
  add("adjoint multiplier", check_adjoint(adjoint_embedding_op(t, s1), 20, 1), 1e-10);
  add("adjoint wavelet db4", check_adjoint(adjoint_embedding_wavelet_op(t, 1.0, WaveletBasis::daubechies4(), 5), 20, 2),
      1e-10);
  const auto modes = fourier_mode_basis(Domain::torus(1, 64), 8);
  add("adjoint discrete", check_adjoint(projected_adjoint_op(assemble(modes, modes, s1)), 20, 3), 1e-10);
  add("adjoint bvp interval", check_adjoint(bvp_adjoint_op(Domain::interval(0, 1, 65), {}), 20, 4), 1e-9);
  add("adjoint bvp rectangle dirichlet",
      check_adjoint(bvp_adjoint_op(Domain::rectangle(1, 1, 17, 17), {1, BoundaryCondition::Dirichlet}), 20, 5), 1e-9);

  for (double s : {2.0, 4.0}) {
    double worst = 0;
    for (int i = 0; i < 50; ++i) {
      const double x = 0.01 * std::pow(1000.0, i / 49.0);
      const double a = kernel_eval({s, 1, KernelEval::ClosedForm}, x), b = kernel_eval({s, 1, KernelEval::IntegralKnu}, x);
      worst = std::max(worst, std::abs(a - b) / std::abs(a));
    }
    add("kernel closed form s=" + format_double(s), worst, 1e-7);
  }
  return rows;
}

bool selftest(std::ostream& out) {
  const auto rows = selftest_rows();
  bool ok = true;
  out << std::left << std::setw(34) << "check" << std::setw(14) << "value" << std::setw(12) << "tolerance" << "result\n";
  for (const SelftestRow& r : rows) {
    out << std::left << std::setw(34) << r.name << std::setw(14) << fmt(r.value) << std::setw(12)
        << (r.tolerance > 0 ? fmt(r.tolerance) : "see note") << (r.pass ? "PASS" : "FAIL") << '\n';
    ok = ok && r.pass;
  }
  out << (ok ? "all checks passed" : "some checks FAILED") << '\n';
  return ok;
}

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Adjoint Sobolev embedding experiments", "sobolev-adjoint"};
  app.require_subcommand(1);
  std::string config_path, backend, out_dir, experiment;
  std::uint64_t seed = 0;
  CLI::App* run = app.add_subcommand("run", "run one experiment from a key=value config file");
  run->add_option("--config", config_path, "config file");
  run->add_option("--experiment", experiment, "experiment when the config does not name one");
  run->add_option("--backend", backend, "multiplier, kernel, wavelet, bvp, eigs or discrete");
  CLI::Option* seed_opt = run->add_option("--seed", seed, "random seed");
  run->add_option("--out", out_dir, "output directory");
  CLI::App* self = app.add_subcommand("selftest", "cross-representation checks");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitConfig;
  }

  try {
    if (self->parsed()) return selftest(out) ? kExitOk : kExitNumerical;
    std::string text;
    if (!config_path.empty()) {
      std::ifstream f(config_path);
      if (!f) throw ConfigError(0, "cannot read config file " + config_path);
      std::ostringstream ss;
      ss << f.rdbuf();
      text = ss.str();
    } else if (experiment.empty()) {
      throw ConfigError(0, "run needs --config or --experiment");
    }
    std::optional<Experiment> fallback;
    if (!experiment.empty()) fallback = experiment_from_string(experiment);
    RunConfig c = parse_config(text, fallback);
    if (!backend.empty()) c.backend = backend_from_string(backend);
    if (seed_opt->count() > 0) c.seed = seed;
    if (!out_dir.empty()) c.out = out_dir;
    run_experiment(c, out);
    return kExitOk;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const NonTermination& e) {
    err << "stopping rule not met: " << e.what() << '\n';
    return kExitNonTermination;
  }
}

}  // namespace sobolev
