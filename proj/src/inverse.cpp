#include "sobolev/inverse.hpp"

#include <cmath>
#include <sstream>

#include "sobolev/multiplier.hpp"

namespace sobolev {

namespace {

EmbeddingBackend embedding_of(const InverseProblem& p) {
  if (!p.embedding) return {};
  if (p.backend) return p.backend;
  const SobolevSpec spec = *p.embedding;
  return [spec](const GridFn& u) { return adjoint_embedding(u, spec); };
}

GridFn apply_or_identity(const EmbeddingBackend& f, const GridFn& u) { return f ? f(u) : u; }

void record(const InverseProblem& p, const GridFn& u, double residual, IterationLog& log) {
  if (!std::isfinite(residual)) throw NumericalFailure("non-finite residual in iteration");
  log.residual.push_back(residual);
  if (!p.truth) return;
  const GridFn e = u - *p.truth;
  log.error_l2.push_back(norm(e));
  if (p.embedding && e.domain().periodic()) log.error_hs.push_back(sobolev_norm(e, *p.embedding));
}

double threshold(const InverseProblem& p, const StoppingRule& stop) {
  if (!stop.tau) return -1.0;
  if (!(*stop.tau > 1.0)) throw InvalidArgument("discrepancy principle needs tau > 1");
  if (!(p.noise_level > 0.0)) throw InvalidArgument("discrepancy principle needs a positive noise level");
  return *stop.tau * p.noise_level;
}

LandweberResult run_landweber(const InverseProblem& p, const EmbeddingBackend& precond, const LandweberOptions& opt) {
  p.validate();
  if (opt.max_iter < 0) throw InvalidArgument("max_iter must be >= 0");
  double step = opt.step;
  if (step == 0.0) step = 0.9 / operator_norm_sq(p.forward, precond, opt.power_iterations, opt.power_seed);
  if (!(step > 0.0) || !std::isfinite(step)) throw InvalidArgument("Landweber step must be positive");
  const double stop_at = threshold(p, opt.stop);

  GridFn u = GridFn::zeros(p.forward.domain);
  GridFn r = p.data;
  IterationLog log;
  record(p, u, norm(r, p.forward.codomain_inner), log);
  const double r0 = log.residual[0];

  for (int k = 0;; ++k) {
    if (stop_at >= 0.0 && log.residual[static_cast<size_t>(k)] <= stop_at) return {u, log, step, k};
    if (k == opt.max_iter) break;
    u += apply_or_identity(precond, p.forward.apply_adjoint(r)) * step;
    r = p.data - p.forward.apply(u);
    record(p, u, norm(r, p.forward.codomain_inner), log);
    if (log.residual.back() > 10.0 * r0 && r0 > 0.0) {
      std::ostringstream os;
      os << "Landweber diverged at step " << k + 1 << ": residual " << log.residual.back() << " vs initial " << r0;
      throw DivergenceError(os.str(), log);
    }
  }
  if (stop_at >= 0.0) {
    std::ostringstream os;
    os << "discrepancy level " << stop_at << " not reached in " << opt.max_iter << " iterations (last residual "
       << log.residual.back() << ")";
    throw NonTermination(os.str());
  }
  return {u, log, step, opt.max_iter};
}

}  // namespace

void InverseProblem::validate() const {
  if (!(data.domain() == forward.codomain)) throw DomainMismatch("data does not live on the forward codomain");
  if (!(noise_level >= 0.0) || !std::isfinite(noise_level)) throw InvalidArgument("noise level must be >= 0");
  if (embedding) embedding->validate();
  if (truth && !(truth->domain() == forward.domain)) throw DomainMismatch("truth does not live on the forward domain");
}

NoisyData add_noise(const GridFn& y, double rel, std::uint64_t seed) {
  if (!(rel >= 0.0) || !std::isfinite(rel)) throw InvalidArgument("relative noise must be >= 0");
  if (rel == 0.0) return {y, 0.0};
  const double ny = norm(y);
  if (ny == 0.0) throw InvalidArgument("cannot scale relative noise on zero data");
  GridFn eta = random_real(y.domain(), seed);
  if (!y.is_real()) eta += random_real(y.domain(), seed ^ 0x9e3779b97f4a7c15ULL) * Complex(0, 1);
  const double delta = rel * ny;
  return {y + eta * (delta / norm(eta)), delta};
}

double operator_norm_sq(const LinOp& g, const EmbeddingBackend& p, int iterations, std::uint64_t seed) {
  if (iterations < 1) throw InvalidArgument("power iteration needs at least one step");
  GridFn v = random_real(g.codomain, seed);
  double lambda = 0.0;
  for (int it = 0; it < iterations; ++it) {
    const GridFn w = g.apply(apply_or_identity(p, g.apply_adjoint(v)));
    lambda = inner(w, v, g.codomain_inner).real() / inner(v, v, g.codomain_inner).real();
    const double nw = norm(w, g.codomain_inner);
    if (!(nw > 0.0)) break;
    v = w * (1.0 / nw);
  }
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw NumericalFailure("operator norm estimate failed");
  return lambda;
}

LandweberResult landweber(const InverseProblem& p, const LandweberOptions& opt) {
  return run_landweber(p, embedding_of(p), opt);
}

LandweberResult landweber_hilbert_scale(const InverseProblem& p, double a, const LandweberOptions& opt) {
  if (!(a >= -1.0 && a <= 1.0)) throw InvalidArgument("Hilbert-scale exponent a must lie in [-1, 1]");
  if (!p.embedding) throw InvalidArgument("Hilbert-scale Landweber needs an embedding spec");
  if (!p.forward.domain.periodic())
    throw DomainMismatch("Hilbert-scale Landweber needs a periodic domain, got " + p.forward.domain.describe());
  const SobolevSpec spec = *p.embedding;
  const EmbeddingBackend e = embedding_of(p);
  const EmbeddingBackend pre = [e, spec, a](const GridFn& g) {
    return a == 0.0 ? e(g) : hilbert_scale_apply(e(g), spec, 2.0 * a);
  };
  return run_landweber(p, pre, opt);
}

TikhonovResult tikhonov(const InverseProblem& p, double alpha, int max_iter) {
  p.validate();
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InvalidArgument("alpha must be positive");
  if (p.embedding && !p.forward.domain.periodic())
    throw DomainMismatch("Tikhonov with an H^s penalty needs a periodic domain, got " + p.forward.domain.describe());
  const EmbeddingBackend e = embedding_of(p);
  const std::optional<SobolevSpec> spec = p.embedding;
  auto K = [&](const GridFn& u) {
    GridFn pen = spec ? hilbert_scale_apply(u, *spec, 2.0) : u;
    return p.forward.apply_adjoint(p.forward.apply(u)) + pen * alpha;
  };
  const InnerProductSpec l2 = InnerProductSpec::l2();
  if (max_iter <= 0) max_iter = static_cast<int>(10 * p.forward.domain.size());

  const GridFn b = p.forward.apply_adjoint(p.data);
  const double nb = norm(b);
  GridFn u = GridFn::zeros(p.forward.domain);
  if (nb == 0.0) return {u, 0, 0.0};
  // CG restarted from the true residual: the range identity u = E*(b - G*G u) / alpha
  // amplifies the final residual by 1/alpha, so a drifted recursive residual is not enough.
  const double tol = 1e-13;
  int it = 0;
  double true_rel = 1.0;
  for (int restart = 0; restart < 6; ++restart) {
    GridFn r = restart == 0 ? b : b - K(u);
    true_rel = norm(r) / nb;
    if (true_rel < tol) return {u, it, true_rel};
    GridFn z = apply_or_identity(e, r);
    GridFn d = z;
    Complex rz = inner(r, z, l2);
    while (it < max_iter) {
      ++it;
      const GridFn kd = K(d);
      const Complex step = rz / inner(kd, d, l2);
      u += d * step;
      r -= kd * step;
      const double rel = norm(r) / nb;
      if (!std::isfinite(rel)) throw NumericalFailure("Tikhonov CG produced a non-finite residual");
      if (rel < tol) break;
      z = apply_or_identity(e, r);
      const Complex rz_next = inner(r, z, l2);
      d = z + d * (rz_next / rz);
      rz = rz_next;
    }
    if (it >= max_iter) break;
  }
  true_rel = norm(b - K(u)) / nb;
  if (true_rel < 1e-10) return {u, it, true_rel};
  throw NumericalFailure("Tikhonov CG did not converge in " + std::to_string(max_iter) + " iterations (relative residual " +
                         std::to_string(true_rel) + ")");
}

double tikhonov_functional(const InverseProblem& p, double alpha, const GridFn& u) {
  const double res = norm(p.forward.apply(u) - p.data, p.forward.codomain_inner);
  const double pen = p.embedding ? sobolev_norm(u, *p.embedding) : norm(u);
  return res * res + alpha * pen * pen;
}

int discrepancy_stop(const IterationLog& log, double delta, double tau) {
  if (!(delta > 0.0)) throw InvalidArgument("discrepancy principle needs delta > 0 (clean data)");
  if (!(tau > 1.0)) throw InvalidArgument("discrepancy principle needs tau > 1");
  for (size_t k = 0; k < log.residual.size(); ++k)
    if (log.residual[k] <= tau * delta) return static_cast<int>(k);
  throw NonTermination("residual never reached tau * delta = " + std::to_string(tau * delta));
}

}  // namespace sobolev
