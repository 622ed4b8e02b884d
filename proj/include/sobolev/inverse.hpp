#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "sobolev/core.hpp"

namespace sobolev {

/// Applies E_s* (or any L2-self-adjoint positive preconditioner) to an iterate.
using EmbeddingBackend = std::function<GridFn(const GridFn&)>;

/// Linear problem G u = y^delta. With an embedding spec the unknown lives in
/// H^s and the forward map is A = G o E_s.
struct InverseProblem {
  LinOp forward;
  GridFn data;
  double noise_level = 0.0;
  std::optional<SobolevSpec> embedding;
  /// E_s* used inside the iteration; empty means the Fourier multiplier.
  EmbeddingBackend backend;
  /// Optional ground truth for error tracking.
  std::optional<GridFn> truth;

  void validate() const;
};

struct IterationLog {
  std::vector<double> residual;  // |y - A u_k|_L2, k = 0..iterations
  std::vector<double> error_l2;  // |u_k - truth|_L2 when truth is known
  std::vector<double> error_hs;  // |u_k - truth|_{H^s} when truth and spec are known
  int iterations() const { return static_cast<int>(residual.size()) - 1; }
};

/// Landweber diverged; carries the log up to the failure.
class DivergenceError : public NumericalFailure {
 public:
  DivergenceError(const std::string& what, IterationLog log) : NumericalFailure(what), log_(std::move(log)) {}
  const IterationLog& log() const { return log_; }

 private:
  IterationLog log_;
};

struct NoisyData {
  GridFn y_delta;
  double delta;
};

/// Uniform(-1,1) noise rescaled so |y_delta - y|_L2 = rel |y|_L2 exactly.
NoisyData add_noise(const GridFn& y, double rel, std::uint64_t seed);

struct StoppingRule {
  /// Discrepancy principle with this tau when set; otherwise run max_iter steps.
  std::optional<double> tau;

  static StoppingRule fixed() { return {}; }
  static StoppingRule discrepancy(double tau) { return {tau}; }
};

struct LandweberOptions {
  double step = 0.0;  // 0 picks 0.9 / |A|^2
  int max_iter = 100;
  StoppingRule stop = StoppingRule::fixed();
  int power_iterations = 30;
  std::uint64_t power_seed = 0x5eed;
};

struct LandweberResult {
  GridFn u;
  IterationLog log;
  double step;
  int stop_index;  // index into log.residual of the returned iterate
};

/// Largest eigenvalue of G P G* by power iteration, P the preconditioner (identity when empty).
double operator_norm_sq(const LinOp& g, const EmbeddingBackend& p, int iterations, std::uint64_t seed);

/// u_{k+1} = u_k + step E_s* G* (y - G u_k), u_0 = 0.
/// Throws DivergenceError when the residual exceeds 10x the initial one, and
/// NonTermination when a discrepancy rule is not met within max_iter.
LandweberResult landweber(const InverseProblem& p, const LandweberOptions& opt);

/// Hilbert-scale variant with the preconditioner w^a E_s* (w the H^s multiplier
/// weight): a = 0 is the embedded iteration, a = 1 is plain L2 Landweber on G.
/// Needs a periodic domain; a in [-1, 1].
LandweberResult landweber_hilbert_scale(const InverseProblem& p, double a, const LandweberOptions& opt);

struct TikhonovResult {
  GridFn u;
  int iterations;
  double relative_residual;
};

/// Minimizes |G u - y|^2 + alpha |u|_{H^s}^2 via preconditioned CG on
/// (G*G + alpha W) u = G* y, W = (E_s*)^{-1}, preconditioner E_s*.
/// Periodic domains only when an embedding spec is present.
TikhonovResult tikhonov(const InverseProblem& p, double alpha, int max_iter = 0);

double tikhonov_functional(const InverseProblem& p, double alpha, const GridFn& u);

/// First k with log.residual[k] <= tau delta.
int discrepancy_stop(const IterationLog& log, double delta, double tau);

}  // namespace sobolev
