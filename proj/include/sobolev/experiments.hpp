#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "sobolev/core.hpp"
#include "sobolev/inverse.hpp"
#include "sobolev/kernel.hpp"
#include "sobolev/radon.hpp"

namespace sobolev {

enum class Backend { Multiplier, Kernel, Wavelet, Bvp, Eigs, Discrete };

std::string to_string(Backend b);
Backend backend_from_string(const std::string& name);

/// E_s* on `d` through the chosen representation, for use inside iterations.
///   multiplier  any periodic domain
///   kernel      periodic, IntegralKnu convolution
///   wavelet     1D torus, full-depth DB4 (n must be a power of two)
///   bvp         s = 1, periodic or Interval/Rectangle/DiskMask Neumann solve
/// eigs and discrete are not iteration backends and throw InvalidArgument.
EmbeddingBackend make_embedding_backend(Backend b, const SobolevSpec& spec, const Domain& d);

// ---------------------------------------------------------------------------
// Radon reconstruction

struct RadonReconOptions {
  RadonGeometry geometry{};
  PhantomKind phantom = PhantomKind::SmoothBumps;
  double s = 0.5;
  double noise = 0.10;
  double tau = 1.01;
  std::uint64_t seed = 1;
  int max_iter = 5000;
  double step = 0.0;  // 0 picks 0.9 / |A|^2
  Backend backend = Backend::Multiplier;
};

struct RadonReconResult {
  RadonReconOptions options;
  GridFn truth;
  GridFn reconstruction;
  IterationLog log;
  double delta;
  double step;
  int stop_index;
  double rel_error_l2;
  double rel_error_hs;  // relative H^{s_eval} error; s_eval = 0.5 unless set
};

/// Landweber with E_s* (s = 0 is plain Landweber) and the discrepancy principle.
/// Errors are measured in L2 and H^{s_eval} relative to the phantom.
RadonReconResult radon_reconstruction(const RadonReconOptions& opt, double s_eval = 0.5);

// ---------------------------------------------------------------------------
// One-dimensional cross-representation check

struct CrossCheckRow {
  std::string pair;
  double discrepancy;
  double tolerance;
  bool pass;
  std::string note;
};

struct CrossCheckOptions {
  int grid = 1024;
  int kmax = 16;
  double s = 1.0;
  double kernel_half_width = 20.0;
  std::uint64_t seed = 1;
};

/// Multiplier against kernel, BVP (with a mesh-halving Richardson ratio), SVD
/// and Fourier-mode Gram representations on a band-limited random input.
std::vector<CrossCheckRow> cross_check_1d(const CrossCheckOptions& opt);

// ---------------------------------------------------------------------------
// Two-dimensional smoothing picture

struct SmoothingResult {
  GridFn u;
  GridFn z;  // E_1* u
  double l2_u, l2_z;
  double total_variation_u, total_variation_z;
};

/// Piecewise-constant u on a DiskMask, smoothed by the Neumann solve.
SmoothingResult adjoint_smoothing_2d(int pixels, std::uint64_t seed, Backend backend = Backend::Bvp);

}  // namespace sobolev
