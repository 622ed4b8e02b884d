#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sobolev/kernel.hpp"
#include "sobolev/multiplier.hpp"
#include "test_util.hpp"

using namespace sobolev;
using std::numbers::pi;

TEST_CASE("gamma function") {
  CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(pi)).epsilon(1e-13));
  CHECK(std::abs(gamma_fn(5.0) - 24.0) < 1e-12);
  for (double x = 0.1; x <= 30.0; x += 0.37) CHECK(std::abs(gamma_fn(x) / std::tgamma(x) - 1.0) < 1e-10);
  CHECK_THROWS_AS(gamma_fn(0.0), InvalidArgument);
  CHECK_THROWS_AS(gamma_fn(-1.5), InvalidArgument);
}

TEST_CASE("bessel K") {
  // Half-integer closed form.
  CHECK(std::abs(bessel_k(0.5, 1.0) - std::sqrt(pi / 2) * std::exp(-1.0)) < 1e-12);
  CHECK(bessel_k(0.5, 1.0) == doctest::Approx(0.4610685).epsilon(1e-7));

  std::mt19937_64 gen(42);
  std::uniform_real_distribution<double> nus(-5.0, 5.0), logx(std::log(0.01), std::log(30.0));
  for (int i = 0; i < 200; ++i) {
    const double nu = nus(gen), x = std::exp(logx(gen));
    CHECK(bessel_k(nu, x) == bessel_k(-nu, x));
    CHECK(std::abs(bessel_k(nu, x) / std::cyl_bessel_k(std::abs(nu), x) - 1.0) < 1e-8);
  }
  CHECK(std::abs(bessel_k(0.0, 10.0) / (std::sqrt(pi / 20.0) * std::exp(-10.0)) - 1.0) < 0.02);
  CHECK_THROWS_AS(bessel_k(1.0, 0.0), InvalidArgument);
}

TEST_CASE("kernel evaluation") {
  const KernelSpec closed{2.0, 1, KernelEval::ClosedForm};
  const KernelSpec knu{2.0, 1, KernelEval::IntegralKnu};
  const KernelSpec sub{2.0, 1, KernelEval::SpectralInverse};
  CHECK(kernel_eval(closed, 0.0) == 0.5);
  CHECK(kernel_eval(knu, 0.0) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(kernel_eval(closed, 1.0) == doctest::Approx(0.1839397).epsilon(1e-7));
  CHECK(std::abs(kernel_eval(knu, 1.0) - kernel_eval(closed, 1.0)) < 1e-7);
  CHECK(std::abs(kernel_eval(sub, 1.0) - kernel_eval(closed, 1.0)) < 1e-7);
  CHECK(kernel_eval(knu, Eigen::Matrix<double, 1, 1>(-1.0)) == kernel_eval(knu, 1.0));

  const KernelSpec g4{4.0, 1, KernelEval::ClosedForm};
  CHECK(kernel_eval(g4, 2.0) == doctest::Approx(0.75 * std::exp(-2.0)));

  CHECK_THROWS_AS(kernel_eval({1.0, 1, KernelEval::IntegralKnu}, 0.0), InvalidArgument);
  CHECK_THROWS_AS(kernel_eval({3.0, 1, KernelEval::ClosedForm}, 1.0), InvalidArgument);
  CHECK_THROWS_AS(kernel_eval({1.0, 2, KernelEval::ClosedForm}, 1.0), InvalidArgument);
}

TEST_CASE("kernel is positive and radially decreasing") {
  for (int n : {1, 2}) {
    for (double s : {0.5, 1.0, 2.0, 3.0}) {
      for (KernelEval mode : {KernelEval::IntegralKnu, KernelEval::SpectralInverse}) {
        const KernelSpec ks{s, n, mode};
        double prev = std::numeric_limits<double>::infinity();
        for (double r = 0.01; r < 25.0; r *= 1.3) {
          const double g = kernel_eval(ks, r);
          CHECK(g > 0.0);
          CHECK(g < prev);
          prev = g;
        }
      }
    }
  }
}

TEST_CASE("Bessel-K and subordination routes agree") {
  for (int n : {1, 2})
    for (double s : {0.7, 1.0, 2.5, 4.0})
      for (double r : {0.05, 0.5, 2.0, 8.0}) {
        const double a = kernel_eval({s, n, KernelEval::IntegralKnu}, r);
        const double b = kernel_eval({s, n, KernelEval::SpectralInverse}, r);
        CHECK(std::abs(a / b - 1.0) < 1e-8);
      }
}

TEST_CASE("kernel asymptotics") {
  const auto large = kernel_asymptotics_check({2.0, 1, KernelEval::IntegralKnu}, AsymptoticRegime::LargeX);
  CHECK(large.pass);
  CHECK(large.extreme_deviation < 0.05);

  const KernelSpec n2s1{1.0, 2, KernelEval::IntegralKnu};
  CHECK(std::abs(kernel_eval(n2s1, 1e-3) * 1e-3 - 1.0 / (2 * pi)) < 0.05 / (2 * pi));
  CHECK(kernel_asymptotics_check(n2s1, AsymptoticRegime::SmallX_sLtN).pass);

  const KernelSpec n1s1{1.0, 1, KernelEval::IntegralKnu};
  CHECK(std::abs(kernel_eval(n1s1, 1e-4) / std::log(1e4) * pi - 1.0) < 0.10);
  CHECK(kernel_asymptotics_check(n1s1, AsymptoticRegime::SmallX_sEqN).pass);

  CHECK(kernel_asymptotics_check({3.0, 2, KernelEval::IntegralKnu}, AsymptoticRegime::SmallX_sGtN).pass);
  CHECK_THROWS_AS(kernel_asymptotics_check(n1s1, AsymptoticRegime::SmallX_sLtN), InvalidArgument);
}

TEST_CASE("kernel mass on the truncated line") {
  for (double s : {1.0, 2.0}) {
    const KernelSpec ks{2.0 * s, 1, KernelEval::IntegralKnu};
    const double w = 20.0, h = 40.0 / 1024;
    double mass = kernel_eval(ks, 0.0);
    for (int i = 1; i * h <= w; ++i) mass += 2.0 * kernel_eval(ks, i * h);
    mass *= h;
    CHECK(mass > 1.0 - 1e-3);
    CHECK(mass < 1.0 + 1e-3);
  }
}

TEST_CASE("convolution reproduces constants") {
  const Domain d = Domain::real_line(20.0, 1024);
  const GridFn c = GridFn::constant(d, 3.0);
  const GridFn out = convolve_adjoint(c, 1.0);
  CHECK((out.values().array() - Complex(3.0)).abs().maxCoeff() < 3e-3);
  CHECK(convolve_adjoint(c, 0.0).values() == c.values());
}

TEST_CASE("convolution matches the multiplier path") {
  const Domain d = Domain::real_line(20.0, 1024);
  const GridFn bump = GridFn::sample(d, [](double x, double) { return std::exp(-x * x / (2 * 0.5 * 0.5)); });
  for (double s : {1.0, 2.0}) {
    const GridFn a = convolve_adjoint(bump, s, KernelEval::IntegralKnu);
    const GridFn b = adjoint_embedding(bump, {s, NormVariant::BesselV1});
    CHECK(norm(a - b) / norm(b) < 1e-3);
    const GridFn c = convolve_adjoint(bump, s, KernelEval::ClosedForm);
    CHECK(norm(c - a) / norm(a) < 1e-7);
  }
  // Singular kernel G_1 in 1D uses the origin cell average.
  const GridFn a = convolve_adjoint(bump, 0.5);
  const GridFn b = adjoint_embedding(bump, {0.5, NormVariant::BesselV1});
  CHECK(norm(a - b) / norm(b) < 1e-2);
}

TEST_CASE("convolution on the unit torus periodizes the kernel") {
  const Domain d = Domain::torus(1, 256);
  const auto f = testing::BandLimited::random(8, 3);
  const GridFn u = f.sample(d);
  const GridFn a = convolve_adjoint(u, 1.0, KernelEval::ClosedForm, 20.0);
  const GridFn b = adjoint_embedding(u, {1.0, NormVariant::TorusS});
  CHECK(norm(a - b) / norm(b) < 1e-3);
}

TEST_CASE("2D convolution agrees with the multiplier") {
  const Domain d = Domain::real_line(8.0, 64, 2);
  const GridFn bump = GridFn::sample(d, [](double x, double y) { return std::exp(-(x * x + y * y)); });
  const GridFn a = convolve_adjoint(bump, 1.5);
  const GridFn b = adjoint_embedding(bump, {1.5, NormVariant::BesselV1});
  CHECK(norm(a - b) / norm(b) < 1e-2);
}
