#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sobolev/multiplier.hpp"
#include "test_util.hpp"

using namespace sobolev;
using std::numbers::pi;

namespace {

GridFn mode(const Domain& d, int k) {
  return GridFn::sample(d, [k](double x, double) { return std::exp(Complex(0, 2 * pi * k * x)); });
}

GridFn random_complex(const Domain& d, std::uint64_t seed) {
  return random_real(d, seed) + random_real(d, seed + 1000) * Complex(0, 1);
}

}  // namespace

TEST_CASE("sobolev_weight") {
  for (NormVariant v : {NormVariant::BesselV1, NormVariant::BesselV2, NormVariant::SeriesM, NormVariant::TorusS})
    CHECK(sobolev_weight(Eigen::Vector2d(0, 0), {2.0, v}) == 1.0);
  CHECK(sobolev_weight(Eigen::Matrix<double, 1, 1>(1.0), {1.0, NormVariant::BesselV1}) ==
        doctest::Approx(1 + 4 * pi * pi).epsilon(1e-15));
  CHECK(sobolev_weight_radial(1.0, {1.0, NormVariant::BesselV1}) == doctest::Approx(40.478417604357).epsilon(1e-12));

  const double w1 = sobolev_weight_radial(1.0, {2.0, NormVariant::BesselV1});
  const double w2 = sobolev_weight_radial(1.0, {2.0, NormVariant::BesselV2});
  CHECK(0.5 * w2 <= w1);
  CHECK(w1 <= 2.0 * w2);

  CHECK_THROWS_AS(sobolev_weight_radial(1.0, {0.5, NormVariant::BesselV2}), InvalidArgument);
  CHECK_THROWS_AS(sobolev_weight_radial(1.0, {1.5, NormVariant::SeriesM}), InvalidArgument);
  CHECK_THROWS_AS(sobolev_weight_radial(1.0, {-1.0, NormVariant::TorusS}), InvalidArgument);
}

TEST_CASE("adjoint embedding on simple inputs") {
  const Domain d = Domain::torus(1, 64);
  const SobolevSpec s1{1.0, NormVariant::TorusS};
  const GridFn c = GridFn::constant(d, 2.5);
  CHECK((adjoint_embedding(c, s1).values() - c.values()).cwiseAbs().maxCoeff() < 1e-13);

  const SpectralField out = fft_forward(adjoint_embedding(mode(d, 1), s1));
  CHECK(std::abs(out.coeffs[1] - Complex(1.0 / (1 + 4 * pi * pi))) < 1e-14);
  CHECK(std::abs(out.coeffs[1].real() - 0.024704) < 1e-6);

  const GridFn u = random_complex(d, 3);
  CHECK(adjoint_embedding(u, {0.0, NormVariant::TorusS}).values() == u.values());
  CHECK(adjoint_embedding(random_real(d, 4), s1).is_real());
  CHECK_THROWS_AS(adjoint_embedding(GridFn::zeros(Domain::interval(0, 1, 8)), s1), DomainMismatch);
}

TEST_CASE("bessel potential") {
  const Domain d = Domain::real_line(10.0, 128);
  const GridFn u = random_real(d, 5);
  CHECK(bessel_potential(u, 0.0).values() == u.values());
  const GridFn back = bessel_potential(bessel_potential(u, 1.3), -1.3);
  CHECK((back.values() - u.values()).norm() < 1e-10 * u.values().norm());
  const GridFn a = bessel_potential(u, 2.0);
  const GridFn b = adjoint_embedding(u, {1.0, NormVariant::BesselV1});
  CHECK((a.values() - b.values()).norm() < 1e-12 * u.values().norm());
}

TEST_CASE("sobolev inner product") {
  const Domain d = Domain::torus(1, 64);
  const GridFn u = random_complex(d, 7), v = random_complex(d, 8);
  CHECK(std::abs(sobolev_inner(u, v, {0.0, NormVariant::TorusS}) - inner(u, v)) < 1e-13);
  CHECK(std::abs(sobolev_inner(mode(d, 1), mode(d, 1), {1.0, NormVariant::TorusS}) - Complex(1 + 4 * pi * pi)) <
        1e-11);

  for (NormVariant var : {NormVariant::BesselV1, NormVariant::BesselV2, NormVariant::TorusS}) {
    // Round-off in E_s* u is amplified by max w(k) when re-weighted, so keep w small.
    for (double s : {1.0, 1.25, 1.5}) {
      const SobolevSpec spec{s, var};
      const Complex lhs = sobolev_inner(adjoint_embedding(u, spec), v, spec);
      CHECK(std::abs(lhs - inner(u, v)) < 1e-11 * norm(u) * norm(v));
    }
  }
  CHECK(sobolev_inner(u, u, {2.0, NormVariant::TorusS}).real() > 0);
}

TEST_CASE("inverse square root of the adjoint") {
  const Domain d = Domain::torus(2, 16);
  const SobolevSpec s1{1.0, NormVariant::TorusS};
  const GridFn u = random_complex(d, 9);
  CHECK(inv_sqrt_adjoint(u, {0.0, NormVariant::TorusS}).values() == u.values());
  CHECK(std::abs(norm(inv_sqrt_adjoint(u, s1)) - sobolev_norm(u, s1)) < 1e-11 * sobolev_norm(u, s1));

  const Domain d1 = Domain::torus(1, 32);
  const GridFn e1 = inv_sqrt_adjoint(mode(d1, 1), s1);
  CHECK((e1.values() - mode(d1, 1).values() * std::sqrt(1 + 4 * pi * pi)).cwiseAbs().maxCoeff() < 1e-12);
  // L^{-2} = E_s*.
  const GridFn lm2 = hilbert_scale_apply(u, s1, -2.0);
  CHECK((lm2.values() - adjoint_embedding(u, s1).values()).norm() < 1e-13 * u.values().norm());
}

TEST_CASE("properties: self-adjoint, positive, monotone, smoothing") {
  const Domain d = Domain::torus(1, 128);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const GridFn u = random_complex(d, 100 + seed), v = random_complex(d, 200 + seed);
    const double s = 0.5 + 0.3 * seed;
    const SobolevSpec spec{s, NormVariant::TorusS};
    const GridFn eu = adjoint_embedding(u, spec);
    CHECK(std::abs(inner(eu, v) - inner(u, adjoint_embedding(v, spec))) < 1e-12 * norm(u) * norm(v));
    CHECK(inner(eu, u).real() > 0);
    CHECK(sobolev_norm(eu, spec) <= norm(u) * (1 + 1e-12));
  }
  for (int k = 1; k <= 64; ++k) {
    const double f1 = 1.0 / sobolev_weight_radial(k, {0.5, NormVariant::TorusS});
    const double f2 = 1.0 / sobolev_weight_radial(k, {1.0, NormVariant::TorusS});
    CHECK(f2 < f1);
  }
}

TEST_CASE("norm equivalence sandwich") {
  for (double s : {1.0, 1.5, 2.0, 3.0}) {
    const NormEquivalenceReport r = norm_equivalence_check(s, 64);
    CHECK(r.holds);
    CHECK(r.lower_margin >= 0.0);
  }
  CHECK_THROWS_AS(norm_equivalence_check(0.5, 10), InvalidArgument);
}

TEST_CASE("embedding operator passes the adjoint check") {
  const Domain d = Domain::torus(2, 16);
  CHECK(check_adjoint(adjoint_embedding_op(d, {1.5, NormVariant::BesselV1}), 20, 1) < 1e-10);
}
