#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sobolev/bvp.hpp"
#include "sobolev/multiplier.hpp"
#include "test_util.hpp"

using namespace sobolev;
using std::numbers::pi;

namespace {

const BvpSpec kH1{};
const BvpSpec kH1Dirichlet{1, BoundaryCondition::Dirichlet, NormChoice::FullDa};
const BvpSpec kH1Seminorm{1, BoundaryCondition::Dirichlet, NormChoice::SeminormOnly};

double max_err(const GridFn& a, const std::function<double(double, double)>& f) {
  const GridFn b = GridFn::sample(a.domain(), [&](double x, double y) { return Complex(f(x, y)); });
  return (a.values() - b.values()).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("banded cholesky matches dense factorization") {
  const int n = 12, bw = 2;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    a(i, i) = 6.0 + 0.1 * i;
    if (i + 1 < n) a(i, i + 1) = a(i + 1, i) = -1.5;
    if (i + 2 < n) a(i, i + 2) = a(i + 2, i) = 0.4;
  }
  BandedSystem b = BandedSystem::from_sparse(a.sparseView(), bw);
  b.factor();
  const RVector rhs = RVector::LinSpaced(n, -1.0, 2.0);
  const RVector ref = a.llt().solve(rhs);
  CHECK((b.solve(rhs) - ref).cwiseAbs().maxCoeff() < 1e-13);

  Eigen::MatrixXd bad = a;
  bad(3, 3) = -1.0;
  BandedSystem c = BandedSystem::from_sparse(bad.sparseView(), bw);
  CHECK_THROWS_AS(c.factor(), NumericalFailure);
  CHECK_THROWS_AS(BandedSystem::from_sparse(a.sparseView(), 1), InvalidArgument);
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS((BvpSpec{1, BoundaryCondition::NeumannLike, NormChoice::SeminormOnly}.validate()), InvalidArgument);
  CHECK_THROWS_AS((BvpSpec{0, BoundaryCondition::Dirichlet, NormChoice::FullDa}.validate()), InvalidArgument);
  CHECK_THROWS_AS(solve_bvp(GridFn::zeros(Domain::torus(1, 16)), kH1Dirichlet), InvalidArgument);
  CHECK_THROWS_AS(solve_bvp(GridFn::zeros(Domain::rectangle(1, 1, 8, 8)), {2, BoundaryCondition::NeumannLike}),
                  InvalidArgument);
  CHECK_THROWS_AS(solve_1d_order2m(GridFn::zeros(Domain::interval(0, 1, 9)), 3, Order2mBoundary::DirichletD_j),
                  InvalidArgument);
  CHECK_THROWS_AS(solve_1d_order2m(GridFn::zeros(Domain::torus(1, 8)), 1, Order2mBoundary::NaturalD_j),
                  DomainMismatch);
  CHECK_THROWS_AS(solve_neumann_helmholtz(GridFn::zeros(Domain::interval(0, 1, 9)), kH1Dirichlet), InvalidArgument);
  CHECK_THROWS_AS(solve_bvp(GridFn::zeros(Domain::sinogram(8, 8, 1.0)), kH1), DomainMismatch);
}

TEST_CASE("constants solve the Neumann problem") {
  for (const Domain& d : {Domain::interval(0, 1, 33), Domain::rectangle(1.0, 2.0, 17, 23), Domain::disk_mask(1.0, 32),
                          Domain::torus(2, 16)}) {
    const GridFn z = solve_neumann_helmholtz(GridFn::constant(d, 1.7));
    CHECK(max_err(z, [](double, double) { return 1.7; }) < 1e-10);
  }
}

TEST_CASE("u = 0 gives z = 0 with zero gap") {
  const GridFn u = GridFn::zeros(Domain::rectangle(1, 1, 9, 9));
  const GridFn z = solve_neumann_helmholtz(u);
  CHECK(z.values().cwiseAbs().maxCoeff() == 0.0);
  CHECK(variational_gap(z, u, kH1) == 0.0);
}

TEST_CASE("neumann helmholtz: second-order convergence on the interval") {
  std::vector<double> err;
  for (int n : {64, 128, 256, 512}) {
    const Domain d = Domain::interval(0, 1, n + 1);
    const GridFn u = GridFn::sample(d, [](double x, double) { return (1 + 4 * pi * pi) * std::cos(2 * pi * x); });
    err.push_back(max_err(solve_neumann_helmholtz(u), [](double x, double) { return std::cos(2 * pi * x); }));
  }
  CHECK(err.back() < 1e-4);
  for (size_t i = 1; i < err.size(); ++i) {
    const double ratio = err[i - 1] / err[i];
    CHECK(ratio > 3.5);
    CHECK(ratio < 4.5);
  }
}

TEST_CASE("neumann helmholtz: second-order convergence on the rectangle") {
  std::vector<double> err;
  for (int n : {16, 32, 64}) {
    const Domain d = Domain::rectangle(1.0, 2.0, n + 1, 2 * n + 1);
    auto z = [](double x, double y) { return std::cos(pi * x) * std::cos(pi * y / 2); };
    const double lam = 1 + pi * pi + pi * pi / 4;
    const GridFn u = GridFn::sample(d, [&](double x, double y) { return Complex(lam * z(x, y)); });
    err.push_back(max_err(solve_neumann_helmholtz(u), z));
  }
  for (size_t i = 1; i < err.size(); ++i) {
    const double ratio = err[i - 1] / err[i];
    CHECK(ratio > 3.5);
    CHECK(ratio < 4.5);
  }
}

TEST_CASE("discrete adjoint identity and variational gap") {
  const std::vector<std::pair<Domain, BvpSpec>> cases = {
      {Domain::interval(0, 2, 101), kH1},
      {Domain::interval(0, 1, 81), kH1Seminorm},
      {Domain::interval(0, 1, 61), {2, BoundaryCondition::NeumannLike, NormChoice::SimplePlusL2}},
      {Domain::interval(0, 1, 61), {2, BoundaryCondition::NeumannLike, NormChoice::FullDa}},
      {Domain::interval(0, 1, 61), {2, BoundaryCondition::Dirichlet, NormChoice::SeminormOnly}},
      {Domain::rectangle(1, 1, 33, 33), kH1},
      {Domain::rectangle(2, 1, 41, 21), kH1Dirichlet},
      {Domain::disk_mask(1.0, 40), kH1},
      {Domain::disk_mask(1.0, 40), kH1Seminorm},
      {Domain::torus(2, 32), kH1},
  };
  for (const auto& [d, spec] : cases) {
    CAPTURE(d.describe());
    CAPTURE(spec.order);
    const GridFn u = random_real(d, 11) + random_real(d, 12) * Complex(0, 0.5);
    const GridFn z = solve_bvp(u, spec);
    CHECK(variational_gap(z, u, spec) < 1e-9);

    const LinOp op = bvp_adjoint_op(d, spec);
    CHECK(check_adjoint(op, 20, 5) < 1e-10);

    // perturbing the solution must show up in the gap
    const GridFn zp = z + random_real(d, 13) * 1e-3;
    CHECK(variational_gap(zp, u, spec) > 1e-6);
  }
}

TEST_CASE("order-2m solves against closed forms") {
  SUBCASE("m = 1 Dirichlet seminorm is exact on quadratics") {
    const Domain d = Domain::interval(0, 1, 51);
    const GridFn z = solve_1d_order2m(GridFn::constant(d, 1.0), 1, Order2mBoundary::DirichletD_j);
    CHECK(max_err(z, [](double x, double) { return x * (1 - x) / 2; }) < 1e-12);
  }
  SUBCASE("m = 1 natural equals the Neumann-Helmholtz solve") {
    const Domain d = Domain::interval(-1, 3, 77);
    const GridFn u = random_real(d, 3);
    const GridFn a = solve_1d_order2m(u, 1, Order2mBoundary::NaturalD_j);
    CHECK((a.values() - solve_neumann_helmholtz(u).values()).cwiseAbs().maxCoeff() < 1e-10);
  }
  SUBCASE("m = 2 Dirichlet converges at second order") {
    std::vector<double> err;
    for (int n : {32, 64, 128, 256}) {
      const Domain d = Domain::interval(0, 1, n + 1);
      const GridFn z = solve_1d_order2m(GridFn::constant(d, 1.0), 2, Order2mBoundary::DirichletD_j);
      err.push_back(max_err(z, [](double x, double) { return x * x * (1 - x) * (1 - x) / 24; }));
    }
    for (size_t i = 1; i < err.size(); ++i) {
      CHECK(err[i - 1] / err[i] > 3.5);
      CHECK(err[i - 1] / err[i] < 4.5);
    }
  }
  SUBCASE("m = 2 natural converges at order >= 2") {
    // z = x^4 (1-x)^4 has z'' = z''' = 0 at both ends
    auto z = [](double x, double) { return std::pow(x * (1 - x), 4); };
    auto u = [&](double x, double y) {
      return Complex(24 - 480 * x + 2160 * x * x - 3360 * x * x * x + 1680 * x * x * x * x + z(x, y));
    };
    std::vector<double> err;
    for (int n : {32, 64, 128, 256}) {
      const Domain d = Domain::interval(0, 1, n + 1);
      err.push_back(max_err(solve_1d_order2m(GridFn::sample(d, u), 2, Order2mBoundary::NaturalD_j), z));
    }
    for (size_t i = 1; i < err.size(); ++i) CHECK(err[i - 1] / err[i] > 3.5);
  }
}

TEST_CASE("smoothing: H^2 seminorm of E_1* u stays bounded under refinement") {
  std::vector<double> ratio;
  for (int n : {64, 256, 1024, 4096}) {
    const Domain d = Domain::interval(0, 1, n + 1);
    // discontinuous data, still L2
    const GridFn u = GridFn::sample(d, [](double x, double) { return x < 0.37 ? 1.0 : -2.0; });
    ratio.push_back(discrete_h2_seminorm(solve_neumann_helmholtz(u)) / norm(u));
  }
  for (double r : ratio) CHECK(r < 2.0);
  CHECK(*std::max_element(ratio.begin(), ratio.end()) / *std::min_element(ratio.begin(), ratio.end()) < 1.2);
}

TEST_CASE("torus solve agrees with the multiplier at second order") {
  const auto f = testing::BandLimited::random(6, 21);
  std::vector<double> err;
  for (int n : {64, 128, 256}) {
    const Domain d = Domain::torus(1, n);
    const GridFn u = f.sample(d);
    const GridFn a = adjoint_embedding(u, {1.0, NormVariant::BesselV1});
    const GridFn b = solve_neumann_helmholtz(u);
    err.push_back(norm(a - b) / norm(a));
  }
  for (size_t i = 1; i < err.size(); ++i) {
    CHECK(err[i - 1] / err[i] > 3.5);
    CHECK(err[i - 1] / err[i] < 4.5);
  }
}
