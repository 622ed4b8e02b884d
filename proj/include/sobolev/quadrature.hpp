#pragma once

#include <functional>

#include <Eigen/Dense>

namespace sobolev {

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

GaussRule gauss_legendre(int order);

/// Composite Gauss-Legendre over [a, b] with equal panels.
double integrate(const std::function<double(double)>& f, double a, double b, int panels, int order = 8);

}  // namespace sobolev
