#include "sobolev/quadrature.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace sobolev {

GaussRule gauss_legendre(int order) {
  if (order < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
  GaussRule rule{Eigen::VectorXd(order), Eigen::VectorXd(order)};
  for (int i = 0; i < (order + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[order - 1 - i] = x;
    rule.weights[i] = rule.weights[order - 1 - i] = w;
  }
  return rule;
}

double integrate(const std::function<double(double)>& f, double a, double b, int panels, int order) {
  // Map nodes are never moved, so the reference stays valid across nested calls.
  static thread_local std::map<int, GaussRule> rules;
  auto it = rules.find(order);
  if (it == rules.end()) it = rules.emplace(order, gauss_legendre(order)).first;
  const GaussRule& rule = it->second;
  const double width = (b - a) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * width;
    double panel = 0.0;
    for (int i = 0; i < order; ++i) panel += rule.weights[i] * f(mid + 0.5 * width * rule.nodes[i]);
    sum += 0.5 * width * panel;
  }
  return sum;
}

}  // namespace sobolev
