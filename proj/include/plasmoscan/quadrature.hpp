#pragma once

#include <cstddef>
#include <vector>

namespace plasmoscan {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Nodes and weights for an n-point Gauss-Legendre rule, computed once and cached.
const GaussLegendreRule &gauss_legendre(int order);

/// Rule mapped to [a, b]: node_i = a + (b-a)*(x_i+1)/2, weight scaled by (b-a)/2.
GaussLegendreRule gauss_legendre_on(int order, double a, double b);

/// ∫ f over [a,b] with an n-point Gauss-Legendre rule.
template <typename F>
double gl_integrate(int order, double a, double b, F &&f) {
  const GaussLegendreRule &rule = gauss_legendre(order);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return half * sum;
}

}  // namespace plasmoscan
