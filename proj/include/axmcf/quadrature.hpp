#pragma once

#include <cmath>
#include <limits>
#include <utility>
#include <numbers>
#include <vector>

#include "axmcf/errors.hpp"

namespace axmcf {

/// Gauss-Legendre rule mapped to the unit interval [0,1].
template <typename Scalar = double>
struct QuadratureRule {
  std::vector<Scalar> points;
  std::vector<Scalar> weights;

  int size() const noexcept { return static_cast<int>(points.size()); }
};

/// n-point Gauss-Legendre rule on [0,1], exact for polynomials of degree 2n-1.
/// Nodes are Newton-refined roots of P_n.
template <typename Scalar = double>
QuadratureRule<Scalar> gauss_legendre(int n) {
  if (n < 1) throw InvalidParameter("quadrature needs at least one point");
  QuadratureRule<Scalar> rule;
  rule.points.resize(n);
  rule.weights.resize(n);
  const Scalar pi = std::numbers::pi_v<Scalar>;
  // Legendre P_n(x) and P_n'(x) by the three-term recurrence.
  const auto legendre = [n](Scalar x) {
    Scalar p0 = 1, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const Scalar p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    const Scalar dp = n == 1 ? Scalar(1) : n * (x * p1 - p0) / (x * x - 1);
    return std::pair<Scalar, Scalar>{p1, dp};
  };
  for (int i = 0; i < (n + 1) / 2; ++i) {
    Scalar x = n == 1 ? Scalar(0) : std::cos(pi * (Scalar(i) + Scalar(0.75)) / (Scalar(n) + Scalar(0.5)));
    for (int it = 0; it < 100 && n > 1; ++it) {
      const auto [p, dp] = legendre(x);
      const Scalar dx = p / dp;
      x -= dx;
      if (std::abs(dx) <= 4 * std::numeric_limits<Scalar>::epsilon()) break;
    }
    const Scalar dp = legendre(x).second;
    const Scalar w = 2 / ((1 - x * x) * dp * dp);
    rule.points[i] = (1 - x) / 2;
    rule.points[n - 1 - i] = (1 + x) / 2;
    rule.weights[i] = w / 2;
    rule.weights[n - 1 - i] = w / 2;
  }
  return rule;
}

/// The element rule used by every assembly routine: 3 points, exact to degree 5.
template <typename Scalar = double>
const QuadratureRule<Scalar>& reference_rule() {
  static const QuadratureRule<Scalar> rule = [] {
    const Scalar d = std::sqrt(Scalar(15)) / 10;
    return QuadratureRule<Scalar>{{Scalar(0.5) - d, Scalar(0.5), Scalar(0.5) + d},
                                  {Scalar(5) / 18, Scalar(8) / 18, Scalar(5) / 18}};
  }();
  return rule;
}

}  // namespace axmcf
