#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "axmcf/fe_space.hpp"
#include "axmcf/quadrature.hpp"

namespace axmcf {

template <typename Scalar = double>
struct Measures {
  Scalar F = 0;  ///< Huisken functional
  Scalar V = 0;  ///< enclosed volume, signed by orientation
  Scalar A = 0;  ///< surface area
  Scalar min_x1 = 0;
  Scalar max_x1 = 0;
  Scalar max_x2 = 0;
};

template <typename Scalar>
Measures<Scalar> measure(const Curve<Scalar>& Y) {
  const Grid& grid = Y.grid();
  static const QuadratureRule<Scalar> gauss10 = gauss_legendre<Scalar>(10);
  const auto& rule3 = reference_rule<Scalar>();
  const Scalar pi = std::acos(Scalar(-1));
  const Coords<Scalar>& X = Y.coords();

  Measures<Scalar> m;
  Scalar f = 0, v = 0, a = 0;
  for (int e = 0; e < grid.elements(); ++e) {
    const auto [i, j] = grid.element_dofs(e);
    const Point<Scalar> p = X.row(i).transpose(), q = X.row(j).transpose();
    const Scalar len = (q - p).norm();
    Scalar fe = 0;
    for (int k = 0; k < gauss10.size(); ++k) {
      const Point<Scalar> z = p + gauss10.points[k] * (q - p);
      fe += gauss10.weights[k] * z(0) * std::exp(-z.squaredNorm() / 4);
    }
    f += fe * len;
    Scalar r2 = 0;
    for (int k = 0; k < rule3.size(); ++k) {
      const Scalar r = p(0) + rule3.points[k] * (q(0) - p(0));
      r2 += rule3.weights[k] * r * r;
    }
    v += r2 * (q(1) - p(1));
    a += (p(0) + q(0)) / 2 * len;
  }
  m.F = f / 2;
  m.V = pi * v;
  m.A = 2 * pi * a;
  m.min_x1 = X.col(0).minCoeff();
  m.max_x1 = X.col(0).maxCoeff();
  m.max_x2 = X.col(1).maxCoeff();
  return m;
}

/// Chord lengths of all elements.
template <typename Scalar>
Vector<Scalar> element_lengths(const Curve<Scalar>& X) {
  const Grid& grid = X.grid();
  Vector<Scalar> len(grid.elements());
  for (int e = 0; e < grid.elements(); ++e) {
    const auto [a, b] = grid.element_dofs(e);
    len(e) = (X.coords().row(b) - X.coords().row(a)).norm();
  }
  return len;
}

/// Longest over shortest element.
template <typename Scalar>
Scalar mesh_ratio(const Curve<Scalar>& X) {
  const Vector<Scalar> len = element_lengths(X);
  const Scalar lo = len.minCoeff();
  if (!(lo > 0)) throw DegenerateMesh("mesh contains a zero-length element");
  return len.maxCoeff() / lo;
}

/// Largest distance between two nodes (convex hull, then rotating calipers).
template <typename Scalar>
Scalar diameter(const Curve<Scalar>& X) {
  std::vector<Point<Scalar>> pts(X.dofs());
  for (int i = 0; i < X.dofs(); ++i) pts[i] = X.point(i);
  std::sort(pts.begin(), pts.end(), [](const Point<Scalar>& a, const Point<Scalar>& b) {
    return a(0) < b(0) || (a(0) == b(0) && a(1) < b(1));
  });
  auto cross = [](const Point<Scalar>& o, const Point<Scalar>& a, const Point<Scalar>& b) {
    return (a(0) - o(0)) * (b(1) - o(1)) - (a(1) - o(1)) * (b(0) - o(0));
  };
  const int n = static_cast<int>(pts.size());
  std::vector<Point<Scalar>> hull(2 * n);
  int k = 0;
  for (int i = 0; i < n; ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (int i = n - 2, lower = k + 1; i >= 0; --i) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  const int h = k - 1;
  if (h < 2) return h == 1 ? (hull[1] - hull[0]).norm() : Scalar(0);

  Scalar best2 = 0;
  for (int i = 0, j = 1; i < h; ++i) {
    const Point<Scalar>& a = hull[i];
    const Point<Scalar>& b = hull[(i + 1) % h];
    while (std::abs(cross(a, b, hull[(j + 1) % h])) > std::abs(cross(a, b, hull[j]))) j = (j + 1) % h;
    best2 = std::max({best2, (hull[j] - a).squaredNorm(), (hull[j] - b).squaredNorm()});
  }
  return std::sqrt(best2);
}

enum class SingularityKind { None, ShrinksToCircle, HoleCloses, ShrinksToPoint, PinchOff };

inline std::string to_string(SingularityKind k) {
  switch (k) {
    case SingularityKind::None: return "none";
    case SingularityKind::ShrinksToCircle: return "shrinks-to-circle";
    case SingularityKind::HoleCloses: return "hole-closes";
    case SingularityKind::ShrinksToPoint: return "shrinks-to-point";
    case SingularityKind::PinchOff: return "pinch-off";
  }
  return "none";
}

template <typename Scalar = double>
struct Thresholds {
  Scalar eps_axis = Scalar(1e-3);
  Scalar eps_diam = Scalar(1e-2);
};

template <typename Scalar = double>
struct SingularityVerdict {
  SingularityKind kind = SingularityKind::None;
  Scalar time = 0;
  Scalar min_x1 = 0;    ///< smallest x1 over the nodes tested against eps_axis
  Scalar diameter = 0;
};

template <typename Scalar>
SingularityVerdict<Scalar> classify_singularity(const Curve<Scalar>& X, const Thresholds<Scalar>& th, Scalar t = 0) {
  SingularityVerdict<Scalar> v;
  v.time = t;
  v.diameter = diameter(X);
  const auto& x1 = X.coords().col(0);
  if (X.grid().closed()) {
    v.min_x1 = x1.minCoeff();
    if (v.min_x1 < th.eps_axis) v.kind = SingularityKind::HoleCloses;
    else if (v.diameter < th.eps_diam) v.kind = SingularityKind::ShrinksToCircle;
  } else {
    v.min_x1 = x1.segment(1, x1.size() - 2).minCoeff();
    if (v.diameter < th.eps_diam) v.kind = SingularityKind::ShrinksToPoint;
    else if (v.min_x1 < th.eps_axis) v.kind = SingularityKind::PinchOff;
  }
  return v;
}

}  // namespace axmcf
