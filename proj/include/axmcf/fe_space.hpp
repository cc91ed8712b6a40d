#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>
#include <string_view>
#include <utility>

#include "axmcf/errors.hpp"
#include "axmcf/grid.hpp"
#include "axmcf/quadrature.hpp"

namespace axmcf {

template <typename Scalar>
using Point = Eigen::Matrix<Scalar, 2, 1>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
/// Nodal coordinates, one row per DOF, columns (x1, x2).
template <typename Scalar>
using Coords = Eigen::Matrix<Scalar, Eigen::Dynamic, 2>;

/// Piecewise-linear generating curve X in [V^h]^2.
///
/// x1 is the distance to the rotation axis, x2 the axial coordinate.
template <typename Scalar = double>
class Curve {
 public:
  explicit Curve(Grid grid) : grid_(grid), coords_(Coords<Scalar>::Zero(grid.dofs(), 2)) {}

  Curve(Grid grid, Coords<Scalar> coords) : grid_(grid), coords_(std::move(coords)) {
    if (coords_.rows() != grid_.dofs()) {
      throw InvalidParameter("curve has " + std::to_string(coords_.rows()) + " nodes, grid expects " +
                             std::to_string(grid_.dofs()));
    }
  }

  const Grid& grid() const noexcept { return grid_; }
  int dofs() const noexcept { return grid_.dofs(); }

  const Coords<Scalar>& coords() const noexcept { return coords_; }
  Coords<Scalar>& coords() noexcept { return coords_; }

  auto x1() const { return coords_.col(0); }
  auto x2() const { return coords_.col(1); }

  Point<Scalar> point(int i) const { return coords_.row(i).transpose(); }

 private:
  Grid grid_;
  Coords<Scalar> coords_;
};

/// Piecewise-constant data on a grid (the space Z^h).
template <typename Scalar = double>
struct ElementField {
  Grid grid;
  Vector<Scalar> values;
};

/// Nodal interpolation pi^h: f(rho) -> Point, sampled at q_j.
template <typename Scalar = double, typename F>
Curve<Scalar> interpolate(F&& f, const Grid& grid) {
  Coords<Scalar> x(grid.dofs(), 2);
  for (int i = 0; i < grid.dofs(); ++i) {
    const Point<Scalar> p = f(grid.node<Scalar>(i));
    x.row(i) = p.transpose();
  }
  return Curve<Scalar>(grid, std::move(x));
}

/// Elementwise mean P^h f, with the element integral taken by `rule`.
template <typename Scalar = double, typename F>
ElementField<Scalar> project_elementwise(F&& f, const Grid& grid,
                                         const QuadratureRule<Scalar>& rule = reference_rule<Scalar>()) {
  const Scalar h = grid.h<Scalar>();
  Vector<Scalar> values(grid.elements());
  for (int e = 0; e < grid.elements(); ++e) {
    Scalar sum = 0;
    for (int q = 0; q < rule.size(); ++q) {
      sum += rule.weights[q] * f((Scalar(e) + rule.points[q]) * h);
    }
    values(e) = sum;
  }
  return {grid, std::move(values)};
}

enum class NormKind { L2, H1Semi, H1, Linf };

inline NormKind parse_norm_kind(std::string_view name) {
  if (name == "L2") return NormKind::L2;
  if (name == "H1semi") return NormKind::H1Semi;
  if (name == "H1") return NormKind::H1;
  if (name == "Linf") return NormKind::Linf;
  throw InvalidParameter("unknown norm kind '" + std::string(name) + "'");
}

/// Exact norm of the P1 function with the given nodal values (any number of
/// components, one per column).
template <typename Derived>
typename Derived::Scalar norm(const Grid& grid, const Eigen::MatrixBase<Derived>& nodal, NormKind kind) {
  using Scalar = typename Derived::Scalar;
  if (nodal.rows() != grid.dofs()) throw InvalidParameter("nodal vector does not match grid");
  if (kind == NormKind::Linf) {
    return nodal.rowwise().norm().maxCoeff();
  }
  const Scalar h = grid.h<Scalar>();
  Scalar l2 = 0, semi = 0;
  for (int e = 0; e < grid.elements(); ++e) {
    const auto [a, b] = grid.element_dofs(e);
    const auto ua = nodal.row(a);
    const auto ub = nodal.row(b);
    l2 += h * (ua.squaredNorm() + ua.dot(ub) + ub.squaredNorm()) / 3;
    semi += (ub - ua).squaredNorm() / h;
  }
  switch (kind) {
    case NormKind::L2:
      return std::sqrt(l2);
    case NormKind::H1Semi:
      return std::sqrt(semi);
    case NormKind::H1:
      return std::sqrt(l2 + semi);
    default:
      break;
  }
  throw InvalidParameter("unknown norm kind");
}

template <typename Scalar>
Scalar norm(const Curve<Scalar>& u, NormKind kind) {
  return norm(u.grid(), u.coords(), kind);
}

/// Per-element geometry shared by all the forms.
template <typename Scalar = double>
struct ElementData {
  Vector<Scalar> length;      ///< |X(q_j) - X(q_{j-1})|
  Coords<Scalar> slope;       ///< X_rho, constant on the element
  Vector<Scalar> speed2;      ///< |X_rho|^2
};

template <typename Scalar>
ElementData<Scalar> element_data(const Curve<Scalar>& X) {
  const Grid& grid = X.grid();
  const int J = grid.elements();
  const Scalar inv_h = Scalar(J);
  ElementData<Scalar> d{Vector<Scalar>(J), Coords<Scalar>(J, 2), Vector<Scalar>(J)};
  for (int e = 0; e < J; ++e) {
    const auto [a, b] = grid.element_dofs(e);
    const Point<Scalar> diff = (X.coords().row(b) - X.coords().row(a)).transpose();
    d.length(e) = diff.norm();
    d.slope.row(e) = inv_h * diff.transpose();
    d.speed2(e) = inv_h * inv_h * diff.squaredNorm();
  }
  return d;
}

/// L2 norm and H1 seminorm of x - X, where x is a smooth curve given by its
/// value and rho-derivative. Integrated elementwise with `rule`.
template <typename Scalar>
struct DistanceNorms {
  Scalar l2;
  Scalar h1_semi;
};

template <typename Scalar, typename Value, typename Derivative>
DistanceNorms<Scalar> distance_norms(const Curve<Scalar>& X, Value&& x, Derivative&& x_rho,
                                     const QuadratureRule<Scalar>& rule) {
  const Grid& grid = X.grid();
  const Scalar h = grid.h<Scalar>();
  Scalar l2 = 0, semi = 0;
  for (int e = 0; e < grid.elements(); ++e) {
    const auto [a, b] = grid.element_dofs(e);
    const Point<Scalar> xa = X.point(a);
    const Point<Scalar> xb = X.point(b);
    const Point<Scalar> slope = (xb - xa) / h;
    for (int q = 0; q < rule.size(); ++q) {
      const Scalar s = rule.points[q];
      const Scalar rho = (Scalar(e) + s) * h;
      const Point<Scalar> Xq = (1 - s) * xa + s * xb;
      const Point<Scalar> ex = x(rho);
      const Point<Scalar> dex = x_rho(rho);
      l2 += rule.weights[q] * h * (ex - Xq).squaredNorm();
      semi += rule.weights[q] * h * (dex - slope).squaredNorm();
    }
  }
  return {std::sqrt(l2), std::sqrt(semi)};
}

}  // namespace axmcf
