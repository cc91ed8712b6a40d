#pragma once

#include <cmath>
#include <functional>
#include <string>

#include "axmcf/banded.hpp"
#include "axmcf/exact_solutions.hpp"
#include "axmcf/fe_space.hpp"
#include "axmcf/quadrature.hpp"

namespace axmcf {

template <typename Scalar>
using Forcing = std::function<Point<Scalar>(Scalar rho, Scalar t)>;

/// Throws PreconditionError unless X has x1 > 0 at every DOF off the axis,
/// x1 = 0 at open-curve endpoints, and no zero-length element.
template <typename Scalar>
void check_admissible(const Curve<Scalar>& X) {
  const Grid& grid = X.grid();
  const int n = grid.dofs();
  for (int i = 0; i < n; ++i) {
    const bool boundary = !grid.closed() && (i == 0 || i == n - 1);
    const Scalar r = X.coords()(i, 0);
    if (boundary) {
      if (r != Scalar(0)) {
        throw PreconditionError("open curve endpoint " + std::to_string(i) + " is off the axis (x1 = " +
                                std::to_string(r) + ")");
      }
    } else if (!(r > Scalar(0))) {
      throw PreconditionError("x1 <= 0 at node " + std::to_string(i));
    }
  }
  for (int e = 0; e < grid.elements(); ++e) {
    const auto [a, b] = grid.element_dofs(e);
    if (!((X.coords().row(b) - X.coords().row(a)).squaredNorm() > Scalar(0))) {
      throw PreconditionError("zero-length element " + std::to_string(e));
    }
  }
}

template <typename Scalar = double>
struct StepConfigP {
  Scalar dt = 0;
  Forcing<Scalar> forcing;   ///< optional; adds (pi^h f(t_{m+1}), eta)
  bool verify_spd = true;    ///< check the LDL^T pivots of the assembled matrix
};

/// Assembled linear problem of one step: A X_k = rhs_k for k = 1, 2.
///
/// `matrix` = W/dt + S. `matrix_e1` is the matrix for the radial component;
/// on open grids its endpoint rows and columns are replaced by the identity.
template <typename Scalar = double>
struct StepSystemP {
  TridiagonalSystem<Scalar> mass;       ///< W, weight (X^m.e1)|X^m_rho|^2
  TridiagonalSystem<Scalar> stiffness;  ///< S, weight X^m.e1
  TridiagonalSystem<Scalar> matrix;
  TridiagonalSystem<Scalar> matrix_e1;
  Coords<Scalar> rhs;
};

namespace detail {

/// Adds a symmetric 2x2 element matrix into the (cyclic) tridiagonal slots.
template <typename Scalar>
void scatter(TridiagonalSystem<Scalar>& A, int a, int b, Scalar k00, Scalar k01, Scalar k11) {
  A.diag(a) += k00;
  A.diag(b) += k11;
  A.upper(a) += k01;
  A.lower(b) += k01;
}

/// (pi^h f, chi_i) for nodal forcing values, with the standard P1 mass matrix.
template <typename Scalar>
Coords<Scalar> forcing_load(const Grid& grid, const Forcing<Scalar>& f, Scalar t) {
  Coords<Scalar> load = Coords<Scalar>::Zero(grid.dofs(), 2);
  if (!f) return load;
  Coords<Scalar> nodal(grid.dofs(), 2);
  for (int i = 0; i < grid.dofs(); ++i) nodal.row(i) = f(grid.node<Scalar>(i), t).transpose();
  const Scalar h = grid.h<Scalar>();
  for (int e = 0; e < grid.elements(); ++e) {
    const auto [a, b] = grid.element_dofs(e);
    load.row(a) += h / 6 * (2 * nodal.row(a) + nodal.row(b));
    load.row(b) += h / 6 * (nodal.row(a) + 2 * nodal.row(b));
  }
  return load;
}

}  // namespace detail

template <typename Scalar>
StepSystemP<Scalar> assemble_step_p(const Curve<Scalar>& Xm, const StepConfigP<Scalar>& cfg, Scalar t_next) {
  if (!(cfg.dt > 0)) throw InvalidParameter("time step must be positive");
  check_admissible(Xm);
  const Grid& grid = Xm.grid();
  const int n = grid.dofs();
  const Scalar h = grid.h<Scalar>();
  const auto& rule = reference_rule<Scalar>();

  StepSystemP<Scalar> sys{TridiagonalSystem<Scalar>(n, grid.closed()), TridiagonalSystem<Scalar>(n, grid.closed()),
                          {}, {}, Coords<Scalar>::Zero(n, 2)};
  Vector<Scalar> g = Vector<Scalar>::Zero(n);
  for (int e = 0; e < grid.elements(); ++e) {
    const auto [a, b] = grid.element_dofs(e);
    const Scalar ra = Xm.coords()(a, 0), rb = Xm.coords()(b, 0);
    const Scalar s = (Xm.coords().row(b) - Xm.coords().row(a)).squaredNorm() / (h * h);
    Scalar m00 = 0, m01 = 0, m11 = 0, k = 0, g0 = 0, g1 = 0;
    for (int q = 0; q < rule.size(); ++q) {
      const Scalar xi = rule.points[q];
      const Scalar w = rule.weights[q] * h;
      const Scalar p0 = 1 - xi, p1 = xi;
      const Scalar r = ra * p0 + rb * p1;
      m00 += w * r * s * p0 * p0;
      m01 += w * r * s * p0 * p1;
      m11 += w * r * s * p1 * p1;
      k += w * r / (h * h);
      g0 += w * s * p0;
      g1 += w * s * p1;
    }
    detail::scatter(sys.mass, a, b, m00, m01, m11);
    detail::scatter(sys.stiffness, a, b, k, -k, k);
    g(a) += g0;
    g(b) += g1;
  }

  sys.matrix = TridiagonalSystem<Scalar>(n, grid.closed());
  sys.matrix.lower = sys.mass.lower / cfg.dt + sys.stiffness.lower;
  sys.matrix.diag = sys.mass.diag / cfg.dt + sys.stiffness.diag;
  sys.matrix.upper = sys.mass.upper / cfg.dt + sys.stiffness.upper;

  sys.rhs = sys.mass.multiply(Xm.coords()) / cfg.dt;
  sys.rhs.col(0) -= g;
  sys.rhs += detail::forcing_load(grid, cfg.forcing, t_next);

  sys.matrix_e1 = sys.matrix;
  if (!grid.closed()) {
    // X.e1 = 0 at both endpoints: identity rows, eliminated columns.
    auto& A = sys.matrix_e1;
    A.diag(0) = 1;
    A.upper(0) = 0;
    A.lower(1) = 0;
    A.diag(n - 1) = 1;
    A.lower(n - 1) = 0;
    A.upper(n - 2) = 0;
    sys.rhs(0, 0) = 0;
    sys.rhs(n - 1, 0) = 0;
  }
  return sys;
}

/// One step of the linear scheme: returns X^{m+1}.
template <typename Scalar>
Curve<Scalar> step_p(const Curve<Scalar>& Xm, const StepConfigP<Scalar>& cfg, Scalar t_next) {
  const StepSystemP<Scalar> sys = assemble_step_p(Xm, cfg, t_next);
  if (cfg.verify_spd) {
    const Scalar pivot = min_ldl_pivot(sys.matrix);
    if (!(pivot > 0)) throw SingularSystem("step matrix is not positive definite (min pivot " + std::to_string(pivot) + ")");
  }
  Coords<Scalar> next(Xm.dofs(), 2);
  if (Xm.grid().closed()) {
    next = solve(sys.matrix, sys.rhs);
  } else {
    next.col(0) = solve(sys.matrix_e1, sys.rhs.col(0));
    next.col(1) = solve(sys.matrix, sys.rhs.col(1));
    next(0, 0) = 0;
    next(Xm.dofs() - 1, 0) = 0;
  }
  return Curve<Scalar>(Xm.grid(), std::move(next));
}

}  // namespace axmcf
