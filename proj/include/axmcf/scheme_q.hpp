#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "axmcf/banded.hpp"
#include "axmcf/fe_space.hpp"
#include "axmcf/newton.hpp"
#include "axmcf/scheme_p.hpp"

namespace axmcf {

/// ClosedStandard: the scheme on all of [V^h]^2 over a periodic grid.
/// OpenAdapted: the same forms restricted to X.e1 = 0 at open-curve endpoints.
enum class BoundaryVariant { ClosedStandard, OpenAdapted };

template <typename Scalar = double>
struct StepConfigQ {
  Scalar dt = 0;
  Scalar newton_tol = Scalar(1e-12);
  int newton_max_iter = 20;
  int max_halvings = 10;
  Forcing<Scalar> forcing;
  BoundaryVariant boundary_variant = BoundaryVariant::ClosedStandard;
};

/// Coefficient vector ordering: DOF-major, (i, k) -> 2 i + k.
template <typename Scalar>
Vector<Scalar> flatten(const Coords<Scalar>& x) {
  Vector<Scalar> v(2 * x.rows());
  for (int i = 0; i < x.rows(); ++i) v.template segment<2>(2 * i) = x.row(i).transpose();
  return v;
}

template <typename Scalar, typename Derived>
Coords<Scalar> unflatten(const Eigen::MatrixBase<Derived>& v) {
  Coords<Scalar> x(v.size() / 2, 2);
  for (int i = 0; i < x.rows(); ++i) x.row(i) = v.template segment<2>(2 * i).transpose();
  return x;
}

namespace detail {

template <typename Scalar>
void check_variant(const Grid& grid, BoundaryVariant variant) {
  if (variant == BoundaryVariant::ClosedStandard && !grid.closed()) {
    throw UnsupportedTopology("the standard nonlinear scheme is only defined for closed curves");
  }
  if (variant == BoundaryVariant::OpenAdapted && grid.closed()) {
    throw UnsupportedTopology("the adapted nonlinear scheme needs an open curve");
  }
}

/// Residual level reachable in floating point, from the summed magnitudes of
/// the individual contributions.
template <typename Scalar>
Scalar roundoff_floor(const Vector<Scalar>& magnitude) {
  return 4 * std::numeric_limits<Scalar>::epsilon() * magnitude.norm();
}

/// Residual and (optionally) Jacobian of the nonlinear step, assembled together.
template <typename Scalar>
Vector<Scalar> assemble_q(const Curve<Scalar>& Xm, const Coords<Scalar>& X, const StepConfigQ<Scalar>& cfg,
                          Scalar t_next, BlockTridiagonalSystem<Scalar, 2>* jac,
                          Vector<Scalar>* magnitude = nullptr) {
  using Block = Eigen::Matrix<Scalar, 2, 2>;
  const Grid& grid = Xm.grid();
  const int n = grid.dofs();
  const Scalar h = grid.h<Scalar>();
  const Scalar inv_dt = 1 / cfg.dt;
  const auto& rule = reference_rule<Scalar>();
  const Coords<Scalar>& Y = Xm.coords();

  Vector<Scalar> res = Vector<Scalar>::Zero(2 * n);
  if (jac) *jac = BlockTridiagonalSystem<Scalar, 2>(n, grid.closed());
  if (magnitude) *magnitude = Vector<Scalar>::Zero(2 * n);

  for (int e = 0; e < grid.elements(); ++e) {
    const auto [a, b] = grid.element_dofs(e);
    const int node[2] = {a, b};
    const Scalar sm = (Y.row(b) - Y.row(a)).squaredNorm() / (h * h);
    const Point<Scalar> slope = (X.row(b) - X.row(a)).transpose() / h;
    const Scalar s = slope.squaredNorm();
    const Point<Scalar> slope_round = (X.row(a).cwiseAbs() + X.row(b).cwiseAbs()).transpose() / h;
    const Scalar dphi[2] = {-1 / h, 1 / h};
    Block K[2][2] = {{Block::Zero(), Block::Zero()}, {Block::Zero(), Block::Zero()}};
    Point<Scalar> R[2] = {Point<Scalar>::Zero(), Point<Scalar>::Zero()};

    for (int q = 0; q < rule.size(); ++q) {
      const Scalar xi = rule.points[q];
      const Scalar w = rule.weights[q] * h;
      const Scalar phi[2] = {1 - xi, xi};
      const Scalar rm = Y(a, 0) * phi[0] + Y(b, 0) * phi[1];
      const Scalar wm = rm * rm;
      const Point<Scalar> Xq = (X.row(a) * phi[0] + X.row(b) * phi[1]).transpose();
      const Point<Scalar> Ymq = (Y.row(a) * phi[0] + Y.row(b) * phi[1]).transpose();
      for (int i = 0; i < 2; ++i) {
        R[i] += w * (wm * sm * inv_dt * phi[i] * (Xq - Ymq) + wm * dphi[i] * slope);
        R[i](0) += w * Xq(0) * phi[i] * s;
        if (magnitude) {
          auto m = magnitude->template segment<2>(2 * node[i]);
          m += w * (wm * sm * inv_dt * phi[i] * (Xq.cwiseAbs() + Ymq.cwiseAbs()) +
                    wm * std::abs(dphi[i]) * slope_round);
          m(0) += w * std::abs(Xq(0)) * phi[i] * 2 * slope.cwiseAbs().dot(slope_round);
        }
        if (!jac) continue;
        for (int l = 0; l < 2; ++l) {
          const Scalar lin = w * (wm * sm * inv_dt * phi[i] * phi[l] + wm * dphi[i] * dphi[l]);
          K[i][l](0, 0) += lin + w * phi[l] * phi[i] * s;
          K[i][l](1, 1) += lin;
          K[i][l](0, 0) += w * 2 * Xq(0) * phi[i] * slope(0) * dphi[l];
          K[i][l](0, 1) += w * 2 * Xq(0) * phi[i] * slope(1) * dphi[l];
        }
      }
    }
    for (int i = 0; i < 2; ++i) res.template segment<2>(2 * node[i]) += R[i];
    if (jac) {
      jac->diag[a] += K[0][0];
      jac->upper[a] += K[0][1];
      jac->lower[b] += K[1][0];
      jac->diag[b] += K[1][1];
    }
  }

  if (cfg.forcing) res -= flatten<Scalar>(forcing_load(grid, cfg.forcing, t_next));

  if (cfg.boundary_variant == BoundaryVariant::OpenAdapted) {
    for (int i : {0, n - 1}) {
      res(2 * i) = X(i, 0);
      if (jac) {
        jac->diag[i].row(0).setZero();
        jac->lower[i].row(0).setZero();
        jac->upper[i].row(0).setZero();
        jac->diag[i](0, 0) = 1;
      }
    }
  }
  return res;
}

}  // namespace detail

/// Residual of the nonlinear step at the candidate X^{m+1} = Xnext, tested
/// with every chi_i e_k (forcing subtracted).
template <typename Scalar>
Vector<Scalar> residual_q(const Curve<Scalar>& Xm, const Curve<Scalar>& Xnext, const StepConfigQ<Scalar>& cfg,
                          Scalar t_next) {
  detail::check_variant<Scalar>(Xm.grid(), cfg.boundary_variant);
  return detail::assemble_q<Scalar>(Xm, Xnext.coords(), cfg, t_next, nullptr);
}

/// Analytic Jacobian of residual_q with respect to Xnext (2x2-block, cyclic
/// on closed grids).
template <typename Scalar>
BlockTridiagonalSystem<Scalar, 2> jacobian_q(const Curve<Scalar>& Xm, const Curve<Scalar>& Xnext,
                                             const StepConfigQ<Scalar>& cfg, Scalar t_next) {
  detail::check_variant<Scalar>(Xm.grid(), cfg.boundary_variant);
  BlockTridiagonalSystem<Scalar, 2> jac;
  detail::assemble_q<Scalar>(Xm, Xnext.coords(), cfg, t_next, &jac);
  return jac;
}

/// One step of the nonlinear scheme by damped Newton from X^m.
/// Throws NewtonFailure if the iteration does not converge.
template <typename Scalar>
std::pair<Curve<Scalar>, NewtonReport<Scalar>> step_q(const Curve<Scalar>& Xm, const StepConfigQ<Scalar>& cfg,
                                                      Scalar t_next) {
  if (!(cfg.dt > 0)) throw InvalidParameter("time step must be positive");
  if (!(cfg.newton_tol > 0) || cfg.newton_max_iter < 1) throw InvalidParameter("Newton tolerances must be positive");
  detail::check_variant<Scalar>(Xm.grid(), cfg.boundary_variant);
  check_admissible(Xm);

  auto residual = [&](const Vector<Scalar>& v) {
    return detail::assemble_q<Scalar>(Xm, unflatten<Scalar>(v), cfg, t_next, nullptr);
  };
  auto newton_step = [&](const Vector<Scalar>& v, const Vector<Scalar>& r) {
    BlockTridiagonalSystem<Scalar, 2> jac;
    detail::assemble_q<Scalar>(Xm, unflatten<Scalar>(v), cfg, t_next, &jac);
    const Vector<Scalar> minus_r = -r;
    return solve_block_tridiag(jac, minus_r);
  };
  Vector<Scalar> magnitude;
  detail::assemble_q<Scalar>(Xm, Xm.coords(), cfg, t_next, nullptr, &magnitude);
  NewtonOptions<Scalar> opts{cfg.newton_tol, cfg.newton_max_iter, cfg.max_halvings,
                             detail::roundoff_floor(magnitude)};
  auto [v, report] = damped_newton<Scalar>(flatten(Xm.coords()), residual, newton_step, opts);
  if (!report.converged) {
    throw NewtonFailure<Scalar>("nonlinear step did not converge (residual " + std::to_string(report.final_residual) +
                                    " after " + std::to_string(report.iterations) + " iterations)",
                                report);
  }
  Coords<Scalar> next = unflatten<Scalar>(v);
  if (cfg.boundary_variant == BoundaryVariant::OpenAdapted) {
    next(0, 0) = 0;
    next(next.rows() - 1, 0) = 0;
  }
  return {Curve<Scalar>(Xm.grid(), std::move(next)), std::move(report)};
}

/// 1/2 ((X.e1)^2, |X_rho|^2), integrated exactly.
template <typename Scalar>
Scalar energy_q(const Curve<Scalar>& X) {
  const Grid& grid = X.grid();
  const Scalar h = grid.h<Scalar>();
  Scalar E = 0;
  for (int e = 0; e < grid.elements(); ++e) {
    const auto [a, b] = grid.element_dofs(e);
    const Scalar ra = X.coords()(a, 0), rb = X.coords()(b, 0);
    const Scalar s = (X.coords().row(b) - X.coords().row(a)).squaredNorm() / (h * h);
    E += s * h * (ra * ra + ra * rb + rb * rb) / 3;
  }
  return E / 2;
}

/// dt ((X^m.e1)^2 |D_t X^{m+1}|^2, |X^m_rho|^2), the dissipation of one step.
template <typename Scalar>
Scalar dissipation_q(const Curve<Scalar>& Xm, const Curve<Scalar>& Xnext, Scalar dt) {
  const Grid& grid = Xm.grid();
  const Scalar h = grid.h<Scalar>();
  const auto& rule = reference_rule<Scalar>();
  const Coords<Scalar> D = Xnext.coords() - Xm.coords();
  Scalar sum = 0;
  for (int e = 0; e < grid.elements(); ++e) {
    const auto [a, b] = grid.element_dofs(e);
    const Scalar sm = (Xm.coords().row(b) - Xm.coords().row(a)).squaredNorm() / (h * h);
    for (int q = 0; q < rule.size(); ++q) {
      const Scalar xi = rule.points[q];
      const Scalar rm = Xm.coords()(a, 0) * (1 - xi) + Xm.coords()(b, 0) * xi;
      const Scalar d2 = (D.row(a) * (1 - xi) + D.row(b) * xi).squaredNorm();
      sum += rule.weights[q] * h * rm * rm * d2 * sm;
    }
  }
  return sum / dt;
}

/// energy(X^{m+1}) + dissipation - energy(X^m); non-positive for every
/// unforced step of the nonlinear scheme.
template <typename Scalar>
Scalar stability_defect(const Curve<Scalar>& Xm, const Curve<Scalar>& Xnext, Scalar dt) {
  return energy_q(Xnext) + dissipation_q(Xm, Xnext, dt) - energy_q(Xm);
}

}  // namespace axmcf
