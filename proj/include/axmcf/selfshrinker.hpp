#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <utility>

#include "axmcf/banded.hpp"
#include "axmcf/fe_space.hpp"
#include "axmcf/newton.hpp"
#include "axmcf/scheme_q.hpp"

namespace axmcf {

/// Coefficients of the self-shrinker residual, split by their dependence on
/// the shrinking rate: residual(alpha) = a / (2 alpha) + b, tested with every
/// chi_i e_k (ordering 2 i + k).
template <typename Scalar = double>
struct SelfsimResidualSplit {
  Vector<Scalar> a;
  Vector<Scalar> b;

  Vector<Scalar> residual(Scalar alpha) const { return a / (2 * alpha) + b; }
};

template <typename Scalar = double>
struct GoodnessResult {
  Scalar G = 0;
  std::optional<Scalar> alpha_star;  ///< empty when the infimum sits at alpha -> infinity
  SelfsimResidualSplit<Scalar> split;
};

namespace detail {

inline void require_closed(const Grid& grid) {
  if (!grid.closed()) throw UnsupportedTopology("self-shrinker residual is defined for closed curves only");
}

/// Assembles a, b and optionally the Jacobians of a and b (same block layout
/// as the nonlinear step).
template <typename Scalar>
SelfsimResidualSplit<Scalar> assemble_selfsim(const Curve<Scalar>& Z, BlockTridiagonalSystem<Scalar, 2>* jac_a,
                                              BlockTridiagonalSystem<Scalar, 2>* jac_b,
                                              Vector<Scalar>* magnitude = nullptr) {
  using Block = Eigen::Matrix<Scalar, 2, 2>;
  const Grid& grid = Z.grid();
  const int n = grid.dofs();
  const Scalar h = grid.h<Scalar>();
  const auto& rule = reference_rule<Scalar>();
  const Coords<Scalar>& X = Z.coords();
  SelfsimResidualSplit<Scalar> split{Vector<Scalar>::Zero(2 * n), Vector<Scalar>::Zero(2 * n)};
  if (jac_a) *jac_a = BlockTridiagonalSystem<Scalar, 2>(n, true);
  if (jac_b) *jac_b = BlockTridiagonalSystem<Scalar, 2>(n, true);
  if (magnitude) *magnitude = Vector<Scalar>::Zero(2 * n);

  for (int e = 0; e < grid.elements(); ++e) {
    const auto [a, b] = grid.element_dofs(e);
    const int node[2] = {a, b};
    const Point<Scalar> slope = (X.row(b) - X.row(a)).transpose() / h;
    const Scalar s = slope.squaredNorm();
    const Scalar dphi[2] = {-1 / h, 1 / h};
    Block Ka[2][2], Kb[2][2];
    for (auto& row : Ka) row[0] = row[1] = Block::Zero();
    for (auto& row : Kb) row[0] = row[1] = Block::Zero();

    for (int q = 0; q < rule.size(); ++q) {
      const Scalar xi = rule.points[q];
      const Scalar w = rule.weights[q] * h;
      const Scalar phi[2] = {1 - xi, xi};
      const Point<Scalar> Zq = (X.row(a) * phi[0] + X.row(b) * phi[1]).transpose();
      const Scalar r = Zq(0);
      for (int i = 0; i < 2; ++i) {
        auto ai = split.a.template segment<2>(2 * node[i]);
        auto bi = split.b.template segment<2>(2 * node[i]);
        ai += w * r * s * phi[i] * Zq;
        bi -= w * r * dphi[i] * slope;
        bi(0) -= w * phi[i] * s;
        if (magnitude) {
          auto m = magnitude->template segment<2>(2 * node[i]);
          // slopes carry the rounding of a nodal difference divided by h
          const Point<Scalar> slope_err = (X.row(a).cwiseAbs() + X.row(b).cwiseAbs()).transpose() / h;
          m += w * std::abs(r) * s * phi[i] * Zq.cwiseAbs() + w * std::abs(r * dphi[i]) * slope_err;
          m(0) += w * phi[i] * s;
        }
        for (int l = 0; l < 2; ++l) {
          if (jac_a) {
            Block& K = Ka[i][l];
            // d/dZ_(l,m) of  r Z_k phi_i s
            K(0, 0) += w * phi[l] * Zq(0) * phi[i] * s;
            K(1, 0) += w * phi[l] * Zq(1) * phi[i] * s;
            K(0, 0) += w * r * phi[l] * phi[i] * s;
            K(1, 1) += w * r * phi[l] * phi[i] * s;
            for (int m = 0; m < 2; ++m) {
              for (int k = 0; k < 2; ++k) K(k, m) += w * r * Zq(k) * phi[i] * 2 * slope(m) * dphi[l];
            }
          }
          if (jac_b) {
            Block& K = Kb[i][l];
            // d/dZ_(l,m) of  -r Z_rho,k dphi_i - delta_k0 phi_i s
            for (int k = 0; k < 2; ++k) K(k, 0) -= w * phi[l] * slope(k) * dphi[i];
            K(0, 0) -= w * r * dphi[l] * dphi[i];
            K(1, 1) -= w * r * dphi[l] * dphi[i];
            for (int m = 0; m < 2; ++m) K(0, m) -= w * phi[i] * 2 * slope(m) * dphi[l];
          }
        }
      }
    }
    if (jac_a) {
      jac_a->diag[a] += Ka[0][0];
      jac_a->upper[a] += Ka[0][1];
      jac_a->lower[b] += Ka[1][0];
      jac_a->diag[b] += Ka[1][1];
    }
    if (jac_b) {
      jac_b->diag[a] += Kb[0][0];
      jac_b->upper[a] += Kb[0][1];
      jac_b->lower[b] += Kb[1][0];
      jac_b->diag[b] += Kb[1][1];
    }
  }
  return split;
}

/// Consistent P1 mass matrix on a closed grid.
template <typename Scalar>
TridiagonalSystem<Scalar> mass_matrix(const Grid& grid) {
  const int n = grid.dofs();
  const Scalar h = grid.h<Scalar>();
  TridiagonalSystem<Scalar> M(n, grid.closed());
  M.diag.setConstant(4 * h / 6);
  M.lower.setConstant(h / 6);
  M.upper.setConstant(h / 6);
  if (!grid.closed()) {
    M.diag(0) = M.diag(n - 1) = 2 * h / 6;
  }
  return M;
}

/// r^T M^{-1} s for coefficient vectors in the 2 i + k layout.
template <typename Scalar>
Scalar dual_inner(const TridiagonalSystem<Scalar>& M, const Vector<Scalar>& r, const Vector<Scalar>& s) {
  const Coords<Scalar> R = unflatten<Scalar>(r);
  const Coords<Scalar> Y = solve(M, unflatten<Scalar>(s));
  return (R.array() * Y.array()).sum();
}

}  // namespace detail

template <typename Scalar>
SelfsimResidualSplit<Scalar> selfsim_split(const Curve<Scalar>& Z) {
  detail::require_closed(Z.grid());
  return detail::assemble_selfsim<Scalar>(Z, nullptr, nullptr);
}

/// |F^h_alpha(Z)|_0: L2 norm of the Riesz representative of the residual.
template <typename Scalar>
Scalar fnorm_selfsim(const Curve<Scalar>& Z, Scalar alpha) {
  if (!(alpha > 0)) throw InvalidParameter("alpha must be positive");
  const auto split = selfsim_split(Z);
  const auto M = detail::mass_matrix<Scalar>(Z.grid());
  const Vector<Scalar> r = split.residual(alpha);
  return std::sqrt(std::max(Scalar(0), detail::dual_inner(M, r, r)));
}

/// Scale-invariant self-similarity goodness: min over alpha of
/// |F^h_alpha(Z)|_0 / (1, |Z_rho|^2), minimized in closed form in 1/(2 alpha).
template <typename Scalar>
GoodnessResult<Scalar> goodness(const Curve<Scalar>& Z) {
  GoodnessResult<Scalar> result;
  result.split = selfsim_split(Z);
  const auto& a = result.split.a;
  const auto& b = result.split.b;
  const auto M = detail::mass_matrix<Scalar>(Z.grid());

  const auto ed = element_data(Z);
  const Scalar length_scale = Z.grid().template h<Scalar>() * ed.speed2.sum();

  const Scalar aa = detail::dual_inner(M, a, a);
  Vector<Scalar> best = b;
  if (aa > 0) {
    const Scalar beta = -detail::dual_inner(M, a, b) / aa;
    if (beta > 0) {
      best = beta * a + b;
      result.alpha_star = 1 / (2 * beta);
    }
  }
  result.G = std::sqrt(std::max(Scalar(0), detail::dual_inner(M, best, best))) / length_scale;
  return result;
}

/// Solves F^h_{T0}(Y) = 0 by damped Newton from `init`. Corrections are
/// capped at a quarter of the initial curve's extent before backtracking.
template <typename Scalar>
std::pair<Curve<Scalar>, NewtonReport<Scalar>> solve_angenent(const Grid& grid, Scalar T0, const Curve<Scalar>& init,
                                                              int max_iterations = 50) {
  detail::require_closed(grid);
  if (!(T0 > 0)) throw InvalidParameter("T0 must be positive");
  if (!(init.grid() == grid)) throw InvalidParameter("initial curve lives on a different grid");
  check_admissible(init);
  const Scalar beta = 1 / (2 * T0);

  auto residual = [&](const Vector<Scalar>& v) {
    const auto split = detail::assemble_selfsim<Scalar>(Curve<Scalar>(grid, unflatten<Scalar>(v)), nullptr, nullptr);
    return Vector<Scalar>(beta * split.a + split.b);
  };
  auto newton_step = [&](const Vector<Scalar>& v, const Vector<Scalar>& r) {
    BlockTridiagonalSystem<Scalar, 2> ja, jb;
    detail::assemble_selfsim<Scalar>(Curve<Scalar>(grid, unflatten<Scalar>(v)), &ja, &jb);
    for (int i = 0; i < ja.size(); ++i) {
      ja.diag[i] = beta * ja.diag[i] + jb.diag[i];
      ja.lower[i] = beta * ja.lower[i] + jb.lower[i];
      ja.upper[i] = beta * ja.upper[i] + jb.upper[i];
    }
    // near the root the tangential mode makes the last pivot tiny but usable
    const Vector<Scalar> minus_r = -r;
    const Scalar eps = std::numeric_limits<Scalar>::epsilon();
    Vector<Scalar> d = solve_block_tridiag(ja, minus_r, eps * eps);
    for (int k = 0; k < 2; ++k) {
      const Vector<Scalar> defect = minus_r - ja.multiply(d);
      d += solve_block_tridiag(ja, defect, eps * eps);
    }
    return d;
  };

  Vector<Scalar> magnitude;
  detail::assemble_selfsim<Scalar>(init, nullptr, nullptr, &magnitude);
  const Scalar extent = (init.coords().colwise().maxCoeff() - init.coords().colwise().minCoeff()).maxCoeff();
  NewtonOptions<Scalar> opts{Scalar(1e-12), max_iterations, 10, detail::roundoff_floor(magnitude), extent / 4};
  auto [v, report] = damped_newton<Scalar>(flatten(init.coords()), residual, newton_step, opts);
  if (!report.converged) {
    throw NewtonFailure<Scalar>("self-shrinker Newton iteration did not converge (residual " +
                                    std::to_string(report.final_residual) + ")",
                                report);
  }
  return {Curve<Scalar>(grid, unflatten<Scalar>(v)), std::move(report)};
}

/// Inserts the midpoint of every element (closed curves): J -> 2J.
template <typename Scalar>
Curve<Scalar> refine(const Curve<Scalar>& X) {
  detail::require_closed(X.grid());
  const Grid fine(2 * X.grid().elements(), Topology::Closed);
  Coords<Scalar> x(fine.dofs(), 2);
  for (int e = 0; e < X.grid().elements(); ++e) {
    const auto [a, b] = X.grid().element_dofs(e);
    x.row(2 * e) = X.coords().row(a);
    x.row(2 * e + 1) = (X.coords().row(a) + X.coords().row(b)) / 2;
  }
  return Curve<Scalar>(fine, std::move(x));
}

}  // namespace axmcf
