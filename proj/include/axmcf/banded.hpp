#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "axmcf/errors.hpp"

namespace axmcf {

/// Scalar (cyclic) tridiagonal matrix.
///
/// Row i reads lower(i) x(i-1) + diag(i) x(i) + upper(i) x(i+1). For cyclic
/// systems the indices wrap, so lower(0) = A(0,n-1) and upper(n-1) = A(n-1,0)
/// are the corner entries; non-cyclic systems ignore those two slots.
template <typename Scalar = double>
struct TridiagonalSystem {
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  Vec lower;
  Vec diag;
  Vec upper;
  bool cyclic = false;

  TridiagonalSystem() = default;
  TridiagonalSystem(int n, bool is_cyclic)
      : lower(Vec::Zero(n)), diag(Vec::Zero(n)), upper(Vec::Zero(n)), cyclic(is_cyclic) {}

  int size() const noexcept { return static_cast<int>(diag.size()); }

  template <typename Derived>
  Mat multiply(const Eigen::MatrixBase<Derived>& x) const {
    const int n = size();
    Mat y(n, x.cols());
    for (int i = 0; i < n; ++i) {
      y.row(i) = diag(i) * x.row(i);
      if (i > 0) y.row(i) += lower(i) * x.row(i - 1);
      else if (cyclic) y.row(i) += lower(0) * x.row(n - 1);
      if (i + 1 < n) y.row(i) += upper(i) * x.row(i + 1);
      else if (cyclic) y.row(i) += upper(n - 1) * x.row(0);
    }
    return y;
  }

  Mat to_dense() const {
    const int n = size();
    Mat A = Mat::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      A(i, i) += diag(i);
      if (i > 0) A(i, i - 1) += lower(i);
      else if (cyclic) A(0, n - 1) += lower(0);
      if (i + 1 < n) A(i, i + 1) += upper(i);
      else if (cyclic) A(n - 1, 0) += upper(n - 1);
    }
    return A;
  }

  Scalar inf_norm() const {
    Scalar m = 0;
    for (int i = 0; i < size(); ++i) {
      const bool has_lower = i > 0 || cyclic;
      const bool has_upper = i + 1 < size() || cyclic;
      m = std::max(m, std::abs(diag(i)) + (has_lower ? std::abs(lower(i)) : Scalar(0)) +
                          (has_upper ? std::abs(upper(i)) : Scalar(0)));
    }
    return m;
  }
};

namespace detail {

template <typename Scalar>
Scalar pivot_floor(Scalar scale) {
  return Scalar(64) * std::numeric_limits<Scalar>::epsilon() * (scale > 0 ? scale : Scalar(1));
}

/// Thomas algorithm over the non-wrapping part of sys, with optional
/// overrides of the first and last diagonal entries.
template <typename Scalar, typename Derived>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> thomas(const TridiagonalSystem<Scalar>& sys, Scalar diag_first,
                                                             Scalar diag_last, const Eigen::MatrixBase<Derived>& rhs) {
  const int n = sys.size();
  const Scalar floor = pivot_floor(sys.inf_norm());
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> c(n);
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> x = rhs;
  auto diag_at = [&](int i) { return i == 0 ? diag_first : (i == n - 1 ? diag_last : sys.diag(i)); };

  Scalar pivot = diag_at(0);
  if (n == 1) pivot = diag_first;
  if (std::abs(pivot) <= floor) throw SingularSystem("zero pivot at row 0");
  c(0) = n > 1 ? sys.upper(0) / pivot : Scalar(0);
  x.row(0) /= pivot;
  for (int i = 1; i < n; ++i) {
    pivot = diag_at(i) - sys.lower(i) * c(i - 1);
    if (std::abs(pivot) <= floor) throw SingularSystem("zero pivot at row " + std::to_string(i));
    c(i) = i + 1 < n ? sys.upper(i) / pivot : Scalar(0);
    x.row(i) = (x.row(i) - sys.lower(i) * x.row(i - 1)) / pivot;
  }
  for (int i = n - 2; i >= 0; --i) x.row(i) -= c(i) * x.row(i + 1);
  return x;
}

}  // namespace detail

/// Solves a non-cyclic tridiagonal system for one or more right-hand sides.
template <typename Scalar, typename Derived>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> solve_tridiag(const TridiagonalSystem<Scalar>& sys,
                                                                    const Eigen::MatrixBase<Derived>& rhs) {
  const int n = sys.size();
  if (n == 0 || rhs.rows() != n) throw InvalidParameter("tridiagonal system and right-hand side sizes differ");
  return detail::thomas(sys, sys.diag(0), sys.diag(n - 1), rhs);
}

/// Solves a cyclic tridiagonal system by a rank-1 (Sherman-Morrison) corner
/// correction of the Thomas factorization.
template <typename Scalar, typename Derived>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> solve_cyclic_tridiag(const TridiagonalSystem<Scalar>& sys,
                                                                           const Eigen::MatrixBase<Derived>& rhs) {
  const int n = sys.size();
  if (n < 3) throw InvalidParameter("cyclic tridiagonal system needs n >= 3");
  if (rhs.rows() != n) throw InvalidParameter("tridiagonal system and right-hand side sizes differ");
  const Scalar alpha = sys.upper(n - 1);  // A(n-1, 0)
  const Scalar beta = sys.lower(0);       // A(0, n-1)
  if (alpha == Scalar(0) && beta == Scalar(0)) {
    return detail::thomas(sys, sys.diag(0), sys.diag(n - 1), rhs);
  }
  const Scalar gamma = sys.diag(0) != Scalar(0) ? -sys.diag(0) : Scalar(-1);
  const Scalar d0 = sys.diag(0) - gamma;
  const Scalar dn = sys.diag(n - 1) - alpha * beta / gamma;

  auto y = detail::thomas(sys, d0, dn, rhs);
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> u = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(n);
  u(0) = gamma;
  u(n - 1) = alpha;
  const auto z = detail::thomas(sys, d0, dn, u);
  const Scalar vz = z(0, 0) + beta / gamma * z(n - 1, 0);
  const Scalar denom = 1 + vz;
  if (std::abs(denom) <= detail::pivot_floor(Scalar(1))) throw SingularSystem("singular cyclic correction");
  for (int k = 0; k < y.cols(); ++k) {
    const Scalar vy = y(0, k) + beta / gamma * y(n - 1, k);
    y.col(k) -= (vy / denom) * z.col(0);
  }
  return y;
}

/// Dispatches on sys.cyclic.
template <typename Scalar, typename Derived>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> solve(const TridiagonalSystem<Scalar>& sys,
                                                            const Eigen::MatrixBase<Derived>& rhs) {
  return sys.cyclic ? solve_cyclic_tridiag(sys, rhs) : solve_tridiag(sys, rhs);
}

/// Block (cyclic) tridiagonal matrix with B x B blocks; same index convention
/// as TridiagonalSystem, blockwise.
template <typename Scalar = double, int B = 2>
struct BlockTridiagonalSystem {
  using Block = Eigen::Matrix<Scalar, B, B>;
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  std::vector<Block> lower;
  std::vector<Block> diag;
  std::vector<Block> upper;
  bool cyclic = false;

  BlockTridiagonalSystem() = default;
  BlockTridiagonalSystem(int n, bool is_cyclic)
      : lower(n, Block::Zero()), diag(n, Block::Zero()), upper(n, Block::Zero()), cyclic(is_cyclic) {}

  int size() const noexcept { return static_cast<int>(diag.size()); }

  Vec multiply(const Vec& x) const {
    const int n = size();
    Vec y = Vec::Zero(n * B);
    for (int i = 0; i < n; ++i) {
      auto yi = y.template segment<B>(i * B);
      yi += diag[i] * x.template segment<B>(i * B);
      if (i > 0) yi += lower[i] * x.template segment<B>((i - 1) * B);
      else if (cyclic) yi += lower[0] * x.template segment<B>((n - 1) * B);
      if (i + 1 < n) yi += upper[i] * x.template segment<B>((i + 1) * B);
      else if (cyclic) yi += upper[n - 1] * x.template segment<B>(0);
    }
    return y;
  }

  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> to_dense() const {
    const int n = size();
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> A =
        Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(n * B, n * B);
    for (int i = 0; i < n; ++i) {
      A.template block<B, B>(i * B, i * B) += diag[i];
      if (i > 0) A.template block<B, B>(i * B, (i - 1) * B) += lower[i];
      else if (cyclic) A.template block<B, B>(0, (n - 1) * B) += lower[0];
      if (i + 1 < n) A.template block<B, B>(i * B, (i + 1) * B) += upper[i];
      else if (cyclic) A.template block<B, B>((n - 1) * B, 0) += upper[n - 1];
    }
    return A;
  }
};

/// Result of block elimination: the solution and the smallest |pivot| seen
/// (for B = 1 the signed minimum, which are the LDL^T pivots of a symmetric A).
template <typename Scalar>
struct BlockSolveResult {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x;
  Scalar min_pivot;
};

namespace detail {

template <typename Scalar, int B>
Scalar block_pivot_measure(const Eigen::Matrix<Scalar, B, B>& D) {
  if constexpr (B == 1) {
    return D(0, 0);
  } else {
    // smallest singular value bound via |det| / max column norm
    const Scalar cn = D.colwise().norm().maxCoeff();
    return cn > 0 ? std::abs(D.determinant()) / cn : Scalar(0);
  }
}

}  // namespace detail

/// Block Gaussian elimination in natural order, bordered by the last block
/// column to absorb the cyclic corners. No pivoting across block rows; the
/// 2x2 pivots are factored with partial pivoting. A pivot whose measure is at
/// most relative_floor times the largest entry counts as singular.
template <typename Scalar, int B>
BlockSolveResult<Scalar> solve_block_tridiag_checked(
    const BlockTridiagonalSystem<Scalar, B>& sys, const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& rhs,
    Scalar relative_floor = 64 * std::numeric_limits<Scalar>::epsilon()) {
  using Block = Eigen::Matrix<Scalar, B, B>;
  using Seg = Eigen::Matrix<Scalar, B, 1>;
  using LU = Eigen::PartialPivLU<Block>;
  const int n = sys.size();
  if (n < 1 || rhs.size() != n * B) throw InvalidParameter("block system and right-hand side sizes differ");
  if (sys.cyclic && n < 3) throw InvalidParameter("cyclic block system needs n >= 3");

  Scalar scale = 0;
  for (int i = 0; i < n; ++i) {
    scale = std::max({scale, sys.diag[i].cwiseAbs().maxCoeff(), sys.lower[i].cwiseAbs().maxCoeff(),
                      sys.upper[i].cwiseAbs().maxCoeff()});
  }
  const Scalar floor = relative_floor * (scale > 0 ? scale : Scalar(1));
  Scalar min_pivot = std::numeric_limits<Scalar>::max();

  auto factor = [&](const Block& D, int row) {
    const Scalar measure = detail::block_pivot_measure<Scalar, B>(D);
    if constexpr (B == 1) {
      min_pivot = std::min(min_pivot, measure);
      if (std::abs(measure) <= floor) throw SingularSystem("zero pivot at block row " + std::to_string(row));
    } else {
      min_pivot = std::min(min_pivot, measure);
      if (measure <= floor) throw SingularSystem("singular pivot block at row " + std::to_string(row));
    }
    return LU(D);
  };

  if (!sys.cyclic || n == 1) {
    std::vector<LU> piv;
    piv.reserve(n);
    std::vector<Block> C(n);
    std::vector<Seg> y(n);
    Block D = sys.diag[0];
    Seg b = rhs.template segment<B>(0);
    for (int i = 0; i < n; ++i) {
      if (i > 0) {
        const Block G = sys.lower[i];
        D = sys.diag[i] - G * C[i - 1];
        b = rhs.template segment<B>(i * B) - G * y[i - 1];
      }
      piv.push_back(factor(D, i));
      C[i] = i + 1 < n ? Block(piv[i].solve(sys.upper[i])) : Block::Zero();
      y[i] = piv[i].solve(b);
    }
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x(n * B);
    x.template segment<B>((n - 1) * B) = y[n - 1];
    for (int i = n - 2; i >= 0; --i) {
      x.template segment<B>(i * B) = y[i] - C[i] * x.template segment<B>((i + 1) * B);
    }
    return {std::move(x), min_pivot};
  }

  // Cyclic: rows 0..n-2 carry a fill-in column E coupling to x_{n-1}.
  const int last = n - 1;
  std::vector<LU> piv;
  piv.reserve(last);
  std::vector<Block> C(last), E(last);
  std::vector<Seg> y(last);
  Block F = sys.upper[last];  // last row's coupling to x_0
  if (last - 1 == 0) F += sys.lower[last];
  Block D_last = sys.diag[last];
  Seg b_last = rhs.template segment<B>(last * B);

  for (int i = 0; i < last; ++i) {
    Block D = sys.diag[i];
    Block Ei = i == 0 ? sys.lower[0] : Block::Zero();
    Seg b = rhs.template segment<B>(i * B);
    if (i > 0) {
      const Block& L = sys.lower[i];
      D -= L * C[i - 1];
      Ei -= L * E[i - 1];
      b -= L * y[i - 1];
    }
    Block Ci = sys.upper[i];
    if (i + 1 == last) {
      Ei += Ci;
      Ci.setZero();
    }
    piv.push_back(factor(D, i));
    C[i] = piv[i].solve(Ci);
    E[i] = piv[i].solve(Ei);
    y[i] = piv[i].solve(b);

    // eliminate x_i from the last row
    D_last -= F * E[i];
    b_last -= F * y[i];
    Block F_next = Block::Zero();
    if (i + 1 == last - 1) F_next += sys.lower[last];
    F = F_next - F * C[i];
  }
  const LU last_lu = factor(D_last, last);
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x(n * B);
  const Seg x_last = last_lu.solve(b_last);
  x.template segment<B>(last * B) = x_last;
  for (int i = last - 1; i >= 0; --i) {
    Seg xi = y[i] - E[i] * x_last;
    if (i + 1 < last) xi -= C[i] * x.template segment<B>((i + 1) * B);
    x.template segment<B>(i * B) = xi;
  }
  return {std::move(x), min_pivot};
}

template <typename Scalar, int B>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> solve_block_tridiag(
    const BlockTridiagonalSystem<Scalar, B>& sys, const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& rhs,
    Scalar relative_floor = 64 * std::numeric_limits<Scalar>::epsilon()) {
  return solve_block_tridiag_checked(sys, rhs, relative_floor).x;
}

/// Smallest LDL^T pivot of a symmetric (cyclic) tridiagonal matrix; positive
/// for every pivot iff the matrix is positive definite.
template <typename Scalar>
Scalar min_ldl_pivot(const TridiagonalSystem<Scalar>& sys) {
  const int n = sys.size();
  BlockTridiagonalSystem<Scalar, 1> blocks(n, sys.cyclic);
  for (int i = 0; i < n; ++i) {
    blocks.lower[i](0, 0) = sys.lower(i);
    blocks.diag[i](0, 0) = sys.diag(i);
    blocks.upper[i](0, 0) = sys.upper(i);
  }
  if (!sys.cyclic) {
    blocks.lower[0].setZero();
    blocks.upper[n - 1].setZero();
  }
  try {
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> zero = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(n);
    return solve_block_tridiag_checked(blocks, zero).min_pivot;
  } catch (const SingularSystem&) {
    return Scalar(0);
  }
}

}  // namespace axmcf
