#pragma once

#include <utility>

#include "axmcf/errors.hpp"

namespace axmcf {

enum class Topology { Closed, Open };

/// Uniform partition of [0,1] into J elements.
///
/// Closed grids identify q_0 with q_J and carry J degrees of freedom
/// (DOF i sits at node q_i, i = 0..J-1). Open grids carry J+1.
class Grid {
 public:
  Grid(int elements, Topology topology) : elements_(elements), topology_(topology) {
    if (elements < 3) {
      throw InvalidParameter("grid needs at least 3 elements, got " + std::to_string(elements));
    }
  }

  int elements() const noexcept { return elements_; }
  Topology topology() const noexcept { return topology_; }
  bool closed() const noexcept { return topology_ == Topology::Closed; }
  int dofs() const noexcept { return closed() ? elements_ : elements_ + 1; }

  template <typename Scalar = double>
  Scalar h() const noexcept {
    return Scalar(1) / Scalar(elements_);
  }

  template <typename Scalar = double>
  Scalar node(int i) const noexcept {
    return Scalar(i) / Scalar(elements_);
  }

  /// DOF indices of the left/right endpoint of element e (e = 0..J-1).
  std::pair<int, int> element_dofs(int e) const noexcept {
    const int right = e + 1;
    return {e, closed() && right == elements_ ? 0 : right};
  }

  bool operator==(const Grid&) const = default;

 private:
  int elements_;
  Topology topology_;
};

inline Grid make_grid(int elements, Topology topology) { return Grid(elements, topology); }

}  // namespace axmcf
