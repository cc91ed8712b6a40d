#pragma once

#include <cmath>
#include <functional>
#include <numbers>

#include "axmcf/fe_space.hpp"

namespace axmcf {

/// Closed-form parameterization x(rho, t) with the derivatives that enter the
/// strong forms.
template <typename Scalar = double>
struct ExactSolution {
  using Fn = std::function<Point<Scalar>(Scalar rho, Scalar t)>;
  Fn x;
  Fn x_t;
  Fn x_rho;
  Fn x_rhorho;
  Topology topology = Topology::Closed;
};

/// Right-hand side f with  (x.e1)|x_rho|^2 x_t - ((x.e1) x_rho)_rho + |x_rho|^2 e1 = f.
template <typename Scalar>
Point<Scalar> forcing_p(const ExactSolution<Scalar>& ex, Scalar rho, Scalar t) {
  const Point<Scalar> x = ex.x(rho, t);
  const Point<Scalar> xt = ex.x_t(rho, t);
  const Point<Scalar> xr = ex.x_rho(rho, t);
  const Point<Scalar> xrr = ex.x_rhorho(rho, t);
  const Scalar s = xr.squaredNorm();
  const Point<Scalar> flux_rho = xr(0) * xr + x(0) * xrr;
  return x(0) * s * xt - flux_rho + Point<Scalar>(s, 0);
}

/// Right-hand side f with  (x.e1)^2|x_rho|^2 x_t - ((x.e1)^2 x_rho)_rho + (x.e1)|x_rho|^2 e1 = f.
template <typename Scalar>
Point<Scalar> forcing_q(const ExactSolution<Scalar>& ex, Scalar rho, Scalar t) {
  const Point<Scalar> x = ex.x(rho, t);
  const Point<Scalar> xt = ex.x_t(rho, t);
  const Point<Scalar> xr = ex.x_rho(rho, t);
  const Point<Scalar> xrr = ex.x_rhorho(rho, t);
  const Scalar s = xr.squaredNorm();
  const Point<Scalar> flux_rho = 2 * x(0) * xr(0) * xr + x(0) * x(0) * xrr;
  return x(0) * x(0) * s * xt - flux_rho + Point<Scalar>(x(0) * s, 0);
}

/// Torus-like manufactured motion x = (2 + sin(pi t) + cos 2 pi rho, sin 2 pi rho).
template <typename Scalar = double>
ExactSolution<Scalar> manufactured_torus() {
  constexpr Scalar pi = std::numbers::pi_v<Scalar>;
  ExactSolution<Scalar> ex;
  ex.topology = Topology::Closed;
  ex.x = [](Scalar rho, Scalar t) {
    return Point<Scalar>(2 + std::sin(pi * t) + std::cos(2 * pi * rho), std::sin(2 * pi * rho));
  };
  ex.x_t = [](Scalar, Scalar t) { return Point<Scalar>(pi * std::cos(pi * t), 0); };
  ex.x_rho = [](Scalar rho, Scalar) {
    return Point<Scalar>(-2 * pi * std::sin(2 * pi * rho), 2 * pi * std::cos(2 * pi * rho));
  };
  ex.x_rhorho = [](Scalar rho, Scalar) {
    return Point<Scalar>(-4 * pi * pi * std::cos(2 * pi * rho), -4 * pi * pi * std::sin(2 * pi * rho));
  };
  return ex;
}

/// Shrinking unit sphere, generated by the half circle (1-4t)^{1/2} (sin pi rho, cos pi rho).
/// Solves the unforced problem exactly for t < 1/4.
template <typename Scalar = double>
ExactSolution<Scalar> shrinking_sphere() {
  constexpr Scalar pi = std::numbers::pi_v<Scalar>;
  ExactSolution<Scalar> ex;
  ex.topology = Topology::Open;
  ex.x = [](Scalar rho, Scalar t) {
    const Scalar R = std::sqrt(1 - 4 * t);
    return Point<Scalar>(R * std::sin(pi * rho), R * std::cos(pi * rho));
  };
  ex.x_t = [](Scalar rho, Scalar t) {
    const Scalar dR = -2 / std::sqrt(1 - 4 * t);
    return Point<Scalar>(dR * std::sin(pi * rho), dR * std::cos(pi * rho));
  };
  ex.x_rho = [](Scalar rho, Scalar t) {
    const Scalar R = std::sqrt(1 - 4 * t);
    return Point<Scalar>(pi * R * std::cos(pi * rho), -pi * R * std::sin(pi * rho));
  };
  ex.x_rhorho = [](Scalar rho, Scalar t) {
    const Scalar R = std::sqrt(1 - 4 * t);
    return Point<Scalar>(-pi * pi * R * std::sin(pi * rho), -pi * pi * R * std::cos(pi * rho));
  };
  return ex;
}

}  // namespace axmcf
