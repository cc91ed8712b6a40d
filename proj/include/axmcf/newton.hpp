#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <limits>
#include <stdexcept>
#include <utility>
#include <string>
#include <vector>

namespace axmcf {

template <typename Scalar = double>
struct NewtonReport {
  int iterations = 0;
  Scalar initial_residual = 0;
  Scalar final_residual = 0;
  Scalar tolerance = 0;
  std::vector<Scalar> residual_history;  ///< ||r||_2 after each accepted iterate, starting with the guess
  std::vector<int> halvings;             ///< damping halvings used per iteration
  bool converged = false;
};

template <typename Scalar = double>
struct NewtonOptions {
  Scalar relative_tolerance = Scalar(1e-12);
  int max_iterations = 20;
  int max_halvings = 10;
  Scalar absolute_floor = 0;  ///< round-off level of the residual evaluation
  Scalar max_step = std::numeric_limits<Scalar>::infinity();  ///< cap on the max-norm of a correction
};

/// Newton's method did not reach its tolerance; carries the report.
template <typename Scalar = double>
class NewtonFailure : public std::runtime_error {
 public:
  NewtonFailure(const std::string& what, NewtonReport<Scalar> report)
      : std::runtime_error(what), report_(std::move(report)) {}
  const NewtonReport<Scalar>& report() const noexcept { return report_; }

 private:
  NewtonReport<Scalar> report_;
};

/// Damped Newton iteration on a coefficient vector.
///
/// `residual(x)` returns r(x); `newton_step(x, r)` returns the correction d
/// solving J(x) d = -r. A trial x + lambda d is accepted as soon as ||r||_2
/// strictly decreases, halving lambda at most max_halvings times; lambda starts
/// below 1 when the correction exceeds max_step in the max-norm. Stops when
/// ||r||_2 <= max(relative_tolerance * max(1, ||r(x0)||_2), absolute_floor).
template <typename Scalar, typename ResidualFn, typename StepFn>
std::pair<Eigen::Matrix<Scalar, Eigen::Dynamic, 1>, NewtonReport<Scalar>> damped_newton(
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x, ResidualFn&& residual, StepFn&& newton_step,
    const NewtonOptions<Scalar>& opts) {
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  NewtonReport<Scalar> report;
  Vec r = residual(x);
  Scalar rn = r.norm();
  report.initial_residual = rn;
  report.tolerance = std::max(opts.relative_tolerance * std::max(Scalar(1), rn), opts.absolute_floor);
  report.residual_history.push_back(rn);

  while (!(rn <= report.tolerance)) {
    if (report.iterations >= opts.max_iterations) {
      report.final_residual = rn;
      return {std::move(x), report};
    }
    const Vec d = newton_step(x, r);
    const Scalar dmax = d.template lpNorm<Eigen::Infinity>();
    Scalar lambda = dmax > opts.max_step ? opts.max_step / dmax : Scalar(1);
    int halvings = 0;
    bool accepted = false;
    for (; halvings <= opts.max_halvings; ++halvings, lambda /= 2) {
      Vec trial = x + lambda * d;
      Vec r_trial = residual(trial);
      const Scalar rn_trial = r_trial.norm();
      if (rn_trial < rn) {
        x = std::move(trial);
        r = std::move(r_trial);
        rn = rn_trial;
        accepted = true;
        break;
      }
    }
    ++report.iterations;
    report.halvings.push_back(std::min(halvings, opts.max_halvings));
    if (!accepted) {
      report.final_residual = rn;
      return {std::move(x), report};
    }
    report.residual_history.push_back(rn);
  }
  report.final_residual = rn;
  report.converged = true;
  return {std::move(x), report};
}

}  // namespace axmcf
