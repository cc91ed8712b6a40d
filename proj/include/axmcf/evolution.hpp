#pragma once

#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "axmcf/fe_space.hpp"
#include "axmcf/initial_data.hpp"
#include "axmcf/io.hpp"
#include "axmcf/newton.hpp"
#include "axmcf/observables.hpp"

namespace axmcf {

enum class Scheme { P, Q, QOpenAdapted };

/// "p", "q" or "q-open".
Scheme parse_scheme(const std::string& name);
std::string to_string(Scheme s);

struct RunConfig {
  int J = 128;  ///< ignored for file initial data
  double dt = 1e-4;
  double T = 1;  ///< infinity: run until a singularity is detected or max_steps
  Scheme scheme = Scheme::P;
  InitialSpec initial;
  bool forcing = false;    ///< manufactured right-hand side (manufactured torus, sphere)
  int snapshot_every = 0;  ///< 0: only the first and last curve
  Thresholds<double> thresholds;
  std::string out_dir;  ///< empty: write nothing
  bool track_goodness = false;
  bool record_series = true;
  bool stop_on_singularity = true;
  long max_steps = 100'000'000;
  double stability_tol = 1e-12;
};

struct StabilityStats {
  long checked = 0;
  long violations = 0;
  double worst = -std::numeric_limits<double>::infinity();  ///< max of defect / energy
};

struct EvolutionResult {
  std::vector<ObservableRow> series;
  Curve<double> final_curve{Grid(3, Topology::Closed)};
  double final_time = 0;
  long steps = 0;
  SingularityVerdict<double> verdict;
  std::vector<NewtonReport<double>> newton;
  StabilityStats stability;
  double wall_seconds = 0;
  std::vector<std::string> warnings;
  std::vector<std::string> files;
};

/// A time step failed; carries the index of the step that was attempted.
class StepFailure : public std::runtime_error {
 public:
  StepFailure(long step, const std::string& what)
      : std::runtime_error("step " + std::to_string(step) + ": " + what), step_(step) {}
  long step() const noexcept { return step_; }

 private:
  long step_;
};

using StepObserver = std::function<void(long step, double t, const Curve<double>& X)>;

/// Observables of one curve for the time series.
ObservableRow observe(const Curve<double>& X, long step, double t, bool with_goodness);

EvolutionResult run_evolution(const RunConfig& cfg, const StepObserver& observer = {});

}  // namespace axmcf
