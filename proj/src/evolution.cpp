#include "axmcf/evolution.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>

#include "axmcf/exact_solutions.hpp"
#include "axmcf/scheme_p.hpp"
#include "axmcf/scheme_q.hpp"
#include "axmcf/selfshrinker.hpp"

namespace axmcf {

Scheme parse_scheme(const std::string& name) {
  if (name == "p") return Scheme::P;
  if (name == "q") return Scheme::Q;
  if (name == "q-open") return Scheme::QOpenAdapted;
  throw InvalidParameter("unknown scheme '" + name + "' (expected p, q or q-open)");
}

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::P: return "p";
    case Scheme::Q: return "q";
    case Scheme::QOpenAdapted: return "q-open";
  }
  return "p";
}

ObservableRow observe(const Curve<double>& X, long step, double t, bool with_goodness) {
  const Measures<double> m = measure(X);
  const Vector<double> len = element_lengths(X);
  ObservableRow row;
  row.step = static_cast<int>(step);
  row.t = t;
  row.area = m.A;
  row.volume = m.V;
  row.huisken_F = m.F;
  row.min_elem_len = len.minCoeff();
  row.max_elem_len = len.maxCoeff();
  row.ratio = row.min_elem_len > 0 ? row.max_elem_len / row.min_elem_len : std::numeric_limits<double>::infinity();
  row.min_x1 = m.min_x1;
  row.max_x1 = m.max_x1;
  if (with_goodness && X.grid().closed()) row.goodness_G = goodness(X).G;
  return row;
}

namespace {

Forcing<double> make_forcing(const RunConfig& cfg) {
  if (!cfg.forcing) return {};
  ExactSolution<double> ex;
  if (cfg.initial.kind == InitialSpec::Kind::ManufacturedTorus) ex = manufactured_torus<double>();
  else if (cfg.initial.kind == InitialSpec::Kind::Sphere) ex = shrinking_sphere<double>();
  else throw InvalidParameter("forcing needs manufactured-torus or sphere initial data");
  if (cfg.scheme == Scheme::P) return [ex](double rho, double t) { return forcing_p(ex, rho, t); };
  return [ex](double rho, double t) { return forcing_q(ex, rho, t); };
}

long step_count(const RunConfig& cfg) {
  if (std::isinf(cfg.T) && cfg.T > 0) return cfg.max_steps;
  if (!(cfg.T > 0)) throw InvalidParameter("final time must be positive");
  const double M = std::round(cfg.T / cfg.dt);
  if (M < 1 || std::abs(M * cfg.dt - cfg.T) > 1e-9 * cfg.T) {
    throw InvalidParameter("T must be a whole multiple of dt");
  }
  return std::min(static_cast<long>(M), cfg.max_steps);
}

std::string snapshot_name(const std::string& dir, long step) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "snapshot_%07ld.csv", step);
  return (std::filesystem::path(dir) / buf).string();
}

}  // namespace

EvolutionResult run_evolution(const RunConfig& cfg, const StepObserver& observer) {
  const auto start = std::chrono::steady_clock::now();
  if (!(cfg.dt > 0)) throw InvalidParameter("time step must be positive");
  if (cfg.snapshot_every < 0) throw InvalidParameter("snapshot cadence must be non-negative");
  const long M = step_count(cfg);
  const Grid grid = initial_grid(cfg.initial, cfg.J);
  const Topology topology = grid.topology();
  if (cfg.scheme == Scheme::Q && topology != Topology::Closed) {
    throw InvalidParameter("scheme q needs a closed curve; use q-open for open curves");
  }
  if (cfg.scheme == Scheme::QOpenAdapted && topology != Topology::Open) {
    throw InvalidParameter("scheme q-open needs an open curve");
  }
  const Forcing<double> forcing = make_forcing(cfg);

  EvolutionResult result;
  if (cfg.dt > std::sqrt(grid.h<double>())) result.warnings.push_back("dt exceeds sqrt(h)");
  const bool write = !cfg.out_dir.empty();
  if (write) std::filesystem::create_directories(cfg.out_dir);

  Curve<double> X = initial_curve(cfg.initial, grid);
  check_admissible(X);
  StepConfigP<double> cfg_p{cfg.dt, forcing, true};
  StepConfigQ<double> cfg_q;
  cfg_q.dt = cfg.dt;
  cfg_q.forcing = forcing;
  cfg_q.boundary_variant =
      cfg.scheme == Scheme::QOpenAdapted ? BoundaryVariant::OpenAdapted : BoundaryVariant::ClosedStandard;
  const bool check_stability = cfg.scheme == Scheme::Q && !forcing;

  auto record = [&](long m, double t) {
    if (cfg.record_series) {
      ObservableRow row = observe(X, m, t, cfg.track_goodness);
      if (cfg.scheme != Scheme::P) row.energy_q = energy_q(X);
      result.series.push_back(row);
    }
    if (write && (m == 0 || (cfg.snapshot_every > 0 && m % cfg.snapshot_every == 0))) {
      result.files.push_back(snapshot_name(cfg.out_dir, m));
      write_curve_csv(result.files.back(), X);
    }
    if (observer) observer(m, t, X);
  };

  record(0, 0.0);
  long m = 0;
  double t = 0;
  for (; m < M; ++m) {
    const double t_next = static_cast<double>(m + 1) * cfg.dt;
    Curve<double> next(grid);
    try {
      if (cfg.scheme == Scheme::P) {
        next = step_p(X, cfg_p, t_next);
      } else {
        auto [Xn, report] = step_q(X, cfg_q, t_next);
        next = std::move(Xn);
        result.newton.push_back(std::move(report));
      }
    } catch (const std::exception& e) {
      result.final_curve = X;
      result.final_time = t;
      result.steps = m;
      throw StepFailure(m + 1, e.what());
    }
    if (check_stability) {
      const double energy = energy_q(X);
      const double defect = stability_defect(X, next, cfg.dt);
      const double rel = defect / std::max(energy, std::numeric_limits<double>::min());
      ++result.stability.checked;
      result.stability.worst = std::max(result.stability.worst, rel);
      if (rel > cfg.stability_tol) ++result.stability.violations;
    }
    X = std::move(next);
    t = t_next;
    record(m + 1, t);
    result.verdict = classify_singularity(X, cfg.thresholds, t);
    if (result.verdict.kind != SingularityKind::None && cfg.stop_on_singularity) {
      ++m;
      break;
    }
  }
  result.steps = m;
  result.final_time = t;
  result.final_curve = X;
  if (write) {
    if (result.files.empty() || result.files.back() != snapshot_name(cfg.out_dir, m)) {
      result.files.push_back(snapshot_name(cfg.out_dir, m));
      write_curve_csv(result.files.back(), X);
    }
    const std::string final_path = (std::filesystem::path(cfg.out_dir) / "final.csv").string();
    write_curve_csv(final_path, X);
    result.files.push_back(final_path);
    if (cfg.record_series) {
      const std::string series_path = (std::filesystem::path(cfg.out_dir) / "timeseries.csv").string();
      write_timeseries_csv(series_path, result.series);
      result.files.push_back(series_path);
    }
  }
  result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace axmcf
