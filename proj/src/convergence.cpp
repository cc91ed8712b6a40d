#include "axmcf/convergence.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>

#include "axmcf/exact_solutions.hpp"
#include "axmcf/scheme_p.hpp"
#include "axmcf/scheme_q.hpp"

namespace axmcf {

ConvergenceCase parse_convergence_case(const std::string& name) {
  if (name == "manufactured-torus") return ConvergenceCase::ManufacturedTorus;
  if (name == "sphere") return ConvergenceCase::Sphere;
  throw InvalidParameter("unknown convergence case '" + name + "' (expected manufactured-torus or sphere)");
}

std::string to_string(ConvergenceCase c) {
  return c == ConvergenceCase::ManufacturedTorus ? "manufactured-torus" : "sphere";
}

int default_error_rule(ConvergenceCase c) { return c == ConvergenceCase::ManufacturedTorus ? 3 : 2; }

ConvergenceRow convergence_row(Scheme scheme, ConvergenceCase c, int J, int rule_points) {
  const auto start = std::chrono::steady_clock::now();
  const bool torus = c == ConvergenceCase::ManufacturedTorus;
  if (torus && scheme == Scheme::QOpenAdapted) throw InvalidParameter("q-open needs the open sphere case");
  if (!torus && scheme == Scheme::Q) throw InvalidParameter("scheme q needs a closed curve; use q-open");
  if (rule_points == 0) rule_points = default_error_rule(c);
  if (rule_points < 1) throw InvalidParameter("error quadrature needs at least one point");

  const ExactSolution<double> ex = torus ? manufactured_torus<double>() : shrinking_sphere<double>();
  const Grid grid(J, ex.topology);
  const double h = grid.h<double>();
  const double dt = h * h;
  const long M = torus ? static_cast<long>(J) * J : static_cast<long>(J) * J / 8;
  if (!torus && static_cast<long>(J) * J % 8 != 0) throw InvalidParameter("sphere case needs J^2 divisible by 8");
  const QuadratureRule<double> rule = gauss_legendre<double>(rule_points);

  Forcing<double> forcing;
  if (torus) {
    if (scheme == Scheme::P) forcing = [ex](double rho, double t) { return forcing_p(ex, rho, t); };
    else forcing = [ex](double rho, double t) { return forcing_q(ex, rho, t); };
  }

  Curve<double> X = interpolate<double>([&](double rho) { return ex.x(rho, 0.0); }, grid);
  if (!torus) {
    X.coords()(0, 0) = 0;
    X.coords()(grid.dofs() - 1, 0) = 0;
  }
  ConvergenceRow row;
  row.J = J;
  row.steps = M;
  auto track = [&](double t) {
    const auto d = distance_norms(
        X, [&](double rho) { return ex.x(rho, t); }, [&](double rho) { return ex.x_rho(rho, t); }, rule);
    row.l2 = std::max(row.l2, d.l2);
    row.h1 = std::max(row.h1, d.h1_semi);
  };
  track(0);
  StepConfigP<double> cfg_p{dt, forcing, true};
  StepConfigQ<double> cfg_q;
  cfg_q.dt = dt;
  cfg_q.forcing = forcing;
  cfg_q.boundary_variant = torus ? BoundaryVariant::ClosedStandard : BoundaryVariant::OpenAdapted;
  for (long m = 0; m < M; ++m) {
    const double t = static_cast<double>(m + 1) * dt;
    try {
      X = scheme == Scheme::P ? step_p(X, cfg_p, t) : step_q(X, cfg_q, t).first;
    } catch (const std::exception& e) {
      throw StepFailure(m + 1, e.what());
    }
    track(t);
  }
  row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return row;
}

ConvergenceTable run_convergence(Scheme scheme, ConvergenceCase c, std::vector<int> Js, int rule_points) {
  if (Js.empty()) throw InvalidParameter("no mesh sizes given");
  std::sort(Js.begin(), Js.end());
  ConvergenceTable table;
  table.scheme = scheme;
  table.test_case = c;
  table.rule_points = rule_points == 0 ? default_error_rule(c) : rule_points;
  for (int J : Js) {
    ConvergenceRow row = convergence_row(scheme, c, J, table.rule_points);
    if (!table.rows.empty()) {
      const ConvergenceRow& prev = table.rows.back();
      const double ratio = std::log(static_cast<double>(J) / prev.J);
      row.eoc_l2 = std::log(prev.l2 / row.l2) / ratio;
      row.eoc_h1 = std::log(prev.h1 / row.h1) / ratio;
    }
    table.rows.push_back(row);
  }
  return table;
}

void write_convergence_csv(std::ostream& os, const ConvergenceTable& table) {
  os << "J,steps,max_l2,eoc_l2,max_h1,eoc_h1,seconds\n";
  for (const auto& r : table.rows) {
    os << r.J << ',' << r.steps << ',' << format_number(r.l2) << ',' << (r.eoc_l2 ? format_number(*r.eoc_l2) : "")
       << ',' << format_number(r.h1) << ',' << (r.eoc_h1 ? format_number(*r.eoc_h1) : "") << ','
       << format_number(r.seconds) << '\n';
  }
}

void write_convergence_csv(const std::string& path, const ConvergenceTable& table) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open " + path + " for writing");
  write_convergence_csv(os, table);
  if (!os) throw IoError("write to " + path + " failed");
}

}  // namespace axmcf
