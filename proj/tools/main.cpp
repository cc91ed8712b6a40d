// Command-line driver for the axisymmetric mean curvature flow experiments.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "axmcf/bisection.hpp"
#include "axmcf/convergence.hpp"
#include "axmcf/evolution.hpp"
#include "axmcf/io.hpp"
#include "axmcf/observables.hpp"
#include "axmcf/scheme_q.hpp"
#include "axmcf/selfshrinker.hpp"

namespace {

using namespace axmcf;

constexpr int kInvalid = 2;
constexpr int kNumerical = 3;

std::vector<double> parse_pair(const std::string& text, const std::string& what) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double x = 0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw InvalidParameter("cannot read " + what + " from '" + text + "'");
    v.push_back(x);
  }
  if (v.size() != 2) throw InvalidParameter(what + " needs two comma-separated numbers");
  return v;
}

std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

struct Common {
  int J = 128;
  double dt = 1e-4;
  double T = 1;
  std::string scheme = "p";
  std::string initial = "torus:r=0.5";
  std::string out;
  int snapshot_every = 0;
  double eps_axis = 1e-3;
  double eps_diam = 1e-2;
  bool track_goodness = false;
  bool forcing = false;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--J", c.J, "number of elements")->check(CLI::PositiveNumber);
  app->add_option("--dt", c.dt, "time step");
  app->add_option("--T", c.T, "final time (inf: until a singularity)");
  app->add_option("--scheme", c.scheme, "p, q or q-open");
  app->add_option("--initial", c.initial, "torus:r=0.5|manufactured-torus|sphere|disc|dumbbell|spiral|file:PATH");
  app->add_option("--out", c.out, "output directory");
  app->add_option("--snapshot-every", c.snapshot_every, "write the curve every N steps");
  app->add_option("--eps-axis", c.eps_axis, "axis distance that counts as touching");
  app->add_option("--eps-diam", c.eps_diam, "diameter that counts as extinct");
  app->add_flag("--track-goodness", c.track_goodness, "add the self-similarity goodness to the time series");
  app->add_flag("--forcing", c.forcing, "add the manufactured right-hand side");
}

Thresholds<double> thresholds(const Common& c) {
  if (!(c.eps_axis > 0) || !(c.eps_diam > 0)) throw InvalidParameter("thresholds must be positive");
  return {c.eps_axis, c.eps_diam};
}

int cmd_evolve(const Common& c) {
  RunConfig cfg;
  cfg.J = c.J;
  cfg.dt = c.dt;
  cfg.T = c.T;
  cfg.scheme = parse_scheme(c.scheme);
  cfg.initial = parse_initial_spec(c.initial);
  cfg.forcing = c.forcing;
  cfg.snapshot_every = c.snapshot_every;
  cfg.thresholds = thresholds(c);
  cfg.out_dir = c.out;
  cfg.track_goodness = c.track_goodness;
  const EvolutionResult res = run_evolution(cfg);
  for (const auto& w : res.warnings) std::cerr << "warning: " << w << '\n';
  std::cout << "steps " << res.steps << "  t " << fixed(res.final_time, 8) << "  verdict "
            << to_string(res.verdict.kind) << '\n';
  if (!res.series.empty()) {
    const auto& last = res.series.back();
    std::cout << "area " << fixed(last.area) << "  volume " << fixed(last.volume) << "  ratio " << fixed(last.ratio)
              << "  min_x1 " << fixed(last.min_x1) << '\n';
  }
  if (res.stability.checked > 0) {
    std::cout << "stability checks " << res.stability.checked << "  violations " << res.stability.violations
              << "  worst " << fixed(res.stability.worst, 3) << '\n';
  }
  std::cout << "wall " << fixed(res.wall_seconds, 3) << " s\n";
  for (const auto& f : res.files) std::cerr << "wrote " << f << '\n';
  return 0;
}

int cmd_converge(const Common& c, const std::string& test_case, const std::string& Js_text, int rule,
                 const std::string& csv) {
  std::vector<int> Js;
  std::stringstream ss(Js_text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      Js.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw InvalidParameter("cannot read J list '" + Js_text + "'");
    }
  }
  const ConvergenceTable table = run_convergence(parse_scheme(c.scheme), parse_convergence_case(test_case), Js, rule);
  std::printf("%8s %12s %7s %12s %7s %9s\n", "J", "max L2", "EOC", "max H1", "EOC", "seconds");
  for (const auto& r : table.rows) {
    std::printf("%8d %12.4e %7s %12.4e %7s %9.2f\n", r.J, r.l2, r.eoc_l2 ? fixed(*r.eoc_l2, 3).c_str() : "",
                r.h1, r.eoc_h1 ? fixed(*r.eoc_h1, 3).c_str() : "", r.seconds);
  }
  if (!csv.empty()) write_convergence_csv(csv, table);
  return 0;
}

int cmd_angenent(int J, double T0, const std::string& circle, const std::string& out, bool extended) {
  const auto rc = parse_pair(circle, "--init-circle");
  if (!(rc[0] > 0 && rc[1] > rc[0])) throw InvalidParameter("circle must have 0 < R < CX");
  const Grid grid(J, Topology::Closed);
  auto solve = [&](auto zero) {
    using S = decltype(zero);
    const S pi = std::acos(S(-1));
    Coords<S> x(J, 2);
    for (int i = 0; i < J; ++i) {
      const S phi = 2 * pi * S(i) / S(J);
      x(i, 0) = S(rc[1]) + S(rc[0]) * std::cos(phi);
      x(i, 1) = S(rc[0]) * std::sin(phi);
    }
    auto [Y, report] = solve_angenent<S>(grid, S(T0), Curve<S>(grid, x));
    const Measures<S> m = measure(Y);
    const GoodnessResult<S> g = goodness(Y);
    std::cout << "newton iterations " << report.iterations << "  residual " << fixed(double(report.final_residual), 3)
              << '\n';
    std::printf("F %.10f\nV %.8f\nA %.8f\nmin_x1 %.8f\nmax_x1 %.8f\nmax_x2 %.8f\nG %.3e\n", double(m.F),
                double(m.V), double(m.A), double(m.min_x1), double(m.max_x1), double(m.max_x2), double(g.G));
    if (!out.empty()) {
      std::filesystem::create_directories(out);
      const std::string path = (std::filesystem::path(out) / "angenent.csv").string();
      write_curve_csv(path, Curve<double>(grid, Y.coords().template cast<double>()));
      std::cerr << "wrote " << path << '\n';
    }
  };
  if (extended) solve(static_cast<long double>(0));
  else solve(0.0);
  return 0;
}

int cmd_bisect(const Common& c, const std::string& bracket, double tol, const std::string& out) {
  const auto b = parse_pair(bracket, "--bracket");
  BisectionConfig cfg;
  cfg.J = c.J;
  cfg.dt = c.dt;
  cfg.lo = b[0];
  cfg.hi = b[1];
  cfg.tol = tol;
  cfg.scheme = parse_scheme(c.scheme);
  cfg.thresholds = thresholds(c);
  const BisectionResult res = bisect_critical_radius(cfg);
  for (const auto& k : res.log) {
    std::cout << "r " << format_number(k.r) << "  " << to_string(k.kind) << "  t " << fixed(k.time, 8) << '\n';
  }
  std::cout << "bracket [" << format_number(res.r_lo) << ", " << format_number(res.r_hi) << "]\n";
  if (!out.empty()) {
    std::filesystem::create_directories(out);
    const std::string path = (std::filesystem::path(out) / "bisection.csv").string();
    std::ofstream os(path);
    os << "r,verdict,time,steps\n";
    for (const auto& k : res.log) {
      os << format_number(k.r) << ',' << to_string(k.kind) << ',' << format_number(k.time) << ',' << k.steps << '\n';
    }
    if (!os) throw IoError("write to " + path + " failed");
  }
  return 0;
}

int cmd_goodness(const Common& c) {
  const InitialSpec spec = parse_initial_spec(c.initial);
  const Curve<double> X = initial_curve(spec, initial_grid(spec, c.J));
  const GoodnessResult<double> g = goodness(X);
  std::cout << "G " << format_number(g.G) << "\nalpha_star "
            << (g.alpha_star ? format_number(*g.alpha_star) : std::string("unbounded")) << '\n';
  return 0;
}

int cmd_export(const Common& c, int n_phi, const std::string& path) {
  if (path.empty()) throw InvalidParameter("--obj is required");
  const InitialSpec spec = parse_initial_spec(c.initial);
  const Curve<double> X = initial_curve(spec, initial_grid(spec, c.J));
  const MeshCounts counts = write_surface_obj(path, X, n_phi);
  std::cout << "vertices " << counts.vertices << "  faces " << counts.faces << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"axisymmetric mean curvature flow experiments"};
  app.require_subcommand(1);

  Common common;
  auto* evolve = app.add_subcommand("evolve", "evolve a generating curve");
  add_common(evolve, common);

  auto* converge = app.add_subcommand("converge", "error table against an exact solution");
  add_common(converge, common);
  std::string test_case = "manufactured-torus", Js = "32,64,128", csv;
  int rule = 0;
  converge->add_option("--case", test_case, "manufactured-torus or sphere");
  converge->add_option("--Js", Js, "comma-separated element counts");
  converge->add_option("--rule", rule, "Gauss points for the error integrals (0: case default)");
  converge->add_option("--csv", csv, "write the table as CSV");

  auto* angenent = app.add_subcommand("angenent", "discrete self-shrinking torus");
  int ang_J = 65536;
  double T0 = 1;
  std::string circle = "0.6,2", ang_out, precision = "extended";
  angenent->add_option("--J", ang_J, "number of elements")->check(CLI::PositiveNumber);
  angenent->add_option("--T0", T0, "extinction time");
  angenent->add_option("--init-circle", circle, "R,CX of the initial circle");
  angenent->add_option("--out", ang_out, "output directory");
  angenent->add_option("--precision", precision, "extended or double")->check(CLI::IsMember({"extended", "double"}));

  auto* bisect = app.add_subcommand("bisect-r0", "critical tube radius by bisection");
  add_common(bisect, common);
  std::string bracket = "0.5,0.7";
  double tol = 1e-3;
  bisect->add_option("--bracket", bracket, "LO,HI");
  bisect->add_option("--tol", tol, "bracket width");

  auto* good = app.add_subcommand("goodness", "self-similarity goodness of a curve");
  add_common(good, common);

  auto* exporter = app.add_subcommand("export-surface", "surface of revolution as OBJ");
  add_common(exporter, common);
  int n_phi = 64;
  std::string obj;
  exporter->add_option("--n-phi", n_phi, "meridians");
  exporter->add_option("--obj", obj, "output mesh path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInvalid;
  }

  try {
    if (*evolve) return cmd_evolve(common);
    if (*converge) return cmd_converge(common, test_case, Js, rule, csv);
    if (*angenent) return cmd_angenent(ang_J, T0, circle, ang_out, precision == "extended");
    if (*bisect) return cmd_bisect(common, bracket, tol, common.out);
    if (*good) return cmd_goodness(common);
    if (*exporter) return cmd_export(common, n_phi, obj);
  } catch (const StepFailure& e) {
    std::cerr << "numerical failure at " << e.what() << '\n';
    return kNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid parameter: " << e.what() << '\n';
    return kInvalid;
  } catch (const IoError& e) {
    std::cerr << "invalid parameter: " << e.what() << '\n';
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
  return 0;
}
