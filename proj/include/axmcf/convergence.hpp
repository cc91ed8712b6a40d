#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "axmcf/evolution.hpp"

namespace axmcf {

enum class ConvergenceCase { ManufacturedTorus, Sphere };

/// "manufactured-torus" or "sphere".
ConvergenceCase parse_convergence_case(const std::string& name);
std::string to_string(ConvergenceCase c);

struct ConvergenceRow {
  int J = 0;
  long steps = 0;
  double l2 = 0;  ///< max over time of |x(t_m) - X^m|_0
  double h1 = 0;  ///< max over time of |x(t_m) - X^m|_1 (seminorm)
  std::optional<double> eoc_l2;
  std::optional<double> eoc_h1;
  double seconds = 0;
};

struct ConvergenceTable {
  Scheme scheme = Scheme::P;
  ConvergenceCase test_case = ConvergenceCase::ManufacturedTorus;
  int rule_points = 3;
  std::vector<ConvergenceRow> rows;
};

/// Gauss points used for the error integrals when none are requested:
/// 3 for the torus, 2 for the sphere.
int default_error_rule(ConvergenceCase c);

/// One row: dt = h^2 up to T = 1 (torus) or T = 1/8 (sphere).
ConvergenceRow convergence_row(Scheme scheme, ConvergenceCase c, int J, int rule_points = 0);

/// Rows in increasing J with experimental orders log2(e_{J/2} / e_J).
ConvergenceTable run_convergence(Scheme scheme, ConvergenceCase c, std::vector<int> Js, int rule_points = 0);

void write_convergence_csv(std::ostream& os, const ConvergenceTable& table);
void write_convergence_csv(const std::string& path, const ConvergenceTable& table);

}  // namespace axmcf
