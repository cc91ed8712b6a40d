#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "axmcf/fe_space.hpp"

namespace axmcf {

/// Shortest round-trip text for a double (17 significant digits).
std::string format_number(double v);

/// Curve snapshot: header "rho,x1,x2", one row per node; closed curves repeat
/// the first node at rho = 1.
void write_curve_csv(std::ostream& os, const Curve<double>& X);
void write_curve_csv(const std::string& path, const Curve<double>& X);

/// Inverse of write_curve_csv. A last row equal to the first marks a closed curve.
Curve<double> read_curve_csv(std::istream& is);
Curve<double> read_curve_csv(const std::string& path);

/// One line of the per-step time series.
struct ObservableRow {
  int step = 0;
  double t = 0;
  double area = 0;
  double volume = 0;
  double huisken_F = 0;
  double ratio = 0;
  double min_x1 = 0;
  double max_x1 = 0;
  double min_elem_len = 0;
  double max_elem_len = 0;
  std::optional<double> energy_q;
  std::optional<double> goodness_G;
};

extern const std::vector<std::string> kTimeSeriesColumns;

void write_timeseries_header(std::ostream& os);
void write_timeseries_row(std::ostream& os, const ObservableRow& row);
void write_timeseries_csv(const std::string& path, const std::vector<ObservableRow>& rows);
std::vector<ObservableRow> read_timeseries_csv(std::istream& is);

struct MeshCounts {
  long vertices = 0;
  long faces = 0;
};

/// Surface of revolution as a Wavefront OBJ: vertices (x1 cos phi, x2, x1 sin phi)
/// on n_phi meridians, quads split into triangles; open curves share one
/// vertex per axis point.
MeshCounts write_surface_obj(std::ostream& os, const Curve<double>& X, int n_phi);
MeshCounts write_surface_obj(const std::string& path, const Curve<double>& X, int n_phi);

}  // namespace axmcf
