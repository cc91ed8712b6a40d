#include "axmcf/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

namespace axmcf {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open " + path + " for writing");
  return os;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open " + path);
  return is;
}

void finish(std::ostream& os, const std::string& path) {
  os.flush();
  if (!os) throw IoError("write to " + path + " failed");
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double to_double(const std::string& cell, int line) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(cell, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != cell.size()) throw IoError("line " + std::to_string(line) + ": bad number '" + cell + "'");
  return v;
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

}  // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_curve_csv(std::ostream& os, const Curve<double>& X) {
  const Grid& grid = X.grid();
  os << "rho,x1,x2\n";
  for (int i = 0; i < X.dofs(); ++i) {
    os << format_number(grid.node<double>(i)) << ',' << format_number(X.coords()(i, 0)) << ','
       << format_number(X.coords()(i, 1)) << '\n';
  }
  if (grid.closed()) {
    os << "1," << format_number(X.coords()(0, 0)) << ',' << format_number(X.coords()(0, 1)) << '\n';
  }
}

void write_curve_csv(const std::string& path, const Curve<double>& X) {
  auto os = open_out(path);
  write_curve_csv(os, X);
  finish(os, path);
}

Curve<double> read_curve_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || strip_cr(line) != "rho,x1,x2") throw IoError("curve file must start with rho,x1,x2");
  std::vector<Point<double>> pts;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    line = strip_cr(line);
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != 3) throw IoError("line " + std::to_string(lineno) + ": expected 3 columns");
    pts.emplace_back(to_double(cells[1], lineno), to_double(cells[2], lineno));
  }
  if (pts.size() < 4) throw IoError("curve file needs at least 4 nodes");
  const bool closed = pts.front() == pts.back();
  const int J = static_cast<int>(pts.size()) - 1;
  const Grid grid(J, closed ? Topology::Closed : Topology::Open);
  Coords<double> x(grid.dofs(), 2);
  for (int i = 0; i < grid.dofs(); ++i) x.row(i) = pts[i].transpose();
  return Curve<double>(grid, std::move(x));
}

Curve<double> read_curve_csv(const std::string& path) {
  auto is = open_in(path);
  try {
    return read_curve_csv(is);
  } catch (const IoError& e) {
    throw IoError(path + ": " + e.what());
  }
}

const std::vector<std::string> kTimeSeriesColumns = {
    "step",   "t",      "area",         "volume",       "huiskenF",  "ratio",
    "min_x1", "max_x1", "min_elem_len", "max_elem_len", "energy_q", "goodness_G"};

void write_timeseries_header(std::ostream& os) {
  for (std::size_t i = 0; i < kTimeSeriesColumns.size(); ++i) os << (i ? "," : "") << kTimeSeriesColumns[i];
  os << '\n';
}

void write_timeseries_row(std::ostream& os, const ObservableRow& r) {
  os << r.step << ',' << format_number(r.t) << ',' << format_number(r.area) << ',' << format_number(r.volume) << ','
     << format_number(r.huisken_F) << ',' << format_number(r.ratio) << ',' << format_number(r.min_x1) << ','
     << format_number(r.max_x1) << ',' << format_number(r.min_elem_len) << ',' << format_number(r.max_elem_len)
     << ',' << (r.energy_q ? format_number(*r.energy_q) : "") << ','
     << (r.goodness_G ? format_number(*r.goodness_G) : "") << '\n';
}

void write_timeseries_csv(const std::string& path, const std::vector<ObservableRow>& rows) {
  auto os = open_out(path);
  write_timeseries_header(os);
  for (const auto& r : rows) write_timeseries_row(os, r);
  finish(os, path);
}

std::vector<ObservableRow> read_timeseries_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw IoError("empty time series");
  const auto header = split(strip_cr(line));
  if (header != kTimeSeriesColumns) throw IoError("unexpected time series header '" + line + "'");
  std::vector<ObservableRow> rows;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    line = strip_cr(line);
    if (line.empty()) continue;
    const auto c = split(line);
    if (c.size() != kTimeSeriesColumns.size()) throw IoError("line " + std::to_string(lineno) + ": wrong column count");
    ObservableRow r;
    r.step = static_cast<int>(to_double(c[0], lineno));
    double* fields[] = {&r.t, &r.area, &r.volume, &r.huisken_F, &r.ratio, &r.min_x1, &r.max_x1, &r.min_elem_len,
                        &r.max_elem_len};
    for (int k = 0; k < 9; ++k) *fields[k] = to_double(c[k + 1], lineno);
    if (!c[10].empty()) r.energy_q = to_double(c[10], lineno);
    if (!c[11].empty()) r.goodness_G = to_double(c[11], lineno);
    rows.push_back(r);
  }
  return rows;
}

MeshCounts write_surface_obj(std::ostream& os, const Curve<double>& X, int n_phi) {
  if (n_phi < 3) throw InvalidParameter("n_phi must be at least 3");
  const Grid& grid = X.grid();
  const int n = X.dofs();
  const bool open = !grid.closed();
  // vertex index (1-based) of node i on meridian k
  std::vector<long> first(n);
  long count = 0;
  os << "# surface of revolution, " << grid.elements() << " elements, " << n_phi << " meridians\n";
  for (int i = 0; i < n; ++i) {
    const double r = X.coords()(i, 0), z = X.coords()(i, 1);
    first[i] = count + 1;
    if (open && (i == 0 || i == n - 1)) {
      os << "v " << format_number(0.0) << ' ' << format_number(z) << ' ' << format_number(0.0) << '\n';
      ++count;
      continue;
    }
    for (int k = 0; k < n_phi; ++k) {
      const double phi = 2 * std::numbers::pi * k / n_phi;
      os << "v " << format_number(r * std::cos(phi)) << ' ' << format_number(z) << ' '
         << format_number(r * std::sin(phi)) << '\n';
    }
    count += n_phi;
  }
  auto vid = [&](int i, int k) {
    if (open && (i == 0 || i == n - 1)) return first[i];
    return first[i] + (k % n_phi);
  };
  long faces = 0;
  for (int e = 0; e < grid.elements(); ++e) {
    const auto [a, b] = grid.element_dofs(e);
    for (int k = 0; k < n_phi; ++k) {
      const long p = vid(a, k), q = vid(b, k), r = vid(b, k + 1), s = vid(a, k + 1);
      if (p != s) {
        os << "f " << p << ' ' << q << ' ' << s << '\n';
        ++faces;
      }
      if (q != r) {
        os << "f " << s << ' ' << q << ' ' << r << '\n';
        ++faces;
      }
    }
  }
  return {count, faces};
}

MeshCounts write_surface_obj(const std::string& path, const Curve<double>& X, int n_phi) {
  auto os = open_out(path);
  const MeshCounts c = write_surface_obj(os, X, n_phi);
  finish(os, path);
  return c;
}

}  // namespace axmcf
