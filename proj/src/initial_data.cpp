#include "axmcf/initial_data.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "axmcf/exact_solutions.hpp"
#include "axmcf/io.hpp"

namespace axmcf {

namespace {

constexpr double pi = std::numbers::pi;

double parse_number(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(v)) {
    throw InvalidParameter("cannot read " + what + " from '" + text + "'");
  }
  return v;
}

InitialSpec parse_torus(const std::string& args) {
  InitialSpec spec;
  spec.kind = InitialSpec::Kind::Torus;
  std::stringstream ss(args);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InvalidParameter("torus parameter '" + item + "' is not key=value");
    const std::string key = item.substr(0, eq);
    const double value = parse_number(item.substr(eq + 1), "torus parameter " + key);
    if (key == "r") spec.r = value;
    else if (key == "R") spec.R = value;
    else throw InvalidParameter("unknown torus parameter '" + key + "'");
  }
  if (!(spec.r > 0 && spec.r < spec.R)) throw InvalidParameter("torus needs 0 < r < R");
  return spec;
}

Point<double> disc_point(double rho) {
  // superellipse (x1/4.5)^8 + (x2/0.5)^8 = 1
  const double p = 8, s = std::sin(pi * rho), c = std::cos(pi * rho);
  return {4.5 * std::pow(std::abs(s), 2 / p), 0.5 * std::copysign(std::pow(std::abs(c), 2 / p), c)};
}

Point<double> dumbbell_point(double rho) {
  const double c = std::cos(pi * rho);
  return {std::sin(pi * rho) * (1 - 0.7 * std::exp(-6 * c * c)), 1.5 * c};
}

Point<double> spiral_point(double rho) {
  const double R = 0.3 + 0.2 * std::cos(2 * pi * rho);
  return {2 + R * std::cos(4 * pi * rho), R * std::sin(4 * pi * rho)};
}

}  // namespace

InitialSpec parse_initial_spec(const std::string& text) {
  InitialSpec spec;
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (head == "torus") return args.empty() ? spec : parse_torus(args);
  if (head == "file") {
    if (args.empty()) throw InvalidParameter("file: needs a path");
    spec.kind = InitialSpec::Kind::File;
    spec.path = args;
    return spec;
  }
  if (!args.empty()) throw InvalidParameter("initial data '" + head + "' takes no parameters");
  if (head == "manufactured-torus") spec.kind = InitialSpec::Kind::ManufacturedTorus;
  else if (head == "sphere") spec.kind = InitialSpec::Kind::Sphere;
  else if (head == "disc") spec.kind = InitialSpec::Kind::Disc;
  else if (head == "dumbbell") spec.kind = InitialSpec::Kind::Dumbbell;
  else if (head == "spiral") spec.kind = InitialSpec::Kind::Spiral;
  else throw InvalidParameter("unknown initial data '" + text + "'");
  return spec;
}

std::string to_string(const InitialSpec& spec) {
  std::ostringstream os;
  os.precision(17);
  switch (spec.kind) {
    case InitialSpec::Kind::Torus: os << "torus:R=" << spec.R << ",r=" << spec.r; break;
    case InitialSpec::Kind::ManufacturedTorus: os << "manufactured-torus"; break;
    case InitialSpec::Kind::Sphere: os << "sphere"; break;
    case InitialSpec::Kind::Disc: os << "disc"; break;
    case InitialSpec::Kind::Dumbbell: os << "dumbbell"; break;
    case InitialSpec::Kind::Spiral: os << "spiral"; break;
    case InitialSpec::Kind::File: os << "file:" << spec.path; break;
  }
  return os.str();
}

Topology natural_topology(const InitialSpec& spec) {
  switch (spec.kind) {
    case InitialSpec::Kind::Torus:
    case InitialSpec::Kind::ManufacturedTorus:
    case InitialSpec::Kind::Spiral: return Topology::Closed;
    case InitialSpec::Kind::Sphere:
    case InitialSpec::Kind::Disc:
    case InitialSpec::Kind::Dumbbell: return Topology::Open;
    case InitialSpec::Kind::File: return read_curve_csv(spec.path).grid().topology();
  }
  return Topology::Closed;
}

Grid initial_grid(const InitialSpec& spec, int J) {
  if (spec.kind == InitialSpec::Kind::File) return read_curve_csv(spec.path).grid();
  return Grid(J, natural_topology(spec));
}

Curve<double> initial_curve(const InitialSpec& spec, const Grid& grid) {
  if (spec.kind == InitialSpec::Kind::File) {
    Curve<double> c = read_curve_csv(spec.path);
    if (!(c.grid() == grid)) {
      throw InvalidParameter("curve file " + spec.path + " has " + std::to_string(c.grid().elements()) +
                             " elements, expected " + std::to_string(grid.elements()));
    }
    return c;
  }
  if (natural_topology(spec) != grid.topology()) {
    throw InvalidParameter("initial data " + to_string(spec) + " needs a " +
                           (grid.closed() ? "open" : "closed") + " grid");
  }
  Curve<double> c(grid);
  switch (spec.kind) {
    case InitialSpec::Kind::Torus:
      c = interpolate<double>(
          [&](double rho) {
            return Point<double>(spec.R + spec.r * std::cos(2 * pi * rho), spec.r * std::sin(2 * pi * rho));
          },
          grid);
      break;
    case InitialSpec::Kind::ManufacturedTorus: {
      const auto ex = manufactured_torus<double>();
      c = interpolate<double>([&](double rho) { return ex.x(rho, 0.0); }, grid);
      break;
    }
    case InitialSpec::Kind::Sphere: {
      const auto ex = shrinking_sphere<double>();
      c = interpolate<double>([&](double rho) { return ex.x(rho, 0.0); }, grid);
      break;
    }
    case InitialSpec::Kind::Disc: c = interpolate<double>(disc_point, grid); break;
    case InitialSpec::Kind::Dumbbell: c = interpolate<double>(dumbbell_point, grid); break;
    case InitialSpec::Kind::Spiral: c = interpolate<double>(spiral_point, grid); break;
    case InitialSpec::Kind::File: break;
  }
  if (!grid.closed()) {
    c.coords()(0, 0) = 0;
    c.coords()(grid.dofs() - 1, 0) = 0;
  }
  return c;
}

}  // namespace axmcf
