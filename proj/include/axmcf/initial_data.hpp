#pragma once

#include <string>

#include "axmcf/fe_space.hpp"

namespace axmcf {

/// Generating curve at t = 0.
struct InitialSpec {
  enum class Kind { Torus, ManufacturedTorus, Sphere, Disc, Dumbbell, Spiral, File };
  Kind kind = Kind::Torus;
  double R = 1;    ///< torus centre distance
  double r = 0.5;  ///< torus tube radius
  std::string path;
};

/// Parses "torus:r=0.5", "torus:R=2,r=0.5", "manufactured-torus", "sphere",
/// "disc", "dumbbell", "spiral" or "file:PATH".
InitialSpec parse_initial_spec(const std::string& text);

std::string to_string(const InitialSpec& spec);

/// Topology the generator produces. For files this reads the file.
Topology natural_topology(const InitialSpec& spec);

/// Grid for the generator: J elements with its natural topology, or the
/// file's own grid.
Grid initial_grid(const InitialSpec& spec, int J);

/// Nodal interpolant of the generator on `grid`; open-curve endpoints are put
/// exactly on the axis. File curves must have grid.dofs() nodes.
Curve<double> initial_curve(const InitialSpec& spec, const Grid& grid);

}  // namespace axmcf
