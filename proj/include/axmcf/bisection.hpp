#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "axmcf/evolution.hpp"

namespace axmcf {

struct BisectionConfig {
  int J = 256;
  double dt = 1e-4;
  double lo = 0.5;
  double hi = 0.7;
  double tol = 1e-3;
  double R = 1;
  Scheme scheme = Scheme::P;
  Thresholds<double> thresholds;
  long max_steps = 0;  ///< 0: enough steps to reach t = 1
};

struct BisectionCandidate {
  double r = 0;
  SingularityKind kind = SingularityKind::None;
  double time = 0;
  long steps = 0;
};

/// Invariant: verdict(r_lo) is ShrinksToCircle, verdict(r_hi) is HoleCloses.
struct BisectionResult {
  double r_lo = 0;
  double r_hi = 0;
  std::vector<BisectionCandidate> log;
};

class InvalidBracket : public InvalidParameter {
 public:
  using InvalidParameter::InvalidParameter;
};

/// A torus evolution ended without a recognised singularity.
class Inconclusive : public std::runtime_error {
 public:
  Inconclusive(double r, const std::string& what) : std::runtime_error(what), r_(r) {}
  double r() const noexcept { return r_; }

 private:
  double r_;
};

/// Evolves the torus with tube radius r until a singularity is detected.
BisectionCandidate classify_radius(const BisectionConfig& cfg, double r);

BisectionResult bisect_critical_radius(const BisectionConfig& cfg);

}  // namespace axmcf
