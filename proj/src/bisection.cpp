#include "axmcf/bisection.hpp"

#include <cmath>
#include <limits>

namespace axmcf {

BisectionCandidate classify_radius(const BisectionConfig& cfg, double r) {
  RunConfig run;
  run.J = cfg.J;
  run.dt = cfg.dt;
  run.T = std::numeric_limits<double>::infinity();
  run.scheme = cfg.scheme;
  run.initial.kind = InitialSpec::Kind::Torus;
  run.initial.R = cfg.R;
  run.initial.r = r;
  run.thresholds = cfg.thresholds;
  run.record_series = false;
  run.max_steps = cfg.max_steps > 0 ? cfg.max_steps : static_cast<long>(std::ceil(1 / cfg.dt));
  EvolutionResult res;
  try {
    res = run_evolution(run);
  } catch (const StepFailure& e) {
    throw Inconclusive(r, "r = " + format_number(r) + ": " + e.what());
  }
  if (res.verdict.kind == SingularityKind::None) {
    throw Inconclusive(r, "r = " + format_number(r) + ": no singularity after " + std::to_string(res.steps) + " steps");
  }
  return {r, res.verdict.kind, res.verdict.time, res.steps};
}

BisectionResult bisect_critical_radius(const BisectionConfig& cfg) {
  if (!(cfg.lo > 0 && cfg.lo < cfg.hi && cfg.hi < cfg.R)) throw InvalidParameter("bracket must satisfy 0 < lo < hi < R");
  if (!(cfg.tol > 0)) throw InvalidParameter("tolerance must be positive");
  BisectionResult out;
  out.log.push_back(classify_radius(cfg, cfg.lo));
  out.log.push_back(classify_radius(cfg, cfg.hi));
  if (out.log[0].kind != SingularityKind::ShrinksToCircle || out.log[1].kind != SingularityKind::HoleCloses) {
    throw InvalidBracket("bracket [" + format_number(cfg.lo) + ", " + format_number(cfg.hi) + "] gives " +
                         to_string(out.log[0].kind) + " / " + to_string(out.log[1].kind) +
                         ", expected shrinks-to-circle / hole-closes");
  }
  out.r_lo = cfg.lo;
  out.r_hi = cfg.hi;
  while (out.r_hi - out.r_lo > cfg.tol) {
    const double mid = (out.r_lo + out.r_hi) / 2;
    const BisectionCandidate c = classify_radius(cfg, mid);
    out.log.push_back(c);
    if (c.kind == SingularityKind::ShrinksToCircle) out.r_lo = mid;
    else if (c.kind == SingularityKind::HoleCloses) out.r_hi = mid;
    else throw Inconclusive(mid, "r = " + format_number(mid) + ": unexpected verdict " + to_string(c.kind));
  }
  return out;
}

}  // namespace axmcf
