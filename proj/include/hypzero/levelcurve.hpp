#pragma once

// The limiting curve {w : |w^alpha (1 - w)| = c}, c = level_constant(alpha),
// traced as the level line Re psi = log c from the crossing point
// w0 = alpha / (alpha + 1).

#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hypzero/flows.hpp"
#include "hypzero/kernel.hpp"

namespace hypzero {

struct LevelArc {
  std::vector<cplx> points;  ///< starts at w0; ends at w0 when closed
  Region label = Region::Boundary;
  bool closed = false;
  /// Stopped at the length cap, near w = 0, far out, or on corrector failure.
  /// Pieces cut at a separatrix carry stop_reason "crosses a separatrix".
  bool truncated = false;
  std::string stop_reason;
};

struct LevelCurve {
  Alpha alpha{1.0, 0.0};
  double constant = 0.0;
  cplx crossing_point;
  double resolution = 0.0;
  std::vector<LevelArc> arcs;
};

struct LevelCurveOptions {
  /// Newton tolerance on |Re psi - log c|.
  double corrector_tol = 1e-13;
  /// Per-arc length cap; 0 selects 20 (1 + |w0|).
  double max_arclength = 0.0;
  /// Arcs stop when |w| drops below this or exceeds far_radius.
  double near_zero = 1e-6;
  double far_radius = 20.0;
};

/// Traces the four branches leaving w0 and drops the ones that retrace a
/// loop already found. `resolution` is the arclength step (0 selects
/// 1e-3 |w0|). A branch that changes side of a separatrix is cut there and
/// each piece is labelled with classify_region.
LevelCurve trace_level_curve(const Alpha& alpha, double resolution = 0.0,
                             const LevelCurveOptions& options = {});

struct DistanceSummary {
  std::vector<double> distances;
  double max = 0.0;
  double mean = 0.0;
};

/// Distance from each point to the nearest segment of the selected arcs
/// (all arcs, or only those labelled InE). Throws RegionError when the
/// selection is empty.
DistanceSummary distance_to_curve(std::span<const cplx> points, const LevelCurve& curve,
                                  bool restrict_to_E = true);

void to_json(nlohmann::json& j, const LevelCurve& c);
void from_json(const nlohmann::json& j, LevelCurve& c);

}  // namespace hypzero
