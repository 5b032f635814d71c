#pragma once

// Steepest ascent / descent paths of phi(t) = alpha log t + log(1 - z t).
// With z = 1 the same machinery traces psi(w) = alpha log w + log(1 - w) in
// the w = z t plane, which is where the region E = D~1 lives.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hypzero/kernel.hpp"

namespace hypzero {

enum class Direction { Ascent, Descent };
enum class Terminal { Endpoint0, Endpoint1, EndpointInfinity, SaddleReached, Truncated };

std::string to_string(Direction d);
std::string to_string(Terminal t);
Direction direction_from_string(const std::string& s);
Terminal terminal_from_string(const std::string& s);

struct StopRule {
  /// Stop when within this distance of t = 0 or t = 1/z.
  double branch_radius = 1e-8;
  double max_arclength = 1e3;
  /// Stop as EndpointInfinity beyond this |t|; 0 selects 10 (1 + |1/z|).
  double infinity_radius = 0.0;
  /// Stop as SaddleReached within this distance of t0; 0 disables.
  double saddle_radius = 0.0;
  /// Newton tolerance on Im phi after every step.
  double corrector_tol = 1e-12;
  /// Step cap as a fraction of the distance to the nearest singular point.
  double step_fraction = 0.25;
  size_t max_steps = 400000;
};

/// A traced steepest path. phases[i] is phi continued to points[i].
struct PathTrace {
  std::vector<cplx> points;
  std::vector<PhiState> phases;
  Direction direction = Direction::Descent;
  Terminal terminal = Terminal::Truncated;
  double arclength = 0.0;
  /// Smallest |t - t0| seen along the path.
  double min_saddle_distance = 0.0;

  /// max |Im phi(p) - Im phi(start)| over the path, recorded when traced.
  double im_drift = 0.0;

  double im_phase_drift() const { return im_drift; }
  /// Recomputes im_drift from `phases`.
  void update_drift();
};

/// Integrates dt/ds = +-conj(phi')/|phi'| from `start` with an embedded
/// Bogacki-Shampine predictor and a Newton corrector back onto the level line
/// of Im phi. `z_or_one` is the z of phi (pass 1 to trace psi). The phase is
/// continued from `initial_branch`, or from the principal branch at `start`.
PathTrace trace_flow(cplx start, cplx z_or_one, const Alpha& alpha, Direction direction,
                     const StopRule& stop = {},
                     std::optional<PhiState> initial_branch = std::nullopt);

struct SaddleDirections {
  std::array<cplx, 2> descent;
  std::array<cplx, 2> ascent;
};

/// Unit tangents at t0 from the local quadratic model phi''(t0) (t - t0)^2 / 2.
SaddleDirections saddle_directions(cplx z, const Alpha& alpha);

enum class Region { InE, NotInE, Boundary };
std::string to_string(Region r);
Region region_from_string(const std::string& s);

struct RegionLabel {
  Region label = Region::Boundary;
  /// Closest approach of the psi-descent path from z to the saddle w0
  /// (0 for Boundary).
  double margin = 0.0;
};

struct ClassifyOptions {
  double boundary_tol = 1e-6;
  double branch_radius = 1e-8;
};

/// Follows the descent flow of psi from w = z: ending at w = 1 means z is in
/// E (= D~1), ending at w = 0 means it is not, passing within boundary_tol
/// of w0 = alpha/(alpha+1) means it sits on the separatrix.
RegionLabel classify_region(cplx z, const Alpha& alpha, const ClassifyOptions& options = {});

/// Certificate that E(s) = eta - 2 eta x s + (-x + eta r^2) s^2 + r^2 s^3,
/// r^2 = x^2 + y^2, stays nonnegative on s >= 0 for z = x + i y with x <= 0.
struct CubicCertificate {
  bool certified = false;
  std::array<double, 4> coefficients{};  ///< E(s) = sum c_k s^k
  std::vector<double> stationary_points;  ///< real roots of E'(s) in s >= 0
  std::vector<double> stationary_values;
  double min_value = 0.0;  ///< min of E over s >= 0
  double argmin = 0.0;
};

CubicCertificate halfplane_zero_free_check(cplx z, const Alpha& alpha);

/// Re of the derivative of psi along s -> s z, multiplied by s |1 - s z|^2:
/// eta - (2 eta + 1) x s + (eta + 1) r^2 s^2. Positive on s > 0 means the
/// segment [0, z] is ascending for |w^alpha (1 - w)|.
double ray_ascent_rate(double s, cplx z, const Alpha& alpha);

/// The two ascent paths of psi leaving w0; together they bound D~0 and D~1.
std::array<PathTrace, 2> separatrices(const Alpha& alpha, const StopRule& stop = {});

void to_json(nlohmann::json& j, const PathTrace& trace);
/// Restores points, direction and terminal. Phases are not serialized.
PathTrace path_trace_from_json(const nlohmann::json& j);

}  // namespace hypzero
