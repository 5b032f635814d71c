#include "hypzero/flows.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hypzero/errors.hpp"
#include "hypzero/saddle.hpp"

namespace hypzero {

std::string to_string(Direction d) { return d == Direction::Ascent ? "ascent" : "descent"; }

std::string to_string(Terminal t) {
  switch (t) {
    case Terminal::Endpoint0:
      return "endpoint0";
    case Terminal::Endpoint1:
      return "endpoint1";
    case Terminal::EndpointInfinity:
      return "infinity";
    case Terminal::SaddleReached:
      return "saddle";
    case Terminal::Truncated:
      break;
  }
  return "truncated";
}

Direction direction_from_string(const std::string& s) {
  if (s == "ascent") return Direction::Ascent;
  if (s == "descent") return Direction::Descent;
  throw DomainError("unknown direction '" + s + "'");
}

Terminal terminal_from_string(const std::string& s) {
  for (Terminal t : {Terminal::Endpoint0, Terminal::Endpoint1, Terminal::EndpointInfinity,
                     Terminal::SaddleReached, Terminal::Truncated}) {
    if (to_string(t) == s) return t;
  }
  throw DomainError("unknown terminal '" + s + "'");
}

std::string to_string(Region r) {
  switch (r) {
    case Region::InE:
      return "in_E";
    case Region::NotInE:
      return "not_in_E";
    case Region::Boundary:
      break;
  }
  return "boundary";
}

Region region_from_string(const std::string& s) {
  if (s == "in_E") return Region::InE;
  if (s == "not_in_E") return Region::NotInE;
  if (s == "boundary") return Region::Boundary;
  throw DomainError("unknown region label '" + s + "'");
}

void PathTrace::update_drift() {
  im_drift = 0.0;
  if (phases.empty()) {
    return;
  }
  const double target = phases.front().value.imag();
  for (const PhiState& p : phases) {
    im_drift = std::max(im_drift, std::abs(p.value.imag() - target));
  }
}

namespace {

struct Corrected {
  cplx t;
  PhiState phase;
};

/// Newton projection onto Im phi = target, continuing the phase from `from`.
std::optional<Corrected> project_to_level(cplx guess, double target, cplx z, const Alpha& alpha,
                                          const PhiState& from, double tol, double max_move) {
  cplx t = guess;
  PhiState ph = phi(t, z, alpha, from);
  // Im phi cannot be resolved better than its rounding level, which blows up
  // next to t = 1/z.
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double attainable =
      8.0 * eps * (std::abs(alpha.value()) + std::abs(z * t) / std::abs(1.0 - z * t) + std::abs(target));
  tol = std::max(tol, attainable);
  bool polished = false;
  for (int it = 0; it < 12; ++it) {
    const double d = ph.value.imag() - target;
    if (std::abs(d) <= tol) {
      if (polished || std::abs(d) <= 4.0 * std::numeric_limits<double>::epsilon() *
                                           std::max(1.0, std::abs(target))) {
        return Corrected{t, ph};
      }
      polished = true;
    }
    const cplx fp = phi_prime(t, z, alpha);
    const cplx delta = cplx(0.0, -d) / fp;
    if (!std::isfinite(delta.real()) || !std::isfinite(delta.imag()) ||
        std::abs(t + delta - guess) > max_move) {
      return std::nullopt;
    }
    t += delta;
    ph = phi(t, z, alpha, from);
  }
  if (std::abs(ph.value.imag() - target) <= tol) {
    return Corrected{t, ph};
  }
  return std::nullopt;
}

}  // namespace

PathTrace trace_flow(cplx start, cplx z_or_one, const Alpha& alpha, Direction direction,
                     const StopRule& stop, std::optional<PhiState> initial_branch) {
  const cplx z = z_or_one;
  if (z == cplx(0.0, 0.0)) {
    throw DomainError("trace_flow needs z != 0");
  }
  const cplx pole = 1.0 / z;
  const cplx t0 = crossing_point(alpha) / z;
  const double br = stop.branch_radius;
  if (std::abs(start) < br || std::abs(start - pole) < br) {
    throw DomainError("trace_flow: start lies within the stop radius of a branch point");
  }
  const double r_inf =
      stop.infinity_radius > 0.0 ? stop.infinity_radius : 10.0 * (1.0 + std::abs(pole));
  const double sigma = direction == Direction::Ascent ? 1.0 : -1.0;

  PathTrace trace;
  trace.direction = direction;
  cplx t = start;
  PhiState ph = initial_branch ? phi(t, z, alpha, *initial_branch) : phi(t, z, alpha);
  const double target = ph.value.imag();
  trace.points.push_back(t);
  trace.phases.push_back(ph);
  trace.min_saddle_distance = std::abs(t - t0);

  auto velocity = [&](cplx p) {
    const cplx fp = phi_prime(p, z, alpha);
    const double m = std::abs(fp);
    if (m == 0.0 || !std::isfinite(m)) {
      throw SingularPointError("trace_flow: gradient vanished (saddle point)");
    }
    return sigma * std::conj(fp) / m;
  };
  auto local_scale = [&](cplx p) {
    double s = std::min(std::abs(p), std::abs(p - pole));
    const double ds = std::abs(p - t0);
    if (ds > 0.0) {
      s = std::min(s, ds);
    }
    return s;
  };

  double h = 0.1 * stop.step_fraction * local_scale(t);
  size_t steps = 0;
  for (;;) {
    if (std::abs(t) < br) {
      trace.terminal = Terminal::Endpoint0;
      break;
    }
    if (std::abs(t - pole) < br) {
      trace.terminal = Terminal::Endpoint1;
      break;
    }
    if (std::abs(t) > r_inf) {
      trace.terminal = Terminal::EndpointInfinity;
      break;
    }
    if (stop.saddle_radius > 0.0 && std::abs(t - t0) < stop.saddle_radius) {
      trace.terminal = Terminal::SaddleReached;
      break;
    }
    if (trace.arclength > stop.max_arclength || steps >= stop.max_steps) {
      trace.terminal = Terminal::Truncated;
      break;
    }
    ++steps;

    const double scale = local_scale(t);
    const double cap = stop.step_fraction * scale;
    const double tol = 1e-6 * scale;
    h = std::min(h, cap);
    if (h < 1e-14 * std::max(scale, 1e-300) || h <= 0.0) {
      throw TracingError("trace_flow: step size underflow near t = (" + std::to_string(t.real()) +
                         ", " + std::to_string(t.imag()) + ")");
    }

    cplx k1, k2, k3, k4, tn;
    try {
      k1 = velocity(t);
      k2 = velocity(t + 0.5 * h * k1);
      k3 = velocity(t + 0.75 * h * k2);
      tn = t + h * (2.0 * k1 + 3.0 * k2 + 4.0 * k3) / 9.0;
      k4 = velocity(tn);
    } catch (const SingularPointError&) {
      h *= 0.5;
      continue;
    }
    const double err =
        h * std::abs(-5.0 / 72.0 * k1 + 1.0 / 12.0 * k2 + 1.0 / 9.0 * k3 - 1.0 / 8.0 * k4);
    const double grow = err > 0.0 ? 0.9 * std::cbrt(tol / err) : 2.0;
    if (err > tol) {
      h *= std::max(0.2, grow);
      continue;
    }

    std::optional<Corrected> c;
    try {
      c = project_to_level(tn, target, z, alpha, ph, stop.corrector_tol, 0.5 * h);
    } catch (const SingularPointError&) {
      c.reset();
    }
    if (!c || sigma * (c->phase.value.real() - ph.value.real()) <= 0.0) {
      h *= 0.5;
      continue;
    }

    trace.arclength += std::abs(c->t - t);
    t = c->t;
    ph = c->phase;
    trace.points.push_back(t);
    trace.phases.push_back(ph);
    trace.min_saddle_distance = std::min(trace.min_saddle_distance, std::abs(t - t0));
    h *= std::min(2.0, std::max(0.2, grow));
  }
  trace.update_drift();
  return trace;
}

SaddleDirections saddle_directions(cplx z, const Alpha& alpha) {
  const SaddleData s = saddle_point(z, alpha);
  const cplx descent = std::polar(1.0, 0.5 * (kPi - s.phi_pp_arg));
  const cplx ascent = std::polar(1.0, -0.5 * s.phi_pp_arg);
  return {{descent, -descent}, {ascent, -ascent}};
}

RegionLabel classify_region(cplx z, const Alpha& alpha, const ClassifyOptions& options) {
  if (z == cplx(0.0, 0.0) || z == cplx(1.0, 0.0)) {
    throw DomainError("classify_region: z must differ from the branch points 0 and 1");
  }
  const cplx w0 = crossing_point(alpha);
  if (std::abs(z - w0) < options.boundary_tol) {
    return {Region::Boundary, 0.0};
  }
  if (std::abs(z) < options.branch_radius) {
    return {Region::NotInE, std::abs(z - w0)};
  }
  if (std::abs(z - 1.0) < options.branch_radius) {
    return {Region::InE, std::abs(z - w0)};
  }
  StopRule stop;
  stop.branch_radius = options.branch_radius;
  stop.saddle_radius = options.boundary_tol;
  stop.infinity_radius = 100.0 * (1.0 + std::abs(z));
  stop.max_arclength = 1e4 * (1.0 + std::abs(z));
  const PathTrace trace = trace_flow(z, 1.0, alpha, Direction::Descent, stop);
  switch (trace.terminal) {
    case Terminal::Endpoint1:
      return {Region::InE, trace.min_saddle_distance};
    case Terminal::Endpoint0:
      return {Region::NotInE, trace.min_saddle_distance};
    case Terminal::SaddleReached:
      return {Region::Boundary, 0.0};
    default:
      break;
  }
  throw IndeterminateError("classify_region: descent from z ended as '" + to_string(trace.terminal) +
                           "' without reaching 0, 1 or the saddle");
}

CubicCertificate halfplane_zero_free_check(cplx z, const Alpha& alpha) {
  const double x = z.real();
  const double y = z.imag();
  if (x > 0.0) {
    throw DomainError("halfplane_zero_free_check requires Re z <= 0");
  }
  const double eta = alpha.eta();
  const double r2 = x * x + y * y;
  CubicCertificate cert;
  cert.coefficients = {eta, -2.0 * eta * x, -x + eta * r2, r2};
  const auto& c = cert.coefficients;
  auto value = [&](double s) { return ((c[3] * s + c[2]) * s + c[1]) * s + c[0]; };

  // E'(s) = 3 c3 s^2 + 2 c2 s + c1
  const double qa = 3.0 * c[3];
  const double qb = 2.0 * c[2];
  const double qc = c[1];
  if (qa != 0.0) {
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc >= 0.0) {
      const double sq = std::sqrt(disc);
      // Numerically stable pair of roots.
      const double q = -0.5 * (qb + std::copysign(sq, qb));
      std::vector<double> roots;
      if (q != 0.0) {
        roots.push_back(q / qa);
        roots.push_back(qc / q);
      } else {
        roots.push_back(0.0);
      }
      std::sort(roots.begin(), roots.end());
      for (double s : roots) {
        if (s >= 0.0) {
          cert.stationary_points.push_back(s);
          cert.stationary_values.push_back(value(s));
        }
      }
    }
  } else if (qb != 0.0) {
    const double s = -qc / qb;
    if (s >= 0.0) {
      cert.stationary_points.push_back(s);
      cert.stationary_values.push_back(value(s));
    }
  }
  cert.min_value = value(0.0);
  cert.argmin = 0.0;
  for (size_t i = 0; i < cert.stationary_points.size(); ++i) {
    if (cert.stationary_values[i] < cert.min_value) {
      cert.min_value = cert.stationary_values[i];
      cert.argmin = cert.stationary_points[i];
    }
  }
  cert.certified = cert.min_value >= 0.0;
  return cert;
}

double ray_ascent_rate(double s, cplx z, const Alpha& alpha) {
  const double x = z.real();
  const double r2 = std::norm(z);
  const double eta = alpha.eta();
  return eta - (2.0 * eta + 1.0) * x * s + (eta + 1.0) * r2 * s * s;
}

std::array<PathTrace, 2> separatrices(const Alpha& alpha, const StopRule& stop) {
  const cplx w0 = crossing_point(alpha);
  const SaddleDirections dirs = saddle_directions(1.0, alpha);
  const double offset = 1e-6 * std::abs(w0);
  const PhiState at_saddle = phi(w0, 1.0, alpha);
  std::array<PathTrace, 2> out;
  for (size_t i = 0; i < 2; ++i) {
    const cplx start = w0 + offset * dirs.ascent[i];
    PathTrace tr = trace_flow(start, 1.0, alpha, Direction::Ascent, stop, at_saddle);
    tr.points.insert(tr.points.begin(), w0);
    tr.phases.insert(tr.phases.begin(), at_saddle);
    tr.arclength += offset;
    tr.min_saddle_distance = 0.0;
    tr.update_drift();
    out[i] = std::move(tr);
  }
  return out;
}

void to_json(nlohmann::json& j, const PathTrace& trace) {
  nlohmann::json pts = nlohmann::json::array();
  for (const cplx& p : trace.points) {
    pts.push_back({p.real(), p.imag()});
  }
  j = {{"direction", to_string(trace.direction)},
       {"terminal", to_string(trace.terminal)},
       {"points", std::move(pts)},
       {"im_phase_drift", trace.im_phase_drift()}};
}

PathTrace path_trace_from_json(const nlohmann::json& j) {
  PathTrace t;
  t.direction = direction_from_string(j.at("direction").get<std::string>());
  t.terminal = terminal_from_string(j.at("terminal").get<std::string>());
  for (const auto& p : j.at("points")) {
    t.points.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
  }
  t.im_drift = j.at("im_phase_drift").get<double>();
  for (size_t i = 1; i < t.points.size(); ++i) {
    t.arclength += std::abs(t.points[i] - t.points[i - 1]);
  }
  return t;
}

}  // namespace hypzero
