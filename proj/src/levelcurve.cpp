#include "hypzero/levelcurve.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>

#include "hypzero/errors.hpp"
#include "hypzero/saddle.hpp"

namespace hypzero {

namespace {

struct Vertex {
  cplx w;
  PhiState state;
};

/// Newton onto Re psi = level along the gradient direction; phase continued
/// from `from`.
std::optional<Vertex> correct(cplx w, const PhiState& from, const Alpha& alpha, double level,
                              double tol, double max_move) {
  const cplx start = w;
  for (int it = 0; it < 30; ++it) {
    PhiState s;
    try {
      s = phi(w, 1.0, alpha, from);
    } catch (const SingularPointError&) {
      return std::nullopt;
    }
    const double r = s.value.real() - level;
    if (std::abs(r) <= tol) {
      return Vertex{w, s};
    }
    const cplx d = phi_prime(w, 1.0, alpha);
    const double dn = std::norm(d);
    if (!(dn > 0.0)) {
      return std::nullopt;
    }
    // Minimum-norm step for the real equation Re psi(w) = level.
    w -= r * std::conj(d) / dn;
    if (std::abs(w - start) > max_move) {
      return std::nullopt;
    }
  }
  return std::nullopt;
}

struct BranchResult {
  LevelArc arc;
  std::optional<cplx> return_direction;  ///< unit vector from w0 to the last vertex
};

BranchResult trace_branch(const Alpha& alpha, cplx w0, const PhiState& at_w0, cplx dir,
                          double level, double h, const LevelCurveOptions& opt) {
  BranchResult out;
  LevelArc& arc = out.arc;
  arc.points.push_back(w0);
  const double max_len = opt.max_arclength > 0.0 ? opt.max_arclength : 20.0 * (1.0 + std::abs(w0));
  const double tol = opt.corrector_tol * std::max(1.0, std::abs(level));

  auto first = correct(w0 + h * dir, at_w0, alpha, level, tol, 0.5 * h);
  if (!first) {
    arc.truncated = true;
    arc.stop_reason = "corrector failed at the crossing point";
    return out;
  }
  Vertex cur = *first;
  arc.points.push_back(cur.w);
  cplx heading = dir;
  double length = h;
  double step = h;
  for (;;) {
    const cplx d = phi_prime(cur.w, 1.0, alpha);
    cplx tangent = cplx(0.0, 1.0) * std::conj(d) / std::abs(d);
    if ((tangent * std::conj(heading)).real() < 0.0) {
      tangent = -tangent;
    }
    auto next = correct(cur.w + step * tangent, cur.state, alpha, level, tol, 0.5 * step);
    if (!next || std::abs(next->w - cur.w) > 2.0 * step) {
      step *= 0.5;
      if (step < 1e-6 * h) {
        arc.truncated = true;
        arc.stop_reason = "corrector diverged";
        break;
      }
      continue;
    }
    heading = (next->w - cur.w) / std::abs(next->w - cur.w);
    length += std::abs(next->w - cur.w);
    cur = *next;
    arc.points.push_back(cur.w);
    step = std::min(h, 2.0 * step);

    if (length > 4.0 * h && std::abs(cur.w - w0) < 1.5 * h) {
      out.return_direction = (cur.w - w0) / std::abs(cur.w - w0);
      arc.points.push_back(w0);
      arc.closed = true;
      break;
    }
    if (std::abs(cur.w) < opt.near_zero) {
      arc.truncated = true;
      arc.stop_reason = "reached w = 0";
      break;
    }
    if (std::abs(cur.w) > opt.far_radius) {
      arc.truncated = true;
      arc.stop_reason = "left the far radius";
      break;
    }
    if (length > max_len) {
      arc.truncated = true;
      arc.stop_reason = "length cap";
      break;
    }
  }
  return out;
}

std::optional<Region> label_at(cplx w, const Alpha& alpha) {
  try {
    const Region r = classify_region(w, alpha).label;
    if (r != Region::Boundary) {
      return r;
    }
  } catch (const Error&) {
  }
  return std::nullopt;
}

/// Splits an arc where it changes side of a separatrix. With complex alpha
/// the continued level set can pass onto another sheet of psi and cross the
/// separatrices there, so one sample per arc is not enough.
std::vector<LevelArc> split_by_region(LevelArc arc, const Alpha& alpha) {
  const size_t m = arc.points.size();
  if (m < 3) {
    arc.label = Region::Boundary;
    return {std::move(arc)};
  }
  // Labels at evenly spaced interior indices; the crossing point itself is
  // on the separatrix.
  const size_t samples = std::min<size_t>(m - 2, 256);
  std::vector<size_t> idx;
  std::vector<std::optional<Region>> lab;
  for (size_t k = 0; k < samples; ++k) {
    const size_t i = 1 + (k * (m - 2)) / samples + (m - 2) / (2 * samples);
    if (!idx.empty() && i == idx.back()) continue;
    idx.push_back(std::min(i, m - 2));
    lab.push_back(label_at(arc.points[idx.back()], alpha));
  }
  // Fill unknown samples from the nearest known neighbour.
  for (size_t k = 1; k < lab.size(); ++k) {
    if (!lab[k]) lab[k] = lab[k - 1];
  }
  for (size_t k = lab.size(); k-- > 1;) {
    if (!lab[k - 1]) lab[k - 1] = lab[k];
  }
  if (!lab.front()) {
    arc.label = Region::Boundary;
    return {std::move(arc)};
  }

  // Cut indices: bisect between samples with different labels.
  std::vector<size_t> cuts;
  std::vector<Region> labels{*lab.front()};
  for (size_t k = 1; k < lab.size(); ++k) {
    if (*lab[k] == *lab[k - 1]) continue;
    size_t lo = idx[k - 1];
    size_t hi = idx[k];
    while (hi - lo > 1) {
      const size_t mid = lo + (hi - lo) / 2;
      const auto r = label_at(arc.points[mid], alpha);
      if (!r) break;
      (*r == *lab[k - 1] ? lo : hi) = mid;
    }
    cuts.push_back(hi);
    labels.push_back(*lab[k]);
  }
  if (cuts.empty()) {
    arc.label = labels.front();
    return {std::move(arc)};
  }
  std::vector<LevelArc> out;
  size_t begin = 0;
  for (size_t c = 0; c <= cuts.size(); ++c) {
    const size_t end = c < cuts.size() ? cuts[c] : m - 1;
    LevelArc piece;
    piece.points.assign(arc.points.begin() + static_cast<std::ptrdiff_t>(begin),
                        arc.points.begin() + static_cast<std::ptrdiff_t>(end) + 1);
    piece.label = labels[c];
    if (c < cuts.size()) {
      piece.stop_reason = "crosses a separatrix";
    } else {
      piece.truncated = arc.truncated;
      piece.stop_reason = arc.stop_reason;
    }
    out.push_back(std::move(piece));
    begin = end;
  }
  return out;
}

double segment_distance(cplx p, cplx a, cplx b) {
  const cplx ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) {
    return std::abs(p - a);
  }
  const double u = std::clamp(((p - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
  return std::abs(p - (a + u * ab));
}

}  // namespace

LevelCurve trace_level_curve(const Alpha& alpha, double resolution, const LevelCurveOptions& options) {
  LevelCurve curve;
  curve.alpha = alpha;
  curve.constant = level_constant(alpha);
  curve.crossing_point = crossing_point(alpha);
  const cplx w0 = curve.crossing_point;
  curve.resolution = resolution > 0.0 ? resolution : 1e-3 * std::abs(w0);
  const double level = std::log(curve.constant);
  const PhiState at_w0 = phi(w0, 1.0, alpha);

  // Re(psi''(w0) d^2) = 0 gives four directions 90 degrees apart.
  const double beta = std::arg(phi_second(w0, 1.0, alpha));
  const double theta = 0.5 * (0.5 * kPi - beta);
  std::array<cplx, 4> dirs;
  for (int k = 0; k < 4; ++k) {
    dirs[static_cast<size_t>(k)] = std::polar(1.0, theta + 0.5 * kPi * k);
  }
  std::array<bool, 4> consumed{};
  for (size_t k = 0; k < 4; ++k) {
    if (consumed[k]) {
      continue;
    }
    consumed[k] = true;
    BranchResult br = trace_branch(alpha, w0, at_w0, dirs[k], level, curve.resolution, options);
    if (br.return_direction) {
      size_t best = 0;
      double best_dot = -2.0;
      for (size_t j = 0; j < 4; ++j) {
        const double dot = (*br.return_direction * std::conj(dirs[j])).real();
        if (dot > best_dot) {
          best_dot = dot;
          best = j;
        }
      }
      consumed[best] = true;
    }
    for (LevelArc& piece : split_by_region(std::move(br.arc), alpha)) {
      curve.arcs.push_back(std::move(piece));
    }
  }
  return curve;
}

DistanceSummary distance_to_curve(std::span<const cplx> points, const LevelCurve& curve,
                                  bool restrict_to_E) {
  std::vector<const LevelArc*> selected;
  for (const LevelArc& a : curve.arcs) {
    if ((!restrict_to_E || a.label == Region::InE) && !a.points.empty()) {
      selected.push_back(&a);
    }
  }
  if (selected.empty()) {
    throw RegionError(restrict_to_E ? "distance_to_curve: no arc labelled in_E"
                                    : "distance_to_curve: the curve has no arcs");
  }
  DistanceSummary out;
  double sum = 0.0;
  for (const cplx& p : points) {
    double best = std::numeric_limits<double>::infinity();
    for (const LevelArc* a : selected) {
      if (a->points.size() == 1) {
        best = std::min(best, std::abs(p - a->points[0]));
      }
      for (size_t i = 0; i + 1 < a->points.size(); ++i) {
        best = std::min(best, segment_distance(p, a->points[i], a->points[i + 1]));
      }
    }
    out.distances.push_back(best);
    out.max = std::max(out.max, best);
    sum += best;
  }
  out.mean = points.empty() ? 0.0 : sum / static_cast<double>(points.size());
  return out;
}

void to_json(nlohmann::json& j, const LevelCurve& c) {
  nlohmann::json arcs = nlohmann::json::array();
  for (const LevelArc& a : c.arcs) {
    nlohmann::json pts = nlohmann::json::array();
    for (const cplx& p : a.points) {
      pts.push_back({p.real(), p.imag()});
    }
    arcs.push_back({{"label", to_string(a.label)},
                    {"closed", a.closed},
                    {"truncated", a.truncated},
                    {"stop_reason", a.stop_reason},
                    {"points", pts}});
  }
  j = {{"alpha", {c.alpha.eta(), c.alpha.zeta()}},
       {"constant", c.constant},
       {"crossing_point", {c.crossing_point.real(), c.crossing_point.imag()}},
       {"resolution", c.resolution},
       {"arcs", arcs}};
}

void from_json(const nlohmann::json& j, LevelCurve& c) {
  const auto& a = j.at("alpha");
  c.alpha = Alpha(a.at(0).get<double>(), a.at(1).get<double>());
  c.constant = j.at("constant").get<double>();
  const auto& w = j.at("crossing_point");
  c.crossing_point = {w.at(0).get<double>(), w.at(1).get<double>()};
  c.resolution = j.at("resolution").get<double>();
  c.arcs.clear();
  for (const auto& ja : j.at("arcs")) {
    LevelArc arc;
    arc.label = region_from_string(ja.at("label").get<std::string>());
    arc.closed = ja.at("closed").get<bool>();
    arc.truncated = ja.at("truncated").get<bool>();
    arc.stop_reason = ja.at("stop_reason").get<std::string>();
    for (const auto& p : ja.at("points")) {
      arc.points.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
    }
    c.arcs.push_back(std::move(arc));
  }
}

}  // namespace hypzero
