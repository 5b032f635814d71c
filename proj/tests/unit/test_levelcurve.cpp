#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "hypzero/errors.hpp"
#include "hypzero/levelcurve.hpp"
#include "hypzero/saddle.hpp"

using namespace hypzero;

namespace {

const LevelArc* closed_in_E(const LevelCurve& c) {
  for (const LevelArc& a : c.arcs) {
    if (a.label == Region::InE && a.closed) return &a;
  }
  return nullptr;
}

double min_vertex_distance(cplx p, const LevelArc& arc) {
  double best = std::numeric_limits<double>::infinity();
  for (const cplx& v : arc.points) best = std::min(best, std::abs(p - v));
  return best;
}

}  // namespace

TEST_CASE("alpha = 1: the right loop of the lemniscate") {
  const LevelCurve c = trace_level_curve(Alpha(1, 0));
  CHECK(c.constant == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(std::abs(c.crossing_point - cplx(0.5, 0.0)) < 1e-15);
  const LevelArc* loop = closed_in_E(c);
  REQUIRE(loop != nullptr);
  double lo = 1e9, hi = -1e9;
  for (const cplx& w : loop->points) {
    lo = std::min(lo, w.real());
    hi = std::max(hi, w.real());
    CHECK(std::abs(std::abs(w * (1.0 - w)) - 0.25) <= 1e-9 * 0.25);
  }
  CHECK(lo >= 0.5 - 1e-12);
  CHECK(hi == doctest::Approx(0.5 + std::sqrt(0.5)).epsilon(1e-6));
}

TEST_CASE("alpha = 2: constant and crossing point") {
  const LevelCurve c = trace_level_curve(Alpha(2, 0));
  CHECK(c.constant == doctest::Approx(4.0 / 27.0).epsilon(1e-14));
  CHECK(std::abs(c.crossing_point - cplx(2.0 / 3.0, 0.0)) < 1e-15);
  for (const LevelArc& arc : c.arcs) {
    for (const cplx& w : arc.points) {
      CHECK(std::abs(std::abs(w * w * (1.0 - w)) - c.constant) <= 1e-9 * c.constant);
    }
  }
}

TEST_CASE("real alpha curves are symmetric under conjugation") {
  for (double k : {1.0, 2.0, 0.5}) {
    const LevelCurve c = trace_level_curve(Alpha(k, 0));
    for (const LevelArc& arc : c.arcs) {
      if (arc.truncated) continue;
      std::vector<cplx> mirrored;
      for (const cplx& w : arc.points) mirrored.push_back(std::conj(w));
      const DistanceSummary d = distance_to_curve(mirrored, c, false);
      CHECK(d.max <= c.resolution);
    }
  }
}

TEST_CASE("complex alpha: vertices satisfy the level equation and the saddle identity") {
  for (const Alpha& a : {Alpha(1, 1), Alpha(2, -1)}) {
    const LevelCurve c = trace_level_curve(a);
    const LevelArc* arc = closed_in_E(c);
    REQUIRE(arc != nullptr);
    for (size_t i = 0; i < arc->points.size(); i += 17) {
      const cplx w = arc->points[i];
      CHECK(std::abs(phi(w, 1.0, a).value.real() - std::log(c.constant)) <= 1e-9);
      if (std::abs(w - c.crossing_point) < 1e-3) continue;
      // |g(t0) z^alpha| at z = w through the saddle data.
      const SaddleData s = saddle_point(w, a);
      const double g = std::exp(s.log_g_at_t0.continued().real() + (a.value() * principal_log(w)).real());
      CHECK(std::abs(g - c.constant) <= 1e-8 * c.constant);
    }
  }
}

TEST_CASE("distance queries") {
  const LevelCurve c = trace_level_curve(Alpha(1, 1));
  const LevelArc* arc = closed_in_E(c);
  REQUIRE(arc != nullptr);

  // Points on the polyline itself, including segment midpoints.
  std::vector<cplx> on;
  for (size_t i = 0; i + 1 < arc->points.size(); i += 23) {
    on.push_back(arc->points[i]);
    on.push_back(0.5 * (arc->points[i] + arc->points[i + 1]));
  }
  CHECK(distance_to_curve(on, c).max <= c.resolution);

  // Far points against the brute-force vertex minimum.
  double lo_re = 1e9, hi_re = -1e9;
  for (const cplx& w : arc->points) {
    lo_re = std::min(lo_re, w.real());
    hi_re = std::max(hi_re, w.real());
  }
  const double diameter = hi_re - lo_re;
  const std::vector<cplx> far{cplx(hi_re + 2.0 * diameter, 0.1), cplx(lo_re, 2.0 * diameter + 1.0)};
  const DistanceSummary d = distance_to_curve(far, c);
  for (size_t i = 0; i < far.size(); ++i) {
    const double brute = min_vertex_distance(far[i], *arc);
    CHECK(d.distances[i] <= brute + 1e-15);
    CHECK(d.distances[i] >= brute - c.resolution);
  }
  CHECK(d.mean == doctest::Approx(0.5 * (d.distances[0] + d.distances[1])));

  LevelCurve empty = c;
  empty.arcs.clear();
  CHECK_THROWS_AS(distance_to_curve(far, empty), RegionError);
  LevelCurve outside = c;
  for (LevelArc& a : outside.arcs) a.label = Region::NotInE;
  CHECK_THROWS_AS(distance_to_curve(far, outside), RegionError);
  CHECK_NOTHROW(distance_to_curve(far, outside, false));
}

TEST_CASE("every piece lies on one side of the separatrices") {
  const Alpha a(1, 1);
  const LevelCurve c = trace_level_curve(a);
  int in_e = 0;
  for (const LevelArc& arc : c.arcs) {
    if (arc.label == Region::InE) ++in_e;
    const size_t m = arc.points.size();
    for (double f : {0.2, 0.5, 0.8}) {
      const cplx w = arc.points[std::min(m - 1, static_cast<size_t>(f * static_cast<double>(m)))];
      const RegionLabel r = classify_region(w, a);
      if (r.label != Region::Boundary && r.margin > 1e-3) CHECK(r.label == arc.label);
    }
  }
  CHECK(in_e >= 1);
}

TEST_CASE("level curve JSON round trip") {
  const LevelCurve c = trace_level_curve(Alpha(2, -1), 0.01);
  const nlohmann::json j = c;
  const LevelCurve back = j.get<LevelCurve>();
  CHECK(back.alpha == c.alpha);
  CHECK(back.constant == c.constant);
  REQUIRE(back.arcs.size() == c.arcs.size());
  for (size_t i = 0; i < c.arcs.size(); ++i) {
    CHECK(back.arcs[i].points == c.arcs[i].points);
    CHECK(back.arcs[i].label == c.arcs[i].label);
    CHECK(back.arcs[i].stop_reason == c.arcs[i].stop_reason);
  }
}
