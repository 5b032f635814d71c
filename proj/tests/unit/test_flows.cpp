#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "hypzero/errors.hpp"
#include "hypzero/flows.hpp"
#include "hypzero/saddle.hpp"

using namespace hypzero;

namespace {

double polyline_distance(cplx p, const std::vector<cplx>& line) {
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i + 1 < line.size(); ++i) {
    const cplx a = line[i];
    const cplx ab = line[i + 1] - a;
    const double len2 = std::norm(ab);
    const double u = len2 > 0.0 ? std::clamp(((p - a) * std::conj(ab)).real() / len2, 0.0, 1.0) : 0.0;
    best = std::min(best, std::abs(p - (a + u * ab)));
  }
  return best;
}

// Im (k arg w + arg(1 - w)) on the principal branch. For real k the
// separatrix through w0 is where this vanishes.
double separatrix_phase(cplx w, double k) { return k * std::arg(w) + std::arg(1.0 - w); }

}  // namespace

TEST_CASE("descent paths from the saddle end at 0 and at 1/z") {
  const Alpha alphas[] = {Alpha(1, 0), Alpha(2, 0), Alpha(1, 1), Alpha(0.5, 1), Alpha(2, -1)};
  for (const Alpha& a : alphas) {
    for (int i = 0; i < 10; ++i) {
      for (int j = 0; j < 10; ++j) {
        const cplx z(-1.83 + 0.4 * i, -1.87 + 0.4 * j);
        const SaddleData s = saddle_point(z, a);
        const SaddleDirections d = saddle_directions(z, a);
        const double offset = 1e-6 * std::abs(s.t0);
        const PhiState at = phi(s.t0, z, a);
        Terminal ends[2];
        for (size_t k = 0; k < 2; ++k) {
          const PathTrace tr =
              trace_flow(s.t0 + offset * d.descent[k], z, a, Direction::Descent, {}, at);
          ends[k] = tr.terminal;
        }
        const bool ok = (ends[0] == Terminal::Endpoint0 && ends[1] == Terminal::Endpoint1) ||
                        (ends[0] == Terminal::Endpoint1 && ends[1] == Terminal::Endpoint0);
        CHECK_MESSAGE(ok, "z = ", z, " alpha = ", a.value());
      }
    }
  }
}

TEST_CASE("Im phi is conserved along traces") {
  for (const Alpha& a : {Alpha(1, 0), Alpha(1, 1), Alpha(2, -1)}) {
    for (const cplx z : {cplx(0.8, 0.3), cplx(-0.5, 1.0), cplx(1.5, -0.7)}) {
      const cplx start = 0.3 / z + cplx(0.05, 0.02);
      for (Direction dir : {Direction::Ascent, Direction::Descent}) {
        const PathTrace tr = trace_flow(start, z, a, dir);
        CHECK(tr.points.size() > 2);
        CHECK(tr.im_phase_drift() <= 1e-9 * std::max(1.0, tr.arclength));
      }
    }
  }
}

TEST_CASE("psi traces are the phi traces scaled by z") {
  const Alpha a(1, 1);
  for (const cplx z : {cplx(0.9, 0.4), cplx(1.3, -0.6)}) {
    const cplx t_start = 0.25 / z + cplx(0.0, 0.1) / z;
    StopRule stop;
    stop.branch_radius = 1e-4;
    const PathTrace in_t = trace_flow(t_start, z, a, Direction::Descent, stop);
    StopRule wstop = stop;
    wstop.branch_radius = 1e-4 * std::abs(z);
    const PathTrace in_w = trace_flow(z * t_start, 1.0, a, Direction::Descent, wstop);
    REQUIRE(in_t.terminal == in_w.terminal);
    std::vector<cplx> scaled;
    for (const cplx& t : in_t.points) scaled.push_back(z * t);
    double worst = 0.0;
    for (const cplx& w : in_w.points) {
      if (std::abs(w) > 1e-3 && std::abs(w - 1.0) > 1e-3) worst = std::max(worst, polyline_distance(w, scaled));
    }
    for (const cplx& w : scaled) {
      if (std::abs(w) > 1e-3 && std::abs(w - 1.0) > 1e-3) worst = std::max(worst, polyline_distance(w, in_w.points));
    }
    CHECK(worst < 1e-6);
  }
}

TEST_CASE("classify_region for alpha = 1 is the half-plane Re z > 1/2") {
  const Alpha a(1, 0);
  int tested = 0;
  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 10; ++j) {
      const cplx z(-0.5 + 2.5 * (i + 0.5) / 20.0, -1.0 + 2.0 * (j + 0.5) / 10.0);
      const RegionLabel r = classify_region(z, a);
      if (std::abs(z.real() - 0.5) <= 1e-3) continue;
      ++tested;
      CHECK(r.label == (z.real() > 0.5 ? Region::InE : Region::NotInE));
    }
  }
  CHECK(tested > 150);
}

TEST_CASE("classify_region for integer k follows the separatrix k arg w + arg(1 - w) = 0") {
  // The boundary of E is the ascent separatrix from w0; for real k it is
  // the zero set of the phase above, which is only a vertical line at k = 1.
  for (double k : {2.0, 3.0}) {
    const Alpha a(k, 0);
    for (int i = 0; i < 12; ++i) {
      for (int j = 0; j < 6; ++j) {
        const cplx z(-0.4 + 2.2 * (i + 0.5) / 12.0, 0.05 + 1.0 * j / 6.0);
        const double h = separatrix_phase(z, k);
        if (std::abs(h) < 1e-2) continue;
        const RegionLabel up = classify_region(z, a);
        const RegionLabel down = classify_region(std::conj(z), a);
        CHECK(up.label == down.label);
        CHECK_MESSAGE(up.label == (h < 0.0 ? Region::InE : Region::NotInE), "k = ", k, " z = ", z);
      }
    }
  }
}

TEST_CASE("left half-plane points are certified, and outside E for real alpha") {
  for (const Alpha& a : {Alpha(1, 0), Alpha(2, 0), Alpha(1, 1), Alpha(2, -1), Alpha(0.5, 1)}) {
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 5; ++j) {
        const cplx z(-0.1 - 0.6 * i, -1.5 + 0.75 * j);
        if (a.is_real()) CHECK(classify_region(z, a).label == Region::NotInE);
        const CubicCertificate c = halfplane_zero_free_check(z, a);
        CHECK(c.certified);
        CHECK(c.min_value >= 0.0);
        for (double s : {0.01, 0.3, 1.0, 3.0, 10.0}) CHECK(ray_ascent_rate(s, z, a) > 0.0);
      }
    }
  }
  CHECK_THROWS_AS(halfplane_zero_free_check(cplx(0.1, 0.0), Alpha(1, 0)), DomainError);
}

TEST_CASE("complex alpha: some left half-plane points descend to w = 1") {
  // Cross-checked with an independent ODE integration of the same flow.
  CHECK(classify_region(cplx(-0.1, -0.75), Alpha(0.5, 1)).label == Region::InE);
  CHECK(classify_region(cplx(-0.1, -1.5), Alpha(1, 1)).label == Region::InE);
  CHECK(classify_region(cplx(-0.1, 0.75), Alpha(0.5, 1)).label == Region::NotInE);
}

TEST_CASE("cubic certificate agrees with a dense scan") {
  const Alpha a(0.7, 0.3);
  for (const cplx z : {cplx(-0.01, 0.2), cplx(0.0, 2.0), cplx(-3.0, -1.0)}) {
    const CubicCertificate c = halfplane_zero_free_check(z, a);
    double scan = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 20000; ++i) {
      const double s = 20.0 * i / 20000.0;
      double v = 0.0;
      for (int k = 3; k >= 0; --k) v = v * s + c.coefficients[static_cast<size_t>(k)];
      scan = std::min(scan, v);
    }
    CHECK(c.min_value <= scan + 1e-12);
    CHECK(c.min_value >= scan - 1e-3 * std::abs(scan) - 1e-9);
  }
}

TEST_CASE("separatrices for alpha = 1") {
  const auto seps = separatrices(Alpha(1, 0));
  for (const PathTrace& s : seps) {
    CHECK(s.terminal == Terminal::EndpointInfinity);
    // Re w = 1/2 along the whole path.
    double worst = 0.0;
    for (const cplx& w : s.points) worst = std::max(worst, std::abs(w.real() - 0.5));
    CHECK(worst < 1e-8);
    for (size_t i = 1; i < s.points.size(); ++i) CHECK(std::abs(s.points[i].imag()) > 0.0);
  }
  // Conjugation symmetry: one path mirrors the other.
  for (const cplx& w : seps[0].points) {
    if (std::abs(w) < 5.0) CHECK(polyline_distance(std::conj(w), seps[1].points) < 1e-8);
  }
}

TEST_CASE("points on a separatrix classify as Boundary") {
  for (const Alpha& a : {Alpha(1, 0), Alpha(1, 1), Alpha(2, -1)}) {
    const auto seps = separatrices(a);
    for (const PathTrace& s : seps) {
      int checked = 0;
      for (size_t i = 1; i < s.points.size() && checked < 5; i += std::max<size_t>(1, s.points.size() / 40)) {
        const double d = std::abs(s.points[i] - crossing_point(a));
        if (d < 1e-2 || d > 0.2) continue;
        ++checked;
        CHECK(classify_region(s.points[i], a).label == Region::Boundary);
      }
      CHECK(checked > 0);
    }
  }
}

TEST_CASE("flow enums and JSON") {
  for (Terminal t : {Terminal::Endpoint0, Terminal::Endpoint1, Terminal::EndpointInfinity,
                     Terminal::SaddleReached, Terminal::Truncated}) {
    CHECK(terminal_from_string(to_string(t)) == t);
  }
  CHECK(region_from_string(to_string(Region::InE)) == Region::InE);
  CHECK_THROWS(region_from_string("nowhere"));
  const PathTrace tr = trace_flow(cplx(0.7, 0.2), 1.0, Alpha(1, 1), Direction::Descent);
  const nlohmann::json j = tr;
  CHECK(j.contains("im_phase_drift"));
  const PathTrace back = path_trace_from_json(j);
  CHECK(back.points == tr.points);
  CHECK(back.terminal == tr.terminal);
  CHECK(back.direction == tr.direction);
}
