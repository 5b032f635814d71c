#include "hypzero/saddle.hpp"

#include <cmath>

#include "hypzero/errors.hpp"
#include "hypzero/flows.hpp"

namespace hypzero {

namespace {

double wrap_phase(double x) {
  double r = std::remainder(x, kTwoPi);
  if (r <= -kPi) {
    r += kTwoPi;
  }
  return r;
}

}  // namespace

cplx crossing_point(const Alpha& alpha) {
  const cplx a = alpha.value();
  return a / (a + 1.0);
}

SaddleData saddle_point(cplx z, const Alpha& alpha) {
  if (z == cplx(0.0, 0.0)) {
    throw DomainError("saddle point requires z != 0");
  }
  const cplx a = alpha.value();
  const cplx w0 = crossing_point(alpha);
  SaddleData s;
  s.t0 = w0 / z;
  const cplx second = phi_second(s.t0, z, alpha);
  s.phi_pp_mod = std::abs(second);
  s.phi_pp_arg = std::arg(second);
  const cplx log_t0 = principal_log(w0) - principal_log(z);
  // 1 - z t0 = 1 / (alpha + 1)
  const cplx log_g = a * log_t0 - principal_log(a + 1.0);
  s.log_g_at_t0 = {log_g, log_g.imag()};
  return s;
}

double level_constant(const Alpha& alpha) {
  const cplx a = alpha.value();
  const cplx log_mod = a * principal_log(crossing_point(alpha)) - principal_log(a + 1.0);
  return std::exp(log_mod.real());
}

I1Asymptotic I1_asymptotic(int n, cplx z, const Alpha& alpha, std::optional<cplx> direction,
                           bool check_region) {
  if (n < 1) {
    throw DomainError("I1 asymptotic needs n >= 1");
  }
  if (check_region) {
    const RegionLabel label = classify_region(z, alpha);
    if (label.label != Region::InE) {
      throw RegionError("I1 asymptotic: z is not in the interior of E");
    }
  }
  const SaddleData s = saddle_point(z, alpha);
  cplx d;
  if (direction) {
    d = *direction / std::abs(*direction);
  } else {
    // Descent tangents solve phi''(t0) d^2 = -|phi''(t0)|.
    d = std::polar(1.0, 0.5 * (kPi - s.phi_pp_arg));
    if ((std::conj(1.0 / z - s.t0) * d).real() < 0.0) {
      d = -d;
    }
  }
  const double nd = static_cast<double>(n);
  I1Asymptotic out;
  out.direction = d;
  out.log_modulus = nd * s.log_g_at_t0.value.real() + 0.5 * std::log(kTwoPi / (nd * s.phi_pp_mod));
  out.phase = wrap_phase(nd * s.log_g_at_t0.imag_phase + std::arg(d));
  out.estimate = std::polar(std::exp(out.log_modulus), out.phase);
  return out;
}

}  // namespace hypzero
