#include "hypzero/kernel.hpp"

#include <cmath>
#include <string>

#include "hypzero/errors.hpp"

namespace hypzero {

Alpha::Alpha(double eta, double zeta) : eta_(eta), zeta_(zeta) {
  if (!std::isfinite(eta) || !std::isfinite(zeta)) {
    throw DomainError("alpha must be finite");
  }
  if (!(eta > 0.0)) {
    throw DomainError("alpha must have positive real part, got eta = " + std::to_string(eta));
  }
}

cplx principal_log(cplx w) {
  if (w == cplx(0.0, 0.0)) {
    throw DomainError("logarithm of zero");
  }
  cplx l = std::log(w);
  // std::log gives -i pi for a negative real with a -0.0 imaginary part.
  if (l.imag() == -kPi) {
    l.imag(kPi);
  }
  return l;
}

double unwind(double raw_arg, double previous) {
  return raw_arg + kTwoPi * std::round((previous - raw_arg) / kTwoPi);
}

BranchTrackedValue track_log(cplx w, const BranchTrackedValue& previous) {
  const cplx l = principal_log(w);
  return {l, unwind(l.imag(), previous.imag_phase)};
}

BranchTrackedValue track_log(cplx w) {
  const cplx l = principal_log(w);
  return {l, l.imag()};
}

namespace {

void check_regular(cplx t, cplx one_minus_zt) {
  if (t == cplx(0.0, 0.0)) {
    throw SingularPointError("phi evaluated at the branch point t = 0");
  }
  if (one_minus_zt == cplx(0.0, 0.0)) {
    throw SingularPointError("phi evaluated at the branch point t = 1/z");
  }
}

PhiState assemble(BranchTrackedValue log_t, BranchTrackedValue log_1mzt, const Alpha& alpha) {
  const cplx value = alpha.value() * log_t.continued() + log_1mzt.continued();
  return {log_t, log_1mzt, value};
}

}  // namespace

PhiState phi(cplx t, cplx z, const Alpha& alpha) {
  const cplx w = 1.0 - z * t;
  check_regular(t, w);
  return assemble(track_log(t), track_log(w), alpha);
}

PhiState phi(cplx t, cplx z, const Alpha& alpha, const PhiState& previous) {
  const cplx w = 1.0 - z * t;
  check_regular(t, w);
  return assemble(track_log(t, previous.log_t), track_log(w, previous.log_1mzt), alpha);
}

cplx phi_prime(cplx t, cplx z, const Alpha& alpha) {
  const cplx w = 1.0 - z * t;
  if (t == cplx(0.0, 0.0) || w == cplx(0.0, 0.0)) {
    throw SingularPointError("phi' has a pole at t = 0 and t = 1/z");
  }
  const cplx a = alpha.value();
  return (a - z * t * (a + 1.0)) / (t * w);
}

cplx phi_second(cplx t, cplx z, const Alpha& alpha) {
  const cplx w = 1.0 - z * t;
  if (t == cplx(0.0, 0.0) || w == cplx(0.0, 0.0)) {
    throw SingularPointError("phi'' has a pole at t = 0 and t = 1/z");
  }
  return -alpha.value() / (t * t) - z * z / (w * w);
}

Precision Precision::parse(const std::string& text) {
  if (text == "double") {
    return double_precision();
  }
  if (text == "auto") {
    return automatic();
  }
  const std::string prefix = "extended:";
  if (text.rfind(prefix, 0) == 0) {
    const std::string digits = text.substr(prefix.size());
    size_t used = 0;
    unsigned long bits = 0;
    try {
      bits = std::stoul(digits, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != digits.size() || bits < 64 || bits > 100000) {
      throw ConfigError("extended precision needs an integer bit count in [64, 100000], got '" +
                        digits + "'");
    }
    return extended(static_cast<unsigned>(bits));
  }
  throw ConfigError("unknown precision mode '" + text + "' (expected double, auto or extended:<bits>)");
}

std::string Precision::str() const {
  switch (kind) {
    case Kind::Double:
      return "double";
    case Kind::Extended:
      return "extended:" + std::to_string(bits);
    case Kind::Auto:
      break;
  }
  return "auto";
}

unsigned Precision::bits_for(int degree) const {
  switch (kind) {
    case Kind::Double:
      return 53;
    case Kind::Extended:
      return bits;
    case Kind::Auto:
      break;
  }
  return auto_bits(degree);
}

unsigned auto_bits(int degree) {
  // Zeros near the curve have condition numbers around ((1 + |z|) / c)^n with
  // c the level constant; 4 bits per degree covers c >= 0.15 at |z| <= 1.5.
  return 96u + 4u * static_cast<unsigned>(degree < 0 ? 0 : degree);
}

}  // namespace hypzero
