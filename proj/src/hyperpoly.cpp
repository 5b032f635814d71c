#include "hypzero/hyperpoly.hpp"

#include <cmath>
#include <limits>

#include "hypzero/errors.hpp"

namespace hypzero {

namespace {

constexpr double kUnitRoundoff = std::numeric_limits<double>::epsilon() / 2.0;
constexpr unsigned kCoefficientBits = 128;

XComplex series_parameter(const Polynomial& p, unsigned bits) {
  // b = alpha n + 1 + shift, formed without double rounding.
  XReal re(p.alpha.eta(), bits);
  re *= XReal(static_cast<long>(p.degree), bits);
  re += XReal(1.0, bits);
  re += XReal(p.shift, bits);
  XReal im(p.alpha.zeta(), bits);
  im *= XReal(static_cast<long>(p.degree), bits);
  return XComplex(std::move(re), std::move(im));
}

double horner_error_bound(int degree, double unit_roundoff, double magnitude_sum, double value_abs) {
  if (value_abs == 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  // Complex Horner: 2n flops per step, sqrt(2) complex-multiply factor, one
  // extra roundoff for the stored coefficients.
  const double gamma = (4.0 * degree + 3.0) * unit_roundoff;
  return gamma * magnitude_sum / value_abs;
}

}  // namespace

std::vector<XComplex> coefficients_extended(const Polynomial& p, unsigned bits) {
  if (p.degree < 0) {
    throw DomainError("polynomial degree must be nonnegative");
  }
  const XComplex b = series_parameter(p, bits);
  std::vector<XComplex> out;
  out.reserve(static_cast<size_t>(p.degree) + 1);
  XReal binom(1L, bits);
  for (int k = 0; k <= p.degree; ++k) {
    XComplex bk = b;
    bk.re += XReal(static_cast<long>(k), bits);
    XComplex c = b / bk;
    c *= (k % 2 == 0) ? binom : -binom;
    out.push_back(std::move(c));
    binom *= XReal(static_cast<long>(p.degree - k), bits);
    binom /= XReal(static_cast<long>(k + 1), bits);
  }
  return out;
}

Polynomial coefficients(int n, const Alpha& alpha, double shift) {
  if (n < 0) {
    throw DomainError("polynomial degree must be nonnegative");
  }
  if (!(shift >= 0.0) || !std::isfinite(shift)) {
    throw DomainError("series shift must be finite and nonnegative");
  }
  Polynomial p;
  p.degree = n;
  p.alpha = alpha;
  p.shift = shift;
  const unsigned bits = std::max<unsigned>(kCoefficientBits, static_cast<unsigned>(n) + 64u);
  const std::vector<XComplex> raw = coefficients_extended(p, bits);

  double max_log2 = -std::numeric_limits<double>::infinity();
  size_t argmax = 0;
  for (size_t k = 0; k < raw.size(); ++k) {
    const double l2 = abs(raw[k]).log2_abs();
    if (l2 > max_log2) {
      max_log2 = l2;
      argmax = k;
    }
  }
  const XReal peak = abs(raw[argmax]);
  p.coeffs.reserve(raw.size());
  for (const XComplex& c : raw) {
    XComplex balanced = c;
    balanced.re /= peak;
    balanced.im /= peak;
    p.coeffs.push_back(balanced.to_complex());
  }
  p.scale = max_log2 * std::log(2.0);
  return p;
}

void horner_with_derivative(const std::vector<XComplex>& coeffs, const XComplex& z, XComplex& value,
                            XComplex& derivative) {
  const unsigned bits = z.bits();
  value = XComplex(bits);
  derivative = XComplex(bits);
  for (size_t i = coeffs.size(); i-- > 0;) {
    derivative *= z;
    derivative += value;
    value *= z;
    value += coeffs[i];
  }
}

Evaluation evaluate(const Polynomial& p, cplx z, Precision precision) {
  Evaluation ev;
  if (precision.kind == Precision::Kind::Double) {
    cplx acc(0.0, 0.0);
    double mag = 0.0;
    const double az = std::abs(z);
    for (size_t i = p.coeffs.size(); i-- > 0;) {
      acc = acc * z + p.coeffs[i];
      mag = mag * az + std::abs(p.coeffs[i]);
    }
    const double factor = std::exp(p.scale);
    ev.value = acc * factor;
    ev.magnitude_sum = mag * factor;
    const double vabs = std::abs(ev.value);
    ev.scaled_residual = ev.magnitude_sum > 0.0 ? vabs / ev.magnitude_sum : 0.0;
    ev.rel_error_bound = horner_error_bound(p.degree, kUnitRoundoff, ev.magnitude_sum, vabs);
    return ev;
  }

  const unsigned bits = precision.bits_for(p.degree);
  const std::vector<XComplex> c = coefficients_extended(p, bits);
  XComplex zx(z, bits);
  const XReal az = abs(zx);
  XComplex acc(bits);
  XReal mag(bits);
  for (size_t i = c.size(); i-- > 0;) {
    acc *= zx;
    acc += c[i];
    mag *= az;
    mag += abs(c[i]);
  }
  ev.value = acc.to_complex();
  ev.magnitude_sum = mag.to_double();
  const XReal vabs = abs(acc);
  ev.scaled_residual = mag.is_zero() ? 0.0 : (vabs / mag).to_double();
  const double u = std::ldexp(1.0, -static_cast<int>(bits));
  ev.rel_error_bound = vabs.is_zero() ? std::numeric_limits<double>::infinity()
                                      : (4.0 * p.degree + 3.0) * u * (mag / vabs).to_double();
  return ev;
}

std::vector<Rational> coefficients_exact(int n, const Rational& alpha, const Rational& shift) {
  if (n < 0) {
    throw DomainError("polynomial degree must be nonnegative");
  }
  const Rational b = alpha * n + 1 + shift;
  std::vector<Rational> out;
  out.reserve(static_cast<size_t>(n) + 1);
  boost::multiprecision::cpp_int binom = 1;
  for (int k = 0; k <= n; ++k) {
    Rational c = Rational(binom) * b / (b + k);
    out.push_back(k % 2 == 0 ? c : -c);
    binom = binom * (n - k) / (k + 1);
  }
  return out;
}

void to_json(nlohmann::json& j, const Polynomial& p) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const cplx& c : p.coeffs) {
    coeffs.push_back({c.real(), c.imag()});
  }
  j = {{"n", p.degree},
       {"alpha", {p.alpha.eta(), p.alpha.zeta()}},
       {"coeffs", std::move(coeffs)},
       {"scale", p.scale}};
  if (p.shift != 0.0) {
    j["shift"] = p.shift;
  }
}

void from_json(const nlohmann::json& j, Polynomial& p) {
  p.degree = j.at("n").get<int>();
  const auto& a = j.at("alpha");
  p.alpha = Alpha(a.at(0).get<double>(), a.at(1).get<double>());
  p.shift = j.value("shift", 0.0);
  p.coeffs.clear();
  for (const auto& c : j.at("coeffs")) {
    p.coeffs.emplace_back(c.at(0).get<double>(), c.at(1).get<double>());
  }
  p.scale = j.at("scale").get<double>();
  if (p.coeffs.size() != static_cast<size_t>(p.degree) + 1) {
    throw DomainError("polynomial JSON: coefficient count does not match degree");
  }
}

}  // namespace hypzero
