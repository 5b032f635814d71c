#pragma once

// The terminating Gauss series
//
//     p_n(z) = 2F1(-n, b; b + 1; z),   b = alpha n + 1 + shift,
//
// whose k-th monomial coefficient is (-1)^k C(n, k) b / (b + k). shift = 0 is
// the main family; shift = l > 0 gives the F(-n, kn + l + 1; kn + l + 2; z)
// cross-check family.

#include <complex>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

#include "hypzero/kernel.hpp"
#include "hypzero/xprec.hpp"

namespace hypzero {

/// Degree-n polynomial in the monomial basis with a shared log-scale:
/// the true coefficient k is coeffs[k] * exp(scale).
struct Polynomial {
  int degree = 0;
  Alpha alpha{1.0, 0.0};
  double shift = 0.0;
  std::vector<cplx> coeffs;  ///< balanced: max |coeffs[k]| == 1
  double scale = 0.0;

  cplx coefficient(int k) const { return coeffs.at(static_cast<size_t>(k)) * std::exp(scale); }
  /// The series parameter b = alpha n + 1 + shift.
  cplx b() const { return alpha.value() * static_cast<double>(degree) + 1.0 + shift; }
};

/// Builds p_n for the given alpha. Coefficients are formed in 128-bit
/// arithmetic and rounded once, so each is correct to about one ulp.
Polynomial coefficients(int n, const Alpha& alpha, double shift = 0.0);

/// Unscaled coefficients (-1)^k C(n,k) b/(b+k) computed with `bits` of mantissa.
std::vector<XComplex> coefficients_extended(const Polynomial& p, unsigned bits);

struct Evaluation {
  cplx value;
  /// sum_k |c_k| |z|^k, the magnitude scale of the terms being cancelled.
  double magnitude_sum = 0.0;
  /// |p(z)| / magnitude_sum: the condition-aware residual.
  double scaled_residual = 0.0;
  /// Bound on |computed - exact| / |exact| from the Horner rounding analysis.
  double rel_error_bound = 0.0;
};

/// Horner evaluation of p at z in the requested arithmetic. Extended and
/// Auto modes recompute the coefficients in MPFR before evaluating.
Evaluation evaluate(const Polynomial& p, cplx z, Precision precision = Precision::double_precision());

/// Extended-precision Horner evaluation of a coefficient list at z,
/// returning p(z) and p'(z) together.
void horner_with_derivative(const std::vector<XComplex>& coeffs, const XComplex& z, XComplex& value,
                            XComplex& derivative);

using Rational = boost::multiprecision::cpp_rational;

/// Exact closed-form coefficients for rational real alpha and shift. Only
/// meaningful for small n; used by the oracle tests.
std::vector<Rational> coefficients_exact(int n, const Rational& alpha, const Rational& shift = 0);

void to_json(nlohmann::json& j, const Polynomial& p);
void from_json(const nlohmann::json& j, Polynomial& p);

}  // namespace hypzero
