#pragma once

// Numerical contour integrals of g(t)^n = t^{alpha n} (1 - z t)^n:
//   * the Euler integral over [0, 1],
//   * I1 from 0 to 1/z along the steepest-descent paths through t0,
//   * I2 from 1/z to 1 along the implicit path g(t) = s (1 - z), so that
//     I2 = (1 - z)^n K(z) with K(z) = int_0^1 f(s) s^{n-1} ds.
// Magnitudes are carried as natural logs because g^n under/overflows.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hypzero/flows.hpp"
#include "hypzero/kernel.hpp"

namespace hypzero {

struct ContourIntegral {
  double log_modulus = 0.0;    ///< log |I| (-inf when I == 0)
  double phase = 0.0;          ///< arg I in (-pi, pi]
  double log_abs_error = 0.0;  ///< log of the absolute error bound
  std::string contour_id;

  /// I * exp(-ref_log), i.e. the value on a common scale.
  cplx scaled(double ref_log) const;
  double scaled_error(double ref_log) const;
  /// exp(log_modulus + i phase); may under/overflow.
  cplx value() const { return scaled(0.0); }

  static ContourIntegral from_scaled(cplx scaled_value, double scaled_error, double ref_log,
                                     std::string contour_id);
};

void to_json(nlohmann::json& j, const ContourIntegral& c);
void from_json(const nlohmann::json& j, ContourIntegral& c);

struct QuadOptions {
  double rel_tol = 1e-12;
  int max_panels = 4000;
};

/// Result of one adaptive Gauss-Kronrod run on a real interval.
struct QuadResult {
  cplx value;
  double error = 0.0;    ///< |K15 - G7| summed plus a rounding floor
  double abs_sum = 0.0;  ///< K15 estimate of the integral of |f|
  int panels = 0;
  bool converged = false;
};

/// Globally adaptive G7-K15 quadrature of a complex integrand on [a, b].
/// `breakpoints` (strictly inside (a, b)) seed the initial panels.
QuadResult adaptive_gauss_kronrod(const std::function<cplx(double)>& f, double a, double b,
                                  double abs_tol, double rel_tol, int max_panels,
                                  std::span<const double> breakpoints = {});

/// int_0^1 t^{alpha n + shift} (1 - z t)^n dt, principal branch. The (alpha n + 1)
/// prefactor of the hypergeometric identity is NOT applied. Throws
/// AccuracyError when rel_tol cannot be met.
ContourIntegral euler_integral(int n, const Alpha& alpha, cplx z, const QuadOptions& options = {},
                               double shift = 0.0);

struct I1Result {
  ContourIntegral integral;
  /// log of M eps^(eta+1) / (eta+1), the bound on the dropped segment at t = 0.
  double log_truncation_bound = 0.0;
  PathTrace to_zero;  ///< descent path t0 -> 0, cut where |t| < eps
  PathTrace to_pole;  ///< descent path t0 -> 1/z
  /// Unit tangent at t0 pointing along the path toward 1/z.
  cplx direction_to_pole;
  /// Multiple of 2 pi added to log t so that the branch matches at 1/z.
  int branch_shift = 0;
};

struct I1Options {
  QuadOptions quad;
  /// Verify z in E first (one psi-descent trace).
  bool check_region = true;
  /// Continued arg t at 1/z that the I1 contour must agree with. Defaults to
  /// the principal Arg(1/z).
  std::optional<double> junction_arg_t;
};

/// I1 = int_0^{1/z} g(t)^n dt along the descent paths from the saddle, with the
/// spiral at t = 0 truncated at radius eps.
I1Result integrate_I1(int n, const Alpha& alpha, cplx z, double eps, const I1Options& options = {});

struct I2Result {
  ContourIntegral integral;  ///< (1 - z)^n K(z)
  cplx K;
  double K_abs_error = 0.0;
  /// Continued arg t on arrival at 1/z (the branch handed to I1).
  double junction_arg_t = 0.0;
  std::vector<double> s_nodes;  ///< continuation grid, descending from 1 to 0
  std::vector<cplx> path;       ///< t(s) on that grid
};

struct I2Options {
  QuadOptions quad;
  bool check_region = true;
};

I2Result integrate_I2(int n, const Alpha& alpha, cplx z, const I2Options& options = {});

struct ContourSplit {
  ContourIntegral euler;
  I1Result I1;
  I2Result I2;
  /// log |euler - (I1 + I2)|
  double log_discrepancy = 0.0;
  /// log of the summed error budgets of the three integrals
  double log_budget = 0.0;
  bool consistent() const { return log_discrepancy <= log_budget; }
};

/// Evaluates all three integrals with a shared branch at 1/z and compares.
ContourSplit contour_split(int n, const Alpha& alpha, cplx z, double eps,
                           const QuadOptions& options = {});

/// |int_0^1 f(s) s^{n-1} ds|^{1/n} for each n.
std::vector<double> f_lemma_check(const std::function<cplx(double)>& f, std::span<const int> n_list,
                                  const QuadOptions& options = {});

}  // namespace hypzero
