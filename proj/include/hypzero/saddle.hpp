#pragma once

// The unique saddle t0 = alpha / ((alpha + 1) z) of phi, the curvature there,
// the leading-order saddle-point estimate of I1 and the level constant
// |(alpha/(alpha+1))^alpha (alpha+1)^-1| of the limiting curve.

#include <optional>

#include "hypzero/kernel.hpp"

namespace hypzero {

struct SaddleData {
  cplx t0;
  double phi_pp_mod = 0.0;  ///< |phi''(t0)| = |alpha+1|^3 |z|^2 / |alpha|
  double phi_pp_arg = 0.0;  ///< arg phi''(t0), from the evaluated second derivative
  /// log g(t0) with log t0 taken as Log(alpha/(alpha+1)) - Log z. For Re z > 0
  /// this is the principal branch at t0.
  BranchTrackedValue log_g_at_t0;
};

/// Throws DomainError for z == 0.
SaddleData saddle_point(cplx z, const Alpha& alpha);

/// |exp(alpha Log(alpha/(alpha+1)))| / |alpha + 1|.
double level_constant(const Alpha& alpha);

/// The point w0 = alpha / (alpha + 1) where the level curve crosses itself.
cplx crossing_point(const Alpha& alpha);

struct I1Asymptotic {
  /// n Re log g(t0) + (1/2) log(2 pi / (n |phi''(t0)|)).
  double log_modulus = 0.0;
  /// Argument of g(t0)^n times the descent direction.
  double phase = 0.0;
  /// exp(log_modulus + i phase); underflows to 0 for large n.
  cplx estimate;
  /// Unit tangent of the contour as it passes t0 toward 1/z.
  cplx direction;
};

/// Leading saddle-point term of I1 = integral of g(t)^n from 0 to 1/z.
/// `direction` overrides the descent tangent at t0 (e.g. from a traced
/// contour); by default the descent direction pointing toward 1/z is used.
/// With `check_region` the point is classified first and RegionError is
/// thrown unless z lies in E.
I1Asymptotic I1_asymptotic(int n, cplx z, const Alpha& alpha,
                           std::optional<cplx> direction = std::nullopt, bool check_region = true);

}  // namespace hypzero
