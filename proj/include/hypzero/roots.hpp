#pragma once

// All n zeros of p_n by simultaneous Aberth-Ehrlich iteration, with a Newton
// polish in extended precision.

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hypzero/hyperpoly.hpp"
#include "hypzero/kernel.hpp"

namespace hypzero {

struct RootOptions {
  /// Bound on the condition-scaled residual |p(z)| / sum |c_k| |z|^k and on
  /// the relative Newton correction |p/p'| / |z| of every accepted zero.
  double residual_tol = 1e-10;
  int max_iter = 1000;
  /// Seed of the angular jitter in the starting circle.
  std::uint64_t seed = 20240601;
};

struct ZeroSet {
  int n = 0;
  Alpha alpha{1.0, 0.0};
  double shift = 0.0;
  std::vector<cplx> zeros;            ///< sorted by (Re, Im)
  std::vector<double> residuals;      ///< condition-scaled, at the polish precision
  std::vector<double> forward_errors; ///< last |Newton step| / |z|
  std::vector<bool> root_converged;
  int iterations = 0;                 ///< Aberth sweeps of the final attempt
  bool converged = false;
  bool escalated = false;             ///< the double attempt was rejected
  unsigned bits_used = 53;            ///< mantissa of the accepted Aberth run

  double max_residual() const;
};

ZeroSet find_roots(const Polynomial& p, Precision precision = Precision::automatic(),
                   const RootOptions& options = {});

void to_json(nlohmann::json& j, const ZeroSet& z);
void from_json(const nlohmann::json& j, ZeroSet& z);

/// "re,im,residual" header plus one row per zero.
std::string to_csv(const ZeroSet& z);

}  // namespace hypzero
