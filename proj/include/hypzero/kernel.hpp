#pragma once

// Branch-aware complex primitives shared by every module: the principal and
// path-continued logarithm, the phase function
//
//     phi(t) = alpha * log t + log(1 - z t)
//
// and its derivatives, plus the precision mode used by the polynomial side.

#include <complex>
#include <string>

namespace hypzero {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// The complex exponent alpha = eta + i zeta. eta > 0 is enforced; zeta == 0
/// selects the real-parameter regime.
class Alpha {
 public:
  Alpha(double eta, double zeta);

  double eta() const { return eta_; }
  double zeta() const { return zeta_; }
  cplx value() const { return {eta_, zeta_}; }
  bool is_real() const { return zeta_ == 0.0; }

  friend bool operator==(const Alpha&, const Alpha&) = default;

 private:
  double eta_;
  double zeta_;
};

/// A logarithm followed continuously along a path. `value` is the principal
/// logarithm at the current point; `imag_phase` is the continued imaginary
/// part, which differs from value.imag() by a multiple of 2 pi.
struct BranchTrackedValue {
  cplx value;
  double imag_phase = 0.0;

  /// The continued logarithm log|w| + i imag_phase.
  cplx continued() const { return {value.real(), imag_phase}; }
};

/// Principal logarithm, imaginary part in (-pi, pi]. Throws DomainError at 0.
cplx principal_log(cplx w);

/// Shift `raw_arg` by the multiple of 2 pi that brings it closest to `previous`.
double unwind(double raw_arg, double previous);

/// Principal log of w, unwrapped against an earlier tracked value.
BranchTrackedValue track_log(cplx w, const BranchTrackedValue& previous);
/// Principal log of w with no history.
BranchTrackedValue track_log(cplx w);

/// State of phi along a path: both logarithms are tracked separately because
/// a complex alpha mixes the branch of log t into the real part of phi.
struct PhiState {
  BranchTrackedValue log_t;
  BranchTrackedValue log_1mzt;
  cplx value;  ///< alpha * log t + log(1 - z t), both continued.
};

/// phi on the principal branch (the branch that is real on ]0, 1]).
PhiState phi(cplx t, cplx z, const Alpha& alpha);
/// phi continued from the state at a nearby earlier point of the same path.
PhiState phi(cplx t, cplx z, const Alpha& alpha, const PhiState& previous);

/// phi'(t) = (alpha - z t (alpha + 1)) / (t (1 - z t)); branch free.
cplx phi_prime(cplx t, cplx z, const Alpha& alpha);
/// phi''(t) = -alpha / t^2 - z^2 / (1 - z t)^2.
cplx phi_second(cplx t, cplx z, const Alpha& alpha);

/// Arithmetic used for polynomial work. Double is IEEE binary64; Extended
/// runs MPFR with `bits` of mantissa; Auto lets the caller pick bits from the
/// degree (see auto_bits()).
struct Precision {
  enum class Kind { Double, Extended, Auto };
  Kind kind = Kind::Auto;
  unsigned bits = 53;

  static Precision double_precision() { return {Kind::Double, 53}; }
  static Precision extended(unsigned bits) { return {Kind::Extended, bits}; }
  static Precision automatic() { return {Kind::Auto, 0}; }

  /// Parses "double", "auto" or "extended:<bits>". Throws ConfigError.
  static Precision parse(const std::string& text);
  std::string str() const;

  /// Mantissa bits to use for a degree-n solve.
  unsigned bits_for(int degree) const;

  friend bool operator==(const Precision&, const Precision&) = default;
};

/// Starting mantissa width for degree-n monomial-basis work of this family:
/// near the zeros the coefficient sums exceed |p'| by roughly 10^n.
unsigned auto_bits(int degree);

}  // namespace hypzero
