#pragma once

// Extended-precision real and complex scalars backed by MPFR.
//
// Every value carries its own mantissa width; binary operations produce a
// result with the wider of the two operand precisions, so no global state is
// involved and values can be used from several threads at once.

#include <complex>
#include <string>

#include <mpfr.h>

namespace hypzero {

class XReal {
 public:
  explicit XReal(unsigned bits = 53);
  XReal(double value, unsigned bits);
  XReal(long value, unsigned bits);
  XReal(const XReal& other);
  XReal(XReal&& other) noexcept;
  XReal& operator=(const XReal& other);
  XReal& operator=(XReal&& other) noexcept;
  ~XReal();

  unsigned bits() const { return static_cast<unsigned>(mpfr_get_prec(v_)); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  /// log2|x|, finite even when |x| is outside the double range. -inf for 0.
  double log2_abs() const;
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  std::string to_string(int digits) const;

  XReal& operator+=(const XReal& o);
  XReal& operator-=(const XReal& o);
  XReal& operator*=(const XReal& o);
  XReal& operator/=(const XReal& o);
  XReal operator-() const;

  friend XReal operator+(XReal a, const XReal& b) { return a += b; }
  friend XReal operator-(XReal a, const XReal& b) { return a -= b; }
  friend XReal operator*(XReal a, const XReal& b) { return a *= b; }
  friend XReal operator/(XReal a, const XReal& b) { return a /= b; }
  friend bool operator<(const XReal& a, const XReal& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const XReal& a, const XReal& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator==(const XReal& a, const XReal& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

  friend XReal sqrt(const XReal& a);
  friend XReal abs(const XReal& a);
  friend XReal hypot(const XReal& a, const XReal& b);

  mpfr_srcptr raw() const { return v_; }
  mpfr_ptr raw() { return v_; }

 private:
  mpfr_t v_;
};

struct XComplex {
  XReal re;
  XReal im;

  explicit XComplex(unsigned bits = 53) : re(bits), im(bits) {}
  XComplex(std::complex<double> z, unsigned bits) : re(z.real(), bits), im(z.imag(), bits) {}
  XComplex(XReal r, XReal i) : re(std::move(r)), im(std::move(i)) {}

  unsigned bits() const { return re.bits() > im.bits() ? re.bits() : im.bits(); }
  std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }

  XComplex& operator+=(const XComplex& o);
  XComplex& operator-=(const XComplex& o);
  XComplex& operator*=(const XComplex& o);
  XComplex& operator/=(const XComplex& o);
  XComplex& operator*=(const XReal& o);
  XComplex operator-() const { return XComplex(-re, -im); }

  friend XComplex operator+(XComplex a, const XComplex& b) { return a += b; }
  friend XComplex operator-(XComplex a, const XComplex& b) { return a -= b; }
  friend XComplex operator*(XComplex a, const XComplex& b) { return a *= b; }
  friend XComplex operator/(XComplex a, const XComplex& b) { return a /= b; }
  friend XComplex operator*(XComplex a, const XReal& b) { return a *= b; }
};

XReal norm(const XComplex& z);
XReal abs(const XComplex& z);

}  // namespace hypzero
