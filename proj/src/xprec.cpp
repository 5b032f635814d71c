#include "hypzero/xprec.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace hypzero {

namespace {

void widen(mpfr_ptr v, mpfr_srcptr other) {
  if (mpfr_get_prec(other) > mpfr_get_prec(v)) {
    mpfr_prec_round(v, mpfr_get_prec(other), MPFR_RNDN);
  }
}

mpfr_prec_t clamp_bits(unsigned bits) {
  return std::max<mpfr_prec_t>(MPFR_PREC_MIN, static_cast<mpfr_prec_t>(bits));
}

}  // namespace

XReal::XReal(unsigned bits) {
  mpfr_init2(v_, clamp_bits(bits));
  mpfr_set_zero(v_, 1);
}

XReal::XReal(double value, unsigned bits) {
  mpfr_init2(v_, clamp_bits(bits));
  mpfr_set_d(v_, value, MPFR_RNDN);
}

XReal::XReal(long value, unsigned bits) {
  mpfr_init2(v_, clamp_bits(bits));
  mpfr_set_si(v_, value, MPFR_RNDN);
}

XReal::XReal(const XReal& other) {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

XReal::XReal(XReal&& other) noexcept {
  // Steal the limbs and leave `other` as a valid minimal-precision zero.
  *v_ = *other.v_;
  mpfr_init2(other.v_, MPFR_PREC_MIN);
  mpfr_set_zero(other.v_, 1);
}

XReal& XReal::operator=(const XReal& other) {
  if (this != &other) {
    mpfr_set_prec(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

XReal& XReal::operator=(XReal&& other) noexcept {
  if (this != &other) {
    mpfr_swap(v_, other.v_);
  }
  return *this;
}

XReal::~XReal() { mpfr_clear(v_); }

double XReal::log2_abs() const {
  if (mpfr_zero_p(v_)) {
    return -std::numeric_limits<double>::infinity();
  }
  long exp = 0;
  const double mant = mpfr_get_d_2exp(&exp, v_, MPFR_RNDN);
  return std::log2(std::fabs(mant)) + static_cast<double>(exp);
}

std::string XReal::to_string(int digits) const {
  std::vector<char> buf(static_cast<size_t>(digits) + 64);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v_);
  return std::string(buf.data());
}

XReal& XReal::operator+=(const XReal& o) {
  widen(v_, o.v_);
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

XReal& XReal::operator-=(const XReal& o) {
  widen(v_, o.v_);
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

XReal& XReal::operator*=(const XReal& o) {
  widen(v_, o.v_);
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

XReal& XReal::operator/=(const XReal& o) {
  widen(v_, o.v_);
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

XReal XReal::operator-() const {
  XReal r(*this);
  mpfr_neg(r.v_, r.v_, MPFR_RNDN);
  return r;
}

XReal sqrt(const XReal& a) {
  XReal r(a.bits());
  mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
  return r;
}

XReal abs(const XReal& a) {
  XReal r(a.bits());
  mpfr_abs(r.v_, a.v_, MPFR_RNDN);
  return r;
}

XReal hypot(const XReal& a, const XReal& b) {
  XReal r(std::max(a.bits(), b.bits()));
  mpfr_hypot(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

XComplex& XComplex::operator+=(const XComplex& o) {
  re += o.re;
  im += o.im;
  return *this;
}

XComplex& XComplex::operator-=(const XComplex& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

XComplex& XComplex::operator*=(const XComplex& o) {
  XReal r = re * o.re - im * o.im;
  XReal i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

XComplex& XComplex::operator/=(const XComplex& o) {
  const XReal d = o.re * o.re + o.im * o.im;
  XReal r = (re * o.re + im * o.im) / d;
  XReal i = (im * o.re - re * o.im) / d;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

XComplex& XComplex::operator*=(const XReal& o) {
  re *= o;
  im *= o;
  return *this;
}

XReal norm(const XComplex& z) { return z.re * z.re + z.im * z.im; }

XReal abs(const XComplex& z) { return hypot(z.re, z.im); }

}  // namespace hypzero
