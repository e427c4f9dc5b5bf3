#pragma once

#include <gmpxx.h>

#include <string>

namespace kgv {

// Complex number with exact rational real and imaginary parts. All algebra
// in the library is done over this field, so every comparison is exact and
// tolerance-free.
struct CRat {
  mpq_class re{0};
  mpq_class im{0};

  CRat() = default;
  CRat(long long r) : re(static_cast<long>(r)) {}
  CRat(const mpq_class& r) : re(r) {}
  CRat(const mpq_class& r, const mpq_class& i) : re(r), im(i) {}

  static CRat zero() { return CRat(); }
  static CRat one() { return CRat(1); }
  static CRat i() { return CRat(mpq_class(0), mpq_class(1)); }
  // r/q as a real rational.
  static CRat frac(long long r, long long q) {
    mpq_class x(static_cast<long>(r), static_cast<long>(q));
    x.canonicalize();
    return CRat(x);
  }

  bool is_zero() const { return re == 0 && im == 0; }
  CRat conj() const { return CRat(re, -im); }

  CRat operator-() const { return CRat(-re, -im); }
  CRat& operator+=(const CRat& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  CRat& operator-=(const CRat& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  friend CRat operator+(CRat a, const CRat& b) { return a += b; }
  friend CRat operator-(CRat a, const CRat& b) { return a -= b; }
  friend CRat operator*(const CRat& a, const CRat& b) {
    return CRat(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }
  CRat& operator*=(const CRat& o) { return *this = *this * o; }

  friend bool operator==(const CRat& a, const CRat& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const CRat& a, const CRat& b) { return !(a == b); }

  std::string str() const {
    if (im == 0) return re.get_str();
    if (re == 0) return im.get_str() + "i";
    std::string s = re.get_str();
    if (im > 0) s += "+";
    return s + im.get_str() + "i";
  }
};

}  // namespace kgv
