#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>
#include <string>

#include "unialg/error.hpp"

namespace unialg {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::rational<BigInt>;

/// Exact complex number with rational real and imaginary parts.
/// All arithmetic is exact; no floating point is involved anywhere.
struct Coeff {
  Rational re{0};
  Rational im{0};

  Coeff() = default;
  Coeff(Rational r, Rational i = Rational(0)) : re(std::move(r)), im(std::move(i)) {}
  Coeff(int r) : re(r) {}

  static Coeff zero() { return Coeff(); }
  static Coeff one() { return Coeff(1); }
  static Coeff i() { return Coeff(Rational(0), Rational(1)); }

  bool is_zero() const { return re == Rational(0) && im == Rational(0); }
  bool is_one() const { return re == Rational(1) && im == Rational(0); }

  Coeff conj() const { return Coeff(re, -im); }

  Coeff operator-() const { return Coeff(-re, -im); }

  Coeff& operator+=(const Coeff& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Coeff& operator-=(const Coeff& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }

  friend Coeff operator+(Coeff a, const Coeff& b) { return a += b; }
  friend Coeff operator-(Coeff a, const Coeff& b) { return a -= b; }
  friend Coeff operator*(const Coeff& a, const Coeff& b) {
    return Coeff(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }
  friend bool operator==(const Coeff& a, const Coeff& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const Coeff& a, const Coeff& b) { return !(a == b); }
};

inline std::string format_rational(const Rational& r) {
  std::string out = r.numerator().str();
  if (r.denominator() != 1) out += "/" + r.denominator().str();
  return out;
}

/// `[re,im]`, each part INT or INT/INT.
inline std::string format_coeff(const Coeff& c) {
  return "[" + format_rational(c.re) + "," + format_rational(c.im) + "]";
}

/// INT or INT/INT with optional sign; denominator must be nonzero.
inline Rational parse_rational(const std::string& text) {
  auto parse_int = [](const std::string& s) -> BigInt {
    if (s.empty()) throw Error("empty integer in coefficient");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw Error("bad integer '" + s + "' in coefficient");
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i])))
        throw Error("bad integer '" + s + "' in coefficient");
    return BigInt(s);
  };
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_int(text));
  BigInt num = parse_int(text.substr(0, slash));
  BigInt den = parse_int(text.substr(slash + 1));
  if (den == 0) throw Error("zero denominator in coefficient");
  return Rational(num, den);
}

}  // namespace unialg
