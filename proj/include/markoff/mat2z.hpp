#pragma once

#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace markoff {

using BigInt = boost::multiprecision::cpp_int;

/// An element (a b; c d) of GL_2(Z), entries of unbounded size.
struct Mat2Z {
  BigInt a{1}, b{0}, c{0}, d{1};

  static Mat2Z identity() { return {}; }
  static Mat2Z of(long long a, long long b, long long c, long long d) {
    return Mat2Z{BigInt(a), BigInt(b), BigInt(c), BigInt(d)};
  }

  BigInt det() const { return a * d - b * c; }
  BigInt trace() const { return a + d; }

  /// Inverse in GL_2(Z); throws unless |det| = 1.
  Mat2Z inverse() const {
    BigInt dt = det();
    if (dt != 1 && dt != -1) throw std::domain_error("matrix is not invertible over Z");
    return Mat2Z{d * dt, -b * dt, -c * dt, a * dt};
  }

  Mat2Z transpose() const { return Mat2Z{a, c, b, d}; }
  Mat2Z negated() const { return Mat2Z{-a, -b, -c, -d}; }

  friend Mat2Z operator*(const Mat2Z& m, const Mat2Z& n) {
    return Mat2Z{m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d, m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
  }
  friend bool operator==(const Mat2Z&, const Mat2Z&) = default;

  /// Equality in PGL_2(Z), i.e. up to sign.
  bool projectively_equal(const Mat2Z& o) const { return *this == o || *this == o.negated(); }

  std::string to_string() const {
    std::ostringstream os;
    os << '(' << a << ' ' << b << "; " << c << ' ' << d << ')';
    return os.str();
  }
};

inline std::ostream& operator<<(std::ostream& os, const Mat2Z& m) { return os << m.to_string(); }

inline Mat2Z power(Mat2Z m, unsigned long long e) {
  Mat2Z out;
  while (e != 0) {
    if (e & 1u) out = out * m;
    m = m * m;
    e >>= 1u;
  }
  return out;
}

/// Modulus of the largest eigenvalue. For det -1 this is taken for the
/// matrix itself: roots of t^2 - tr t - 1.
inline double largest_eigenvalue_modulus(const Mat2Z& m) {
  const double t = std::fabs(m.trace().convert_to<double>());
  const double det = m.det().convert_to<double>();
  const double disc = t * t - 4.0 * det;
  if (disc < 0) return std::sqrt(std::fabs(det));
  return (t + std::sqrt(disc)) / 2.0;
}

}  // namespace markoff
