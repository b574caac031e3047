#pragma once

// Exact scalar types and the dense Eigen containers built on them.

#include <Eigen/Core>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace abelk {

namespace mp = boost::multiprecision;

using Integer = mp::number<mp::gmp_int, mp::et_off>;
using Rational = mp::number<mp::gmp_rational, mp::et_off>;

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;
using IntVector = Vector<Integer>;
using RatVector = Vector<Rational>;

using Prime = std::uint64_t;

inline Integer abs(const Integer& x) { return x < 0 ? Integer(-x) : x; }

inline Integer gcd(const Integer& a, const Integer& b) { return mp::gcd(a, b); }

inline Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return abs(a / gcd(a, b) * b);
}

// Largest k with p^k | n. n must be nonzero.
int valuation(Integer n, Prime p);
// v_p of a nonzero rational (may be negative).
int valuation(const Rational& q, Prime p);

// Distinct prime divisors of |n| in increasing order; n = 0 or ±1 gives {}.
std::vector<Prime> prime_factors(const Integer& n);
bool is_prime(const Integer& n);

Integer ipow(const Integer& base, unsigned exponent);
Integer binomial(int n, int k);

inline Integer numerator_of(const Rational& q) { return mp::numerator(q); }
inline Integer denominator_of(const Rational& q) { return mp::denominator(q); }

template <class Derived>
RatMatrix to_rational(const Eigen::MatrixBase<Derived>& m) {
  return m.template cast<Rational>();
}

// Integer matrix from a rational one; throws std::domain_error if any entry
// has a denominator.
IntMatrix to_integer(const RatMatrix& m);

template <class Derived>
bool is_integral(const Eigen::MatrixBase<Derived>& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (denominator_of(m(i, j)) != 1) return false;
  return true;
}

// Least common multiple of the entry denominators (1 for an empty matrix).
template <class Derived>
Integer common_denominator(const Eigen::MatrixBase<Derived>& m) {
  Integer d = 1;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) d = lcm(d, denominator_of(m(i, j)));
  return d;
}

template <class Derived>
Integer content(const Eigen::MatrixBase<Derived>& m) {
  Integer g = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) g = gcd(g, m(i, j));
  return g;
}

IntMatrix identity_matrix(int n);
IntMatrix int_matrix(int rows, int cols, std::initializer_list<long> entries);

template <class Scalar>
std::string to_string(const Matrix<Scalar>& m) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out += i ? ",[" : "[";
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out += ",";
      out += m(i, j).str();
    }
    out += "]";
  }
  return out + "]";
}

template <class Scalar>
std::string to_string(const Vector<Scalar>& v) {
  std::string out = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += v(i).str();
  }
  return out + ")";
}

}  // namespace abelk
