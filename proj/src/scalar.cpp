#include "abelk/scalar.hpp"

#include <boost/multiprecision/miller_rabin.hpp>

#include <algorithm>
#include <random>
#include <stdexcept>

namespace abelk {

int valuation(Integer n, Prime p) {
  if (n == 0) throw std::domain_error("valuation of zero");
  int k = 0;
  const Integer pp = p;
  while (n % pp == 0) {
    n /= pp;
    ++k;
  }
  return k;
}

int valuation(const Rational& q, Prime p) {
  return valuation(numerator_of(q), p) - valuation(denominator_of(q), p);
}

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  static std::mt19937_64 gen(0x5eed);
  return mp::miller_rabin_test(n, 25, gen);
}

namespace {

Integer pollard_brent(const Integer& n) {
  if (n % 2 == 0) return 2;
  std::mt19937_64 gen(static_cast<std::uint64_t>(n % Integer(0x7fffffff)) + 17);
  for (;;) {
    Integer y = Integer(gen()) % n, c = Integer(gen()) % n, g = 1, q = 1, x, ys;
    const unsigned m = 64;
    unsigned r = 1;
    do {
      x = y;
      for (unsigned i = 0; i < r; ++i) y = (y * y + c) % n;
      unsigned k = 0;
      do {
        ys = y;
        for (unsigned i = 0; i < std::min(m, r - k); ++i) {
          y = (y * y + c) % n;
          q = q * abs(Integer(x - y)) % n;
        }
        g = gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = (ys * ys + c) % n;
        g = gcd(abs(Integer(x - ys)), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split(const Integer& n, std::vector<Integer>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  Integer d = pollard_brent(n);
  split(d, out);
  split(n / d, out);
}

}  // namespace

std::vector<Prime> prime_factors(const Integer& value) {
  Integer n = abs(value);
  std::vector<Prime> primes;
  if (n <= 1) return primes;
  for (Prime p = 2; p < 10000 && Integer(p) * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      primes.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) {
    std::vector<Integer> big;
    split(n, big);
    for (const auto& f : big) {
      if (f > Integer(std::numeric_limits<Prime>::max()))
        throw std::overflow_error("prime factor exceeds 64 bits: " + f.str());
      primes.push_back(f.convert_to<Prime>());
    }
  }
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  return primes;
}

Integer ipow(const Integer& base, unsigned exponent) { return mp::pow(base, exponent); }

Integer binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  Integer r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

IntMatrix to_integer(const RatMatrix& m) {
  IntMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (denominator_of(m(i, j)) != 1)
        throw std::domain_error("matrix entry " + m(i, j).str() + " is not an integer");
      out(i, j) = numerator_of(m(i, j));
    }
  return out;
}

IntMatrix identity_matrix(int n) { return IntMatrix::Identity(n, n); }

IntMatrix int_matrix(int rows, int cols, std::initializer_list<long> entries) {
  if (static_cast<long>(entries.size()) != static_cast<long>(rows) * cols)
    throw std::invalid_argument("int_matrix: entry count does not match shape");
  IntMatrix m(rows, cols);
  auto it = entries.begin();
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = *it++;
  return m;
}

}  // namespace abelk
