#pragma once

// Slow reference computations used to check the library. None of them call
// the algorithms they are compared against.

#include "abelk/tower.hpp"

#include <map>
#include <numeric>
#include <random>

namespace oracle {

using abelk::Integer;
using abelk::IntMatrix;
using abelk::IntVector;
using abelk::Rational;
using abelk::RatMatrix;
using abelk::RatVector;

inline constexpr std::uint64_t seed = 20261017;

/// Cofactor expansion along the first row.
template <class S>
S laplace_det(const abelk::Matrix<S>& a) {
  const auto n = a.rows();
  if (n == 0) return S(1);
  if (n == 1) return a(0, 0);
  S sum = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (a(0, j) == 0) continue;
    abelk::Matrix<S> minor(n - 1, n - 1);
    for (Eigen::Index i = 1; i < n; ++i)
      for (Eigen::Index c = 0, k = 0; c < n; ++c)
        if (c != j) minor(i - 1, k++) = a(i, c);
    const S term = a(0, j) * laplace_det(minor);
    sum += (j % 2 ? S(-term) : term);
  }
  return sum;
}

inline std::vector<std::vector<int>> subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<bool> pick(static_cast<std::size_t>(n));
  std::fill(pick.begin(), pick.begin() + k, true);
  do {
    std::vector<int> s;
    for (int i = 0; i < n; ++i)
      if (pick[static_cast<std::size_t>(i)]) s.push_back(i);
    out.push_back(s);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;  // lexicographic order
}

inline IntMatrix submatrix(const IntMatrix& a, const std::vector<int>& rows, const std::vector<int>& cols) {
  IntMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a(rows[i], cols[j]);
  return m;
}

inline IntMatrix minors_compound(const IntMatrix& a, int k) {
  const auto rs = subsets(static_cast<int>(a.rows()), k);
  const auto cs = subsets(static_cast<int>(a.cols()), k);
  IntMatrix c(static_cast<Eigen::Index>(rs.size()), static_cast<Eigen::Index>(cs.size()));
  for (std::size_t i = 0; i < rs.size(); ++i)
    for (std::size_t j = 0; j < cs.size(); ++j)
      c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = laplace_det(submatrix(a, rs[i], cs[j]));
  return c;
}

/// Invariant factors d_k = D_k / D_{k-1} with D_k the gcd of k x k minors.
inline std::vector<Integer> determinantal_factors(const IntMatrix& a) {
  std::vector<Integer> out;
  Integer prev = 1;
  const int n = static_cast<int>(std::min(a.rows(), a.cols()));
  for (int k = 1; k <= n; ++k) {
    Integer g = 0;
    for (const auto& r : subsets(static_cast<int>(a.rows()), k))
      for (const auto& c : subsets(static_cast<int>(a.cols()), k)) g = abelk::gcd(g, laplace_det(submatrix(a, r, c)));
    if (g == 0) {
      for (int rest = k; rest <= n; ++rest) out.push_back(0);
      break;
    }
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

/// Adjugate over the determinant.
inline RatMatrix adjugate_inverse(const RatMatrix& a) {
  const auto n = a.rows();
  const Rational det = laplace_det(a);
  RatMatrix inv(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      RatMatrix minor(n - 1, n - 1);
      for (Eigen::Index r = 0, rr = 0; r < n; ++r) {
        if (r == j) continue;
        for (Eigen::Index c = 0, cc = 0; c < n; ++c)
          if (c != i) minor(rr, cc++) = a(r, c);
        ++rr;
      }
      const Rational cof = laplace_det(minor);
      inv(i, j) = ((i + j) % 2 ? Rational(-cof) : cof) / det;
    }
  return inv;
}

/// Number of elements of each order in Z/n1 + ... + Z/nk, by enumeration.
inline std::map<Integer, long> order_spectrum(const std::vector<long>& orders) {
  std::map<Integer, long> spectrum;
  long total = 1;
  for (long n : orders) total *= n;
  for (long idx = 0; idx < total; ++idx) {
    long rest = idx;
    long ord = 1;
    for (long n : orders) {
      const long x = rest % n;
      rest /= n;
      ord = std::lcm(ord, n / std::gcd(x, n));
    }
    ++spectrum[Integer(ord)];
  }
  return spectrum;
}

/// Stage maps multiplied out one at a time, without any periodicity shortcut.
inline IntMatrix unrolled_product(const abelk::Tower& t, std::size_t stages) {
  IntMatrix m = IntMatrix::Identity(t.rank, t.rank);
  for (std::size_t s = 0; s < stages; ++s) {
    IntMatrix a = IntMatrix::Identity(t.rank, t.rank);
    if (s < t.prefix.size())
      a = t.prefix[s];
    else if (!t.period.empty())
      a = t.period[(s - t.prefix.size()) % t.period.size()];
    m = (a * m).eval();
  }
  return m;
}

/// Whether v lies in some stage lattice up to `depth`.
inline bool unrolled_member(const abelk::Tower& t, const RatVector& v, std::size_t depth) {
  for (std::size_t s = 0; s <= depth; ++s) {
    const RatVector w = abelk::to_rational(unrolled_product(t, s)) * v;
    bool integral = true;
    for (Eigen::Index i = 0; i < w.size(); ++i) integral = integral && abelk::denominator_of(w(i)) == 1;
    if (integral) return true;
  }
  return false;
}

inline IntMatrix random_matrix(std::mt19937_64& rng, int rows, int cols, long bound) {
  std::uniform_int_distribution<long> d(-bound, bound);
  IntMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = d(rng);
  return m;
}

inline IntMatrix random_nonsingular(std::mt19937_64& rng, int n, long bound) {
  for (;;) {
    IntMatrix m = random_matrix(rng, n, n, bound);
    if (laplace_det(m) != 0) return m;
  }
}

/// Eventually periodic tower with prefix <= max_prefix and period <= max_period
/// maps, entries in [-bound, bound].
inline abelk::Tower random_tower(std::mt19937_64& rng, int rank, int max_prefix = 4, int max_period = 3,
                                 long bound = 9) {
  abelk::Tower t;
  t.rank = rank;
  std::uniform_int_distribution<int> pre(0, max_prefix), per(0, max_period);
  const int a = pre(rng);
  const int b = per(rng);
  for (int i = 0; i < a; ++i) t.prefix.push_back(random_nonsingular(rng, rank, bound));
  for (int i = 0; i < b; ++i) t.period.push_back(random_nonsingular(rng, rank, bound));
  return t;
}

}  // namespace oracle
