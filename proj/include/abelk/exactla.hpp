#pragma once

// Exact linear algebra over the integers and rationals: determinants, Smith
// normal form, compound (exterior-power) matrices and rational inverses.

#include "abelk/scalar.hpp"

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace abelk {

class SingularMatrix : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// U * A * V == D with U, V unimodular and D diagonal, d1 | d2 | ... , di >= 0.
struct SmithForm {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;

  std::vector<Integer> diagonal() const;
};

SmithForm smith_normal_form(const IntMatrix& A);

/// Sorted k-subsets of {0, ..., n-1} in lexicographic order. This order fixes
/// the basis e_{i1} ^ ... ^ e_{ik} of the k-th exterior power.
std::vector<std::vector<int>> index_subsets(int n, int k);

/// Fraction-free Gaussian elimination (Bareiss). Exact for Integer and
/// Rational scalars alike.
template <class Scalar>
Scalar determinant(Matrix<Scalar> a) {
  const Eigen::Index n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  if (n == 0) return Scalar(1);
  Scalar sign = 1, prev = 1;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      Eigen::Index swap = k + 1;
      while (swap < n && a(swap, k) == 0) ++swap;
      if (swap == n) return Scalar(0);
      a.row(k).swap(a.row(swap));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

/// Matrix of k x k minors: entry (S, T) is det A[S, T] with S, T ranging over
/// index_subsets in lexicographic order. k = 0 gives the 1 x 1 identity.
template <class Scalar>
Matrix<Scalar> compound_matrix(const Matrix<Scalar>& A, int k) {
  const int m = static_cast<int>(A.rows()), n = static_cast<int>(A.cols());
  if (k < 0 || k > std::min(m, n))
    throw std::out_of_range("compound_matrix: k = " + std::to_string(k) + " outside [0, " +
                            std::to_string(std::min(m, n)) + "]");
  const auto rows = index_subsets(m, k);
  const auto cols = index_subsets(n, k);
  Matrix<Scalar> C(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  Matrix<Scalar> sub(k, k);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c) {
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) sub(i, j) = A(rows[r][i], cols[c][j]);
      C(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = determinant(sub);
    }
  return C;
}

/// Exact inverse; throws SingularMatrix when det(A) = 0.
RatMatrix rational_inverse(const RatMatrix& A);

bool is_unimodular(const IntMatrix& A);

/// Rank over Q.
int rank(const RatMatrix& A);
/// Rank over F_p.
int rank_mod(const IntMatrix& A, Prime p);

/// Some x with A x = b, or nullopt when the system is inconsistent.
std::optional<RatVector> solve(const RatMatrix& A, const RatVector& b);

IntMatrix block_diagonal(const std::vector<IntMatrix>& blocks);

/// Entrywise reduction into [0, m).
IntMatrix mod(const IntMatrix& A, const Integer& m);

}  // namespace abelk
