#include "abelk/exactla.hpp"

#include <algorithm>

namespace abelk {

namespace {

// Floor division for signed integers.
Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

struct SmithWork {
  IntMatrix A, U, V;

  void swap_rows(Eigen::Index i, Eigen::Index j) {
    if (i == j) return;
    A.row(i).swap(A.row(j));
    U.row(i).swap(U.row(j));
  }
  void swap_cols(Eigen::Index i, Eigen::Index j) {
    if (i == j) return;
    A.col(i).swap(A.col(j));
    V.col(i).swap(V.col(j));
  }
  // row_i -= q * row_j
  void sub_row(Eigen::Index i, Eigen::Index j, const Integer& q) {
    if (q == 0) return;
    A.row(i) -= q * A.row(j);
    U.row(i) -= q * U.row(j);
  }
  void sub_col(Eigen::Index i, Eigen::Index j, const Integer& q) {
    if (q == 0) return;
    A.col(i) -= q * A.col(j);
    V.col(i) -= q * V.col(j);
  }
  void add_row(Eigen::Index i, Eigen::Index j) {
    A.row(i) += A.row(j);
    U.row(i) += U.row(j);
  }
  void negate_row(Eigen::Index i) {
    A.row(i) = -A.row(i);
    U.row(i) = -U.row(i);
  }
};

}  // namespace

std::vector<Integer> SmithForm::diagonal() const {
  std::vector<Integer> d;
  for (Eigen::Index i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
  return d;
}

SmithForm smith_normal_form(const IntMatrix& input) {
  const Eigen::Index m = input.rows(), n = input.cols();
  SmithWork w{input, IntMatrix::Identity(m, m), IntMatrix::Identity(n, n)};
  IntMatrix& A = w.A;

  for (Eigen::Index t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      // Pivot: smallest nonzero |entry| in the trailing block.
      Eigen::Index pr = -1, pc = -1;
      for (Eigen::Index i = t; i < m; ++i)
        for (Eigen::Index j = t; j < n; ++j)
          if (A(i, j) != 0 && (pr < 0 || abs(A(i, j)) < abs(A(pr, pc)))) {
            pr = i;
            pc = j;
          }
      if (pr < 0) goto done;
      w.swap_rows(t, pr);
      w.swap_cols(t, pc);

      bool clean = true;
      for (Eigen::Index i = t + 1; i < m; ++i) {
        w.sub_row(i, t, floor_div(A(i, t), A(t, t)));
        if (A(i, t) != 0) clean = false;
      }
      for (Eigen::Index j = t + 1; j < n; ++j) {
        w.sub_col(j, t, floor_div(A(t, j), A(t, t)));
        if (A(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility: the pivot must divide every trailing entry.
      Eigen::Index bad = -1;
      for (Eigen::Index i = t + 1; i < m && bad < 0; ++i)
        for (Eigen::Index j = t + 1; j < n; ++j)
          if (A(i, j) % A(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      w.add_row(t, bad);
    }
    if (A(t, t) < 0) w.negate_row(t);
  }
done:
  return SmithForm{std::move(w.U), std::move(w.A), std::move(w.V)};
}

std::vector<std::vector<int>> index_subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i;
  for (;;) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == n - k + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

RatMatrix rational_inverse(const RatMatrix& input) {
  const Eigen::Index n = input.rows();
  if (n != input.cols()) throw std::invalid_argument("rational_inverse of a non-square matrix");
  RatMatrix a = input;
  RatMatrix inv = RatMatrix::Identity(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) throw SingularMatrix("matrix is singular");
    a.row(c).swap(a.row(p));
    inv.row(c).swap(inv.row(p));
    const Rational pivot = a(c, c);
    a.row(c) /= pivot;
    inv.row(c) /= pivot;
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r == c || a(r, c) == 0) continue;
      const Rational f = a(r, c);
      a.row(r) -= f * a.row(c);
      inv.row(r) -= f * inv.row(c);
    }
  }
  return inv;
}

bool is_unimodular(const IntMatrix& A) {
  if (A.rows() != A.cols()) return false;
  return abs(determinant(A)) == 1;
}

int rank(const RatMatrix& input) {
  RatMatrix a = input;
  int r = 0;
  for (Eigen::Index c = 0; c < a.cols() && r < a.rows(); ++c) {
    Eigen::Index p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    a.row(r).swap(a.row(p));
    for (Eigen::Index i = r + 1; i < a.rows(); ++i) {
      if (a(i, c) == 0) continue;
      const Rational f = a(i, c) / a(r, c);
      a.row(i) -= f * a.row(r);
    }
    ++r;
  }
  return r;
}

int rank_mod(const IntMatrix& input, Prime prime) {
  const Integer p = prime;
  IntMatrix a = mod(input, p);
  int r = 0;
  for (Eigen::Index c = 0; c < a.cols() && r < a.rows(); ++c) {
    Eigen::Index piv = r;
    while (piv < a.rows() && a(piv, c) == 0) ++piv;
    if (piv == a.rows()) continue;
    a.row(r).swap(a.row(piv));
    // inverse of the pivot by Fermat
    const Integer inv = mp::powm(a(r, c), p - 2, p);
    for (Eigen::Index j = 0; j < a.cols(); ++j) a(r, j) = a(r, j) * inv % p;
    for (Eigen::Index i = r + 1; i < a.rows(); ++i) {
      if (a(i, c) == 0) continue;
      const Integer f = a(i, c);
      for (Eigen::Index j = 0; j < a.cols(); ++j) {
        a(i, j) = (a(i, j) - f * a(r, j)) % p;
        if (a(i, j) < 0) a(i, j) += p;
      }
    }
    ++r;
  }
  return r;
}

std::optional<RatVector> solve(const RatMatrix& A, const RatVector& b) {
  const Eigen::Index m = A.rows(), n = A.cols();
  RatMatrix aug(m, n + 1);
  aug.leftCols(n) = A;
  aug.col(n) = b;
  std::vector<Eigen::Index> pivot_cols;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < n && r < m; ++c) {
    Eigen::Index p = r;
    while (p < m && aug(p, c) == 0) ++p;
    if (p == m) continue;
    aug.row(r).swap(aug.row(p));
    const Rational pivot = aug(r, c);
    aug.row(r) /= pivot;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (i == r || aug(i, c) == 0) continue;
      const Rational f = aug(i, c);
      aug.row(i) -= f * aug.row(r);
    }
    pivot_cols.push_back(c);
    ++r;
  }
  for (Eigen::Index i = r; i < m; ++i)
    if (aug(i, n) != 0) return std::nullopt;
  RatVector x = RatVector::Zero(n);
  for (Eigen::Index i = 0; i < r; ++i) x(pivot_cols[static_cast<std::size_t>(i)]) = aug(i, n);
  return x;
}

IntMatrix block_diagonal(const std::vector<IntMatrix>& blocks) {
  Eigen::Index rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  IntMatrix out = IntMatrix::Zero(rows, cols);
  Eigen::Index r = 0, c = 0;
  for (const auto& b : blocks) {
    out.block(r, c, b.rows(), b.cols()) = b;
    r += b.rows();
    c += b.cols();
  }
  return out;
}

IntMatrix mod(const IntMatrix& A, const Integer& m) {
  IntMatrix out(A.rows(), A.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      Integer v = A(i, j) % m;
      if (v < 0) v += m;
      out(i, j) = v;
    }
  return out;
}

}  // namespace abelk
