#pragma once

#include "a3pi/errors.hpp"
#include "a3pi/integer.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace a3pi {

// U * M * V == D with U, V unimodular and D diagonal, d_0 | d_1 | ... .
// The inverses are tracked alongside so lattice bases can be read off
// without a second elimination.
template <typename Scalar>
struct SmithDecomposition {
  Matrix<Scalar> U, D, V;
  Matrix<Scalar> U_inv, V_inv;
  Eigen::Index rank = 0;

  std::vector<Scalar> diagonal() const {
    std::vector<Scalar> out;
    const Eigen::Index k = std::min(D.rows(), D.cols());
    out.reserve(static_cast<std::size_t>(k));
    for (Eigen::Index i = 0; i < k; ++i) out.push_back(D(i, i));
    return out;
  }
};

namespace detail {

// Elimination with smallest-|pivot| selection. Track = false skips the
// transform bookkeeping when only the invariant factors are wanted.
template <typename Scalar, bool Track>
class SmithReducer {
 public:
  using Index = Eigen::Index;

  explicit SmithReducer(Matrix<Scalar> m) : D(std::move(m)) {
    if constexpr (Track) {
      U = Matrix<Scalar>::Identity(D.rows(), D.rows());
      U_inv = U;
      V = Matrix<Scalar>::Identity(D.cols(), D.cols());
      V_inv = V;
    }
  }

  void run() {
    const Index m = D.rows();
    const Index n = D.cols();
    for (Index t = 0; t < std::min(m, n); ++t) {
      Index pi = 0, pj = 0;
      if (!find_smallest(t, m, t, n, pi, pj)) break;
      move_to_pivot(t, pi, pj);
      for (;;) {
        if (!clear_cross(t)) {
          // A remainder survived; it is smaller than the pivot, so promote it.
          Index ci = t, cj = t;
          find_smallest_on_cross(t, ci, cj);
          move_to_pivot(t, ci, cj);
          continue;
        }
        Index bad_row = -1;
        for (Index i = t + 1; i < m && bad_row < 0; ++i)
          for (Index j = t + 1; j < n; ++j)
            if (!is_zero(Scalar(D(i, j) % D(t, t)))) {
              bad_row = i;
              break;
            }
        if (bad_row < 0) break;
        add_row(t, bad_row, Scalar(1));
      }
      if (sign_of(D(t, t)) < 0) negate_row(t);
      rank = t + 1;
    }
  }

  Matrix<Scalar> D, U, U_inv, V, V_inv;
  Index rank = 0;

 private:
  bool find_smallest(Index r0, Index r1, Index c0, Index c1, Index& pi, Index& pj) const {
    bool found = false;
    Scalar best;
    for (Index i = r0; i < r1; ++i)
      for (Index j = c0; j < c1; ++j) {
        if (is_zero(D(i, j))) continue;
        Scalar a = abs_value(D(i, j));
        if (!found || a < best) {
          best = a;
          pi = i;
          pj = j;
          found = true;
        }
      }
    return found;
  }

  void find_smallest_on_cross(Index t, Index& pi, Index& pj) const {
    Scalar best = abs_value(D(t, t));
    for (Index i = t + 1; i < D.rows(); ++i)
      if (!is_zero(D(i, t)) && abs_value(D(i, t)) < best) {
        best = abs_value(D(i, t));
        pi = i;
        pj = t;
      }
    for (Index j = t + 1; j < D.cols(); ++j)
      if (!is_zero(D(t, j)) && abs_value(D(t, j)) < best) {
        best = abs_value(D(t, j));
        pi = t;
        pj = j;
      }
  }

  // Returns true when row t and column t are zero off the pivot.
  bool clear_cross(Index t) {
    bool clean = true;
    for (Index i = t + 1; i < D.rows(); ++i) {
      if (is_zero(D(i, t))) continue;
      Scalar q = D(i, t) / D(t, t);
      if (!is_zero(q)) add_row(i, t, Scalar(-q));
      if (!is_zero(D(i, t))) clean = false;
    }
    for (Index j = t + 1; j < D.cols(); ++j) {
      if (is_zero(D(t, j))) continue;
      Scalar q = D(t, j) / D(t, t);
      if (!is_zero(q)) add_col(j, t, Scalar(-q));
      if (!is_zero(D(t, j))) clean = false;
    }
    return clean;
  }

  void move_to_pivot(Index t, Index i, Index j) {
    if (i != t) swap_rows(t, i);
    if (j != t) swap_cols(t, j);
  }

  void swap_rows(Index a, Index b) {
    D.row(a).swap(D.row(b));
    if constexpr (Track) {
      U.row(a).swap(U.row(b));
      U_inv.col(a).swap(U_inv.col(b));
    }
  }

  void swap_cols(Index a, Index b) {
    D.col(a).swap(D.col(b));
    if constexpr (Track) {
      V.col(a).swap(V.col(b));
      V_inv.row(a).swap(V_inv.row(b));
    }
  }

  // row_i += q * row_t
  void add_row(Index i, Index t, const Scalar& q) {
    D.row(i) += q * D.row(t);
    if constexpr (Track) {
      U.row(i) += q * U.row(t);
      U_inv.col(t) -= q * U_inv.col(i);
    }
  }

  // col_j += q * col_t
  void add_col(Index j, Index t, const Scalar& q) {
    D.col(j) += q * D.col(t);
    if constexpr (Track) {
      V.col(j) += q * V.col(t);
      V_inv.row(t) -= q * V_inv.row(j);
    }
  }

  void negate_row(Index t) {
    D.row(t) = -D.row(t);
    if constexpr (Track) {
      U.row(t) = -U.row(t);
      U_inv.col(t) = -U_inv.col(t);
    }
  }
};

}  // namespace detail

template <typename Derived>
SmithDecomposition<typename Derived::Scalar> smith_normal_form(const Eigen::MatrixBase<Derived>& M) {
  using Scalar = typename Derived::Scalar;
  detail::SmithReducer<Scalar, true> red(M.eval());
  red.run();
  SmithDecomposition<Scalar> out;
  out.U = std::move(red.U);
  out.D = std::move(red.D);
  out.V = std::move(red.V);
  out.U_inv = std::move(red.U_inv);
  out.V_inv = std::move(red.V_inv);
  out.rank = red.rank;
  return out;
}

// Invariant factors only, length min(rows, cols), zeros last.
template <typename Derived>
std::vector<typename Derived::Scalar> smith_diagonal(const Eigen::MatrixBase<Derived>& M) {
  using Scalar = typename Derived::Scalar;
  detail::SmithReducer<Scalar, false> red(M.eval());
  red.run();
  std::vector<Scalar> out;
  const Eigen::Index k = std::min(red.D.rows(), red.D.cols());
  for (Eigen::Index i = 0; i < k; ++i) out.push_back(red.D(i, i));
  return out;
}

// Columns form a basis of {x : A x = 0}.
template <typename Derived>
Matrix<typename Derived::Scalar> integer_kernel(const Eigen::MatrixBase<Derived>& A) {
  auto snf = smith_normal_form(A);
  return snf.V.rightCols(A.cols() - snf.rank);
}

// Columns form a basis of the lattice spanned by the columns of G.
template <typename Derived>
Matrix<typename Derived::Scalar> lattice_basis(const Eigen::MatrixBase<Derived>& G) {
  using Scalar = typename Derived::Scalar;
  auto snf = smith_normal_form(G);
  Matrix<Scalar> B(G.rows(), snf.rank);
  for (Eigen::Index j = 0; j < snf.rank; ++j) B.col(j) = snf.U_inv.col(j) * snf.D(j, j);
  return B;
}

// Some integer x with A x = b, or nothing.
template <typename DerivedA, typename DerivedB>
std::optional<Vector<typename DerivedA::Scalar>> solve_integer(const Eigen::MatrixBase<DerivedA>& A,
                                                               const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  if (A.rows() != b.rows()) throw DimensionMismatch("solve_integer: row count mismatch");
  auto snf = smith_normal_form(A);
  Vector<Scalar> y = snf.U * b;
  Vector<Scalar> z = Vector<Scalar>::Zero(A.cols());
  for (Eigen::Index j = 0; j < y.rows(); ++j) {
    if (j < snf.rank) {
      if (!is_zero(Scalar(y(j) % snf.D(j, j)))) return std::nullopt;
      z(j) = y(j) / snf.D(j, j);
    } else if (!is_zero(y(j))) {
      return std::nullopt;
    }
  }
  return Vector<Scalar>(snf.V * z);
}

}  // namespace a3pi
