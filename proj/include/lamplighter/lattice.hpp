#pragma once

// Exact integer-matrix machinery over Z^k: determinants, Smith normal form,
// kernels, torsion orders in GL_k(Z), orbit periods, characters of the dual
// torus fixed by A, and coset enumeration for full-rank sublattices.

#include "lamplighter/types.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace lamplighter {

namespace detail {

template <typename Scalar>
Scalar abs_value(const Scalar& x) {
  return x < Scalar(0) ? Scalar(-x) : x;
}

}  // namespace detail

/// Fraction-free (Bareiss) determinant. Exact for any integral-domain scalar.
template <typename Scalar>
Scalar determinant(MatrixX<Scalar> m) {
  const Eigen::Index n = m.rows();
  if (m.cols() != n) throw Error("determinant of a non-square matrix");
  if (n == 0) return Scalar(1);
  Scalar sign(1);
  Scalar prev(1);
  for (Eigen::Index p = 0; p < n - 1; ++p) {
    if (m(p, p) == Scalar(0)) {
      Eigen::Index swap_row = -1;
      for (Eigen::Index i = p + 1; i < n; ++i) {
        if (m(i, p) != Scalar(0)) {
          swap_row = i;
          break;
        }
      }
      if (swap_row < 0) return Scalar(0);
      m.row(p).swap(m.row(swap_row));
      sign = -sign;
    }
    for (Eigen::Index i = p + 1; i < n; ++i) {
      for (Eigen::Index j = p + 1; j < n; ++j) {
        m(i, j) = (m(i, j) * m(p, p) - m(i, p) * m(p, j)) / prev;
      }
    }
    prev = m(p, p);
  }
  return sign * m(n - 1, n - 1);
}

/// Rank over the field of fractions, by fraction-free elimination.
template <typename Scalar>
Eigen::Index rank(MatrixX<Scalar> m) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  Eigen::Index r = 0;
  Scalar prev(1);
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index pivot = -1;
    for (Eigen::Index i = r; i < rows; ++i) {
      if (m(i, c) != Scalar(0)) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    m.row(r).swap(m.row(pivot));
    for (Eigen::Index i = r + 1; i < rows; ++i) {
      for (Eigen::Index j = c + 1; j < cols; ++j) {
        m(i, j) = (m(i, j) * m(r, c) - m(i, c) * m(r, j)) / prev;
      }
      m(i, c) = Scalar(0);
    }
    prev = m(r, c);
    ++r;
  }
  return r;
}

/// Dimension of the rational solution space of M x = 0.
template <typename Scalar>
Eigen::Index kernel_rank(const MatrixX<Scalar>& m) {
  return m.cols() - rank(m);
}

template <typename Scalar>
struct SmithDecomposition {
  MatrixX<Scalar> U;          // unimodular, row operations
  MatrixX<Scalar> V;          // unimodular, column operations
  MatrixX<Scalar> D;          // U * M * V, diagonal, d1 | d2 | ... , d_i >= 0
  MatrixX<Scalar> U_inverse;  // maintained alongside U

  Scalar diagonal(Eigen::Index i) const { return D(i, i); }
};

/// Smith normal form U M V = D.
///
/// Pivot rule: the nonzero entry of smallest absolute value in the active
/// block, scanning rows before columns, first index wins on ties. With that
/// rule the output is a deterministic function of the input.
template <typename Scalar>
SmithDecomposition<Scalar> smith_normal_form(const MatrixX<Scalar>& m) {
  using detail::abs_value;
  const Eigen::Index rows = m.rows(), cols = m.cols();
  SmithDecomposition<Scalar> s{MatrixX<Scalar>::Identity(rows, rows),
                               MatrixX<Scalar>::Identity(cols, cols), m,
                               MatrixX<Scalar>::Identity(rows, rows)};
  auto& D = s.D;
  auto& U = s.U;
  auto& V = s.V;
  auto& Ui = s.U_inverse;

  // row_i <- row_i - q * row_t
  auto row_axpy = [&](Eigen::Index i, Eigen::Index t, const Scalar& q) {
    D.row(i) -= q * D.row(t);
    U.row(i) -= q * U.row(t);
    Ui.col(t) += q * Ui.col(i);
  };
  auto col_axpy = [&](Eigen::Index j, Eigen::Index t, const Scalar& q) {
    D.col(j) -= q * D.col(t);
    V.col(j) -= q * V.col(t);
  };

  const Eigen::Index steps = std::min(rows, cols);
  for (Eigen::Index t = 0; t < steps; ++t) {
    for (;;) {
      Eigen::Index pi = -1, pj = -1;
      Scalar best(0);
      for (Eigen::Index i = t; i < rows; ++i) {
        for (Eigen::Index j = t; j < cols; ++j) {
          if (D(i, j) == Scalar(0)) continue;
          const Scalar a = abs_value(D(i, j));
          if (pi < 0 || a < best) {
            best = a;
            pi = i;
            pj = j;
          }
        }
      }
      if (pi < 0) {
        return s;  // remaining block is zero
      }
      if (pi != t) {
        D.row(t).swap(D.row(pi));
        U.row(t).swap(U.row(pi));
        Ui.col(t).swap(Ui.col(pi));
      }
      if (pj != t) {
        D.col(t).swap(D.col(pj));
        V.col(t).swap(V.col(pj));
      }

      bool clean = true;
      for (Eigen::Index i = t + 1; i < rows; ++i) {
        if (D(i, t) == Scalar(0)) continue;
        const Scalar q = D(i, t) / D(t, t);
        if (q != Scalar(0)) row_axpy(i, t, q);
        if (D(i, t) != Scalar(0)) clean = false;
      }
      for (Eigen::Index j = t + 1; j < cols; ++j) {
        if (D(t, j) == Scalar(0)) continue;
        const Scalar q = D(t, j) / D(t, t);
        if (q != Scalar(0)) col_axpy(j, t, q);
        if (D(t, j) != Scalar(0)) clean = false;
      }
      if (!clean) continue;

      Eigen::Index bad_row = -1;
      for (Eigen::Index i = t + 1; i < rows && bad_row < 0; ++i) {
        for (Eigen::Index j = t + 1; j < cols; ++j) {
          if (D(i, j) % D(t, t) != Scalar(0)) {
            bad_row = i;
            break;
          }
        }
      }
      if (bad_row < 0) break;
      // row_t <- row_t + row_bad brings a non-multiple into the pivot row.
      D.row(t) += D.row(bad_row);
      U.row(t) += U.row(bad_row);
      Ui.col(bad_row) -= Ui.col(t);
    }
    if (D(t, t) < Scalar(0)) {
      D.row(t) = -D.row(t);
      U.row(t) = -U.row(t);
      Ui.col(t) = -Ui.col(t);
    }
  }
  return s;
}

/// Integer basis of {x in Z^k : M x = 0}. The basis spans a saturated
/// sublattice (it is a set of columns of a unimodular matrix).
template <typename Scalar>
MatrixX<Scalar> kernel_basis(const MatrixX<Scalar>& m) {
  const auto s = smith_normal_form(m);
  std::vector<Eigen::Index> cols;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    if (j >= m.rows() || s.D(j, j) == Scalar(0)) cols.push_back(j);
  }
  MatrixX<Scalar> basis(m.cols(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    basis.col(static_cast<Eigen::Index>(c)) = s.V.col(cols[c]);
  }
  return basis;
}

template <typename Scalar>
MatrixX<Scalar> matrix_power(const MatrixX<Scalar>& a, std::uint64_t e) {
  MatrixX<Scalar> result = MatrixX<Scalar>::Identity(a.rows(), a.cols());
  MatrixX<Scalar> base = a;
  while (e != 0) {
    if (e & 1u) result = (result * base).eval();
    e >>= 1u;
    if (e != 0) base = (base * base).eval();
  }
  return result;
}

/// Order of an element of GL_k(Z), or infinite.
class Order {
 public:
  static Order infinite() { return Order{}; }
  static Order finite(std::int64_t n) { return Order{n}; }

  bool is_finite() const { return value_.has_value(); }
  bool is_infinite() const { return !value_.has_value(); }
  std::int64_t value() const {
    if (!value_) throw Error("order is infinite");
    return *value_;
  }

  friend bool operator==(const Order&, const Order&) = default;

 private:
  Order() = default;
  explicit Order(std::int64_t n) : value_(n) {}
  std::optional<std::int64_t> value_;
};

std::string to_string(const Order& order);

struct OrbitReport {
  Order order = Order::infinite();
  /// Exact period -> a lattice point whose A-orbit has exactly that length.
  std::map<std::int64_t, LatticeVector> realized_periods;
  /// Orbit lengths l_i of the standard basis vectors e_i.
  std::vector<Order> basis_periods;
};

bool is_unimodular(const IntMatrix& a);

/// Integer inverse of a unimodular matrix.
IntMatrix unimodular_inverse(const IntMatrix& a);

/// Largest n such that GL_k(Z) contains an element of order n: the maximum
/// of n over sum_{p^a || n, p^a != 2} phi(p^a) <= k.
std::int64_t torsion_order_bound(Eigen::Index k);

/// Smallest r >= 1 with A^r = I, or infinite. Throws on non-unimodular input.
Order matrix_order(const IntMatrix& a);

OrbitReport realized_periods(const IntMatrix& a);

/// Least r >= 1 with A^r x = x. Requires A of finite order.
std::int64_t point_period(const IntMatrix& a, const LatticeVector& x);

/// Length of the A-orbit of x if it is at most torsion_order_bound(k),
/// otherwise infinite. Valid for any unimodular A.
Order orbit_length(const IntMatrix& a, const LatticeVector& x);

/// Characters chi in (Q/Z)^k with (A^T - I) chi = 0 mod 1, in [0,1)^k.
std::vector<RationalVector> fixed_characters(const IntMatrix& a);

/// One representative per coset of M Z^k in Z^k.
std::vector<LatticeVector> coset_representatives(const IntMatrix& m);

/// Some x in Z^k with M x = b, if one exists.
std::optional<LatticeVector> solve_integer(const IntMatrix& m, const LatticeVector& b);

/// Exponent of the finite group Z^k / M Z^k (largest Smith invariant).
Integer cokernel_exponent(const IntMatrix& m);

}  // namespace lamplighter
