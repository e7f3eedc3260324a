#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lamplighter {

// Exact scalars. Expression templates are disabled so they interoperate
// with Eigen's own expression machinery.
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = MatrixX<Integer>;
using LatticeVector = VectorX<Integer>;
using RationalVector = VectorX<Rational>;

/// Residues mod m are kept as small machine integers in [0, m).
using Residue = std::int64_t;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an exhaustive computation would exceed its element budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

inline Residue mod(Residue a, Residue m) {
  Residue r = a % m;
  return r < 0 ? r + m : r;
}

inline Residue mod(const Integer& a, Residue m) {
  Integer r = a % m;
  if (r < 0) r += m;
  return r.convert_to<Residue>();
}

/// Strict lexicographic order on vectors, used for canonical ordering of
/// lattice points.
struct LexLess {
  template <typename Scalar>
  bool operator()(const VectorX<Scalar>& a, const VectorX<Scalar>& b) const {
    const Eigen::Index n = std::min(a.size(), b.size());
    for (Eigen::Index i = 0; i < n; ++i) {
      if (a[i] < b[i]) return true;
      if (b[i] < a[i]) return false;
    }
    return a.size() < b.size();
  }
};

inline LatticeVector lattice_vector(std::initializer_list<long> coords) {
  LatticeVector v(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (long c : coords) v[i++] = c;
  return v;
}

inline IntMatrix int_matrix(std::initializer_list<std::initializer_list<long>> rows) {
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = r == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(rows.begin()->size());
  IntMatrix m(r, c);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Eigen::Index>(row.size()) != c) throw Error("ragged matrix rows");
    Eigen::Index j = 0;
    for (long v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

inline IntMatrix identity(Eigen::Index k) { return IntMatrix::Identity(k, k); }

std::string to_string(const LatticeVector& v);
std::string to_string(const IntMatrix& m);

}  // namespace lamplighter
