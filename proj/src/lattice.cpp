#include "lamplighter/lattice.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace lamplighter {

namespace {

constexpr std::uint64_t kEnumerationCap = 10'000'000;

std::vector<std::int64_t> primes_up_to(std::int64_t n) {
  std::vector<std::int64_t> primes;
  for (std::int64_t p = 2; p <= n; ++p) {
    bool prime = true;
    for (std::int64_t q : primes) {
      if (q * q > p) break;
      if (p % q == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(p);
  }
  return primes;
}

std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::vector<std::int64_t> factors;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    factors.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) factors.push_back(n);
  return factors;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> ds;
  for (std::int64_t d = 1; d <= n; ++d) {
    if (n % d == 0) ds.push_back(d);
  }
  return ds;
}

void require_square(const IntMatrix& m, const char* what) {
  if (m.rows() != m.cols()) throw Error(std::string(what) + ": matrix must be square");
}

bool is_identity(const IntMatrix& m) { return m == IntMatrix::Identity(m.rows(), m.cols()); }

// Enumerates the box prod [0, d_i) in lexicographic order, last index fastest.
void for_each_in_box(const std::vector<std::int64_t>& dims,
                     const std::function<void(const std::vector<std::int64_t>&)>& visit) {
  std::uint64_t total = 1;
  for (auto d : dims) {
    if (d <= 0) throw Error("empty enumeration box");
    total *= static_cast<std::uint64_t>(d);
    if (total > kEnumerationCap) throw BudgetExceeded("enumeration exceeds element cap");
  }
  std::vector<std::int64_t> c(dims.size(), 0);
  for (std::uint64_t step = 0; step < total; ++step) {
    visit(c);
    for (std::size_t i = dims.size(); i-- > 0;) {
      if (++c[i] < dims[i]) break;
      c[i] = 0;
    }
  }
}

std::vector<std::int64_t> smith_invariants(const SmithDecomposition<Integer>& s) {
  std::vector<std::int64_t> dims;
  for (Eigen::Index i = 0; i < s.D.rows(); ++i) {
    const Integer& d = s.D(i, i);
    if (d == 0) throw Error("infinite index");
    if (d > Integer(static_cast<std::int64_t>(kEnumerationCap))) {
      throw BudgetExceeded("invariant factor too large to enumerate");
    }
    dims.push_back(d.convert_to<std::int64_t>());
  }
  return dims;
}

Rational fractional_part(const Rational& q) {
  const Integer num = boost::multiprecision::numerator(q);
  const Integer den = boost::multiprecision::denominator(q);
  Integer r = num % den;
  if (r < 0) r += den;
  return Rational(r, den);
}

}  // namespace

std::string to_string(const LatticeVector& v) {
  std::ostringstream os;
  os << '(';
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
  os << ')';
  return os.str();
}

std::string to_string(const IntMatrix& m) {
  std::ostringstream os;
  os << '[';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (i) os << ',';
    os << '[';
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) os << ',';
      os << m(i, j);
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

std::string to_string(const Order& order) {
  return order.is_finite() ? std::to_string(order.value()) : std::string("infinite");
}

bool is_unimodular(const IntMatrix& a) {
  if (a.rows() != a.cols()) return false;
  const Integer d = determinant(a);
  return d == 1 || d == -1;
}

IntMatrix unimodular_inverse(const IntMatrix& a) {
  if (!is_unimodular(a)) throw Error("matrix is not unimodular");
  // For unimodular A the Smith form is the identity, so A^{-1} = V U.
  const auto s = smith_normal_form(a);
  return (s.V * s.U).eval();
}

std::int64_t torsion_order_bound(Eigen::Index k) {
  if (k < 0) throw Error("negative rank");
  const auto primes = primes_up_to(static_cast<std::int64_t>(k) + 1);
  std::int64_t best = 1;
  std::function<void(std::size_t, std::int64_t, std::int64_t)> search =
      [&](std::size_t idx, std::int64_t budget, std::int64_t n) {
        best = std::max(best, n);
        for (std::size_t i = idx; i < primes.size(); ++i) {
          const std::int64_t p = primes[i];
          std::int64_t power = p;
          std::int64_t totient = p - 1;
          while (true) {
            const std::int64_t cost = (power == 2) ? 0 : totient;
            if (cost > budget) break;
            search(i + 1, budget - cost, n * power);
            power *= p;
            totient *= p;
          }
        }
      };
  search(0, static_cast<std::int64_t>(k), 1);
  return best;
}

Order matrix_order(const IntMatrix& a) {
  require_square(a, "matrix_order");
  if (!is_unimodular(a)) throw Error("matrix_order: matrix is not unimodular");
  const std::int64_t bound = torsion_order_bound(a.rows());
  IntMatrix power = a;
  for (std::int64_t r = 1; r <= bound; ++r) {
    if (is_identity(power)) return Order::finite(r);
    power = (power * a).eval();
  }
  return Order::infinite();
}

Order orbit_length(const IntMatrix& a, const LatticeVector& x) {
  require_square(a, "orbit_length");
  if (x.size() != a.cols()) throw Error("orbit_length: dimension mismatch");
  const std::int64_t bound = torsion_order_bound(a.rows());
  LatticeVector y = a * x;
  for (std::int64_t r = 1; r <= bound; ++r) {
    if (y == x) return Order::finite(r);
    y = (a * y).eval();
  }
  return Order::infinite();
}

std::int64_t point_period(const IntMatrix& a, const LatticeVector& x) {
  if (matrix_order(a).is_infinite()) {
    throw Error("point_period: matrix has infinite order");
  }
  return orbit_length(a, x).value();
}

OrbitReport realized_periods(const IntMatrix& a) {
  OrbitReport report;
  report.order = matrix_order(a);
  const Eigen::Index k = a.rows();
  report.realized_periods.emplace(1, LatticeVector::Zero(k));
  for (Eigen::Index i = 0; i < k; ++i) {
    const LatticeVector e = LatticeVector::Unit(k, i);
    const Order l = orbit_length(a, e);
    report.basis_periods.push_back(l);
    if (report.order.is_infinite() && l.is_finite()) {
      report.realized_periods.emplace(l.value(), e);
    }
  }
  if (report.order.is_infinite()) return report;

  const IntMatrix id = IntMatrix::Identity(k, k);
  for (std::int64_t r : divisors(report.order.value())) {
    if (r == 1) continue;
    const IntMatrix full = (matrix_power(a, static_cast<std::uint64_t>(r)) - id).eval();
    const Eigen::Index full_rank = kernel_rank(full);
    std::vector<IntMatrix> proper;
    bool realized = full_rank > 0;
    for (std::int64_t q : prime_factors(r)) {
      IntMatrix sub = (matrix_power(a, static_cast<std::uint64_t>(r / q)) - id).eval();
      if (kernel_rank(sub) >= full_rank) {
        realized = false;
        break;
      }
      proper.push_back(std::move(sub));
    }
    if (!realized) continue;

    // Walk the moment curve sum_i j^i b_i through the kernel; each proper
    // subspace meets it in fewer than dim points, so a witness appears
    // within dim * |proper| + 1 steps.
    const IntMatrix basis = kernel_basis(full);
    const Eigen::Index dim = basis.cols();
    const auto tries = static_cast<std::int64_t>(dim * static_cast<Eigen::Index>(proper.size()) + 1);
    for (std::int64_t j = 1; j <= tries; ++j) {
      LatticeVector w = LatticeVector::Zero(k);
      Integer coeff = 1;
      for (Eigen::Index c = 0; c < dim; ++c) {
        w += coeff * basis.col(c);
        coeff *= j;
      }
      const bool escapes = std::all_of(proper.begin(), proper.end(), [&](const IntMatrix& s) {
        return !(s * w).isZero();
      });
      if (escapes) {
        report.realized_periods.emplace(r, w);
        break;
      }
    }
  }
  return report;
}

std::vector<RationalVector> fixed_characters(const IntMatrix& a) {
  require_square(a, "fixed_characters");
  const Eigen::Index k = a.rows();
  const IntMatrix id = IntMatrix::Identity(k, k);
  if (determinant(IntMatrix(id - a)) == 0) throw Error("infinitely many fixed characters");
  const IntMatrix n = (a.transpose() - id).eval();
  const auto s = smith_normal_form(n);
  const auto dims = smith_invariants(s);
  const MatrixX<Rational> v = s.V.cast<Rational>();

  std::vector<RationalVector> out;
  for_each_in_box(dims, [&](const std::vector<std::int64_t>& c) {
    RationalVector psi(k);
    for (Eigen::Index i = 0; i < k; ++i) psi[i] = Rational(c[static_cast<std::size_t>(i)], dims[static_cast<std::size_t>(i)]);
    RationalVector chi = v * psi;
    for (Eigen::Index i = 0; i < k; ++i) chi[i] = fractional_part(chi[i]);
    out.push_back(std::move(chi));
  });
  return out;
}

std::vector<LatticeVector> coset_representatives(const IntMatrix& m) {
  require_square(m, "coset_representatives");
  const auto s = smith_normal_form(m);
  const auto dims = smith_invariants(s);
  std::vector<LatticeVector> out;
  for_each_in_box(dims, [&](const std::vector<std::int64_t>& c) {
    LatticeVector y(m.rows());
    for (Eigen::Index i = 0; i < m.rows(); ++i) y[i] = c[static_cast<std::size_t>(i)];
    out.emplace_back(s.U_inverse * y);
  });
  return out;
}

std::optional<LatticeVector> solve_integer(const IntMatrix& m, const LatticeVector& b) {
  if (b.size() != m.rows()) throw Error("solve_integer: dimension mismatch");
  const auto s = smith_normal_form(m);
  const LatticeVector c = s.U * b;
  LatticeVector y = LatticeVector::Zero(m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const Integer d = (i < m.cols()) ? s.D(i, i) : Integer(0);
    if (d == 0) {
      if (c[i] != 0) return std::nullopt;
      continue;
    }
    if (c[i] % d != 0) return std::nullopt;
    y[i] = c[i] / d;
  }
  return LatticeVector(s.V * y);
}

Integer cokernel_exponent(const IntMatrix& m) {
  require_square(m, "cokernel_exponent");
  const auto s = smith_normal_form(m);
  Integer e = 1;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (s.D(i, i) == 0) throw Error("infinite index");
    e = std::max(e, s.D(i, i));
  }
  return e;
}

}  // namespace lamplighter
