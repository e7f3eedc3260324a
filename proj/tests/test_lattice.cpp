#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lamplighter/lattice.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

#include <numeric>
#include <set>

using namespace lamplighter;
using namespace lamplighter::testing;

namespace {

const IntMatrix kM = int_matrix({{0, 1}, {-1, -1}});

IntMatrix i_minus(const IntMatrix& a) { return IntMatrix(identity(a.rows()) - a); }

// Exact periods of all points in the ball |x|_inf <= r, by iteration.
std::set<std::int64_t> periods_in_ball(const IntMatrix& a, int r) {
  const Eigen::Index k = a.rows();
  std::set<std::int64_t> out;
  LatticeVector x = LatticeVector::Constant(k, -r);
  for (;;) {
    LatticeVector y = a * x;
    std::int64_t p = 1;
    while (y != x) {
      y = a * y;
      ++p;
    }
    out.insert(p);
    Eigen::Index i = 0;
    while (i < k && x[i] == r) x[i++] = -r;
    if (i == k) break;
    x[i] += 1;
  }
  return out;
}

std::set<std::int64_t> keys(const OrbitReport& report) {
  std::set<std::int64_t> out;
  for (const auto& [s, w] : report.realized_periods) out.insert(s);
  return out;
}

}  // namespace

TEST_CASE("determinant") {
  CHECK(determinant(int_matrix({{1}})) == 1);
  CHECK(determinant(kM) == 1);
  CHECK(determinant(i_minus(kM)) == 3);
  CHECK(determinant(IntMatrix(IntMatrix::Zero(0, 0))) == 1);
  CHECK_THROWS_AS(determinant(IntMatrix(IntMatrix::Zero(2, 3))), Error);
}

TEST_CASE("determinant agrees with cofactor expansion") {
  Rng rng(kSeed);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index k = uniform(rng, 1, 5);
    IntMatrix a(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
      for (Eigen::Index j = 0; j < k; ++j) a(i, j) = uniform(rng, -9, 9);
    CHECK(determinant(a) == cofactor_determinant(a));
  }
}

TEST_CASE("determinant does not overflow") {
  // 40 x 40 with entries 10^6 on the diagonal: det = 10^240.
  IntMatrix a = IntMatrix(identity(40) * Integer(1'000'000));
  Integer expected = 1;
  for (int i = 0; i < 40; ++i) expected *= 1'000'000;
  CHECK(determinant(a) == expected);
}

TEST_CASE("rank and kernel_rank") {
  CHECK(kernel_rank(IntMatrix(IntMatrix::Zero(2, 2))) == 2);
  CHECK(kernel_rank(IntMatrix(-identity(2) - identity(2))) == 0);
  CHECK(kernel_rank(i_minus(int_matrix({{1, 1}, {0, 1}}))) == 1);
  CHECK(rank(int_matrix({{1, 2, 3}, {2, 4, 6}})) == 1);
}

TEST_CASE("smith normal form examples") {
  auto diag = [](const SmithDecomposition<Integer>& s) {
    std::vector<Integer> d;
    for (Eigen::Index i = 0; i < s.D.rows(); ++i) d.push_back(s.D(i, i));
    return d;
  };
  CHECK(diag(smith_normal_form(identity(3))) == std::vector<Integer>{1, 1, 1});
  CHECK(diag(smith_normal_form(int_matrix({{1, -1}, {1, 2}}))) == std::vector<Integer>{1, 3});
  CHECK(diag(smith_normal_form(int_matrix({{2, 0}, {0, 4}}))) == std::vector<Integer>{2, 4});
  CHECK(diag(smith_normal_form(int_matrix({{4, 0}, {0, 6}}))) == std::vector<Integer>{2, 12});
}

TEST_CASE("smith normal form invariants on random matrices") {
  Rng rng(kSeed + 1);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index k = uniform(rng, 1, 4);
    IntMatrix a(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
      for (Eigen::Index j = 0; j < k; ++j) a(i, j) = uniform(rng, -6, 6);
    const auto s = smith_normal_form(a);
    CHECK(IntMatrix(s.U * a * s.V) == s.D);
    CHECK(IntMatrix(s.U * s.U_inverse) == identity(k));
    CHECK(abs(cofactor_determinant(s.U)) == 1);
    CHECK(abs(cofactor_determinant(s.V)) == 1);
    for (Eigen::Index i = 0; i < k; ++i) {
      for (Eigen::Index j = 0; j < k; ++j) {
        if (i != j) CHECK(s.D(i, j) == 0);
      }
      CHECK(s.D(i, i) >= 0);
      if (i + 1 < k) {
        if (s.D(i, i) == 0) {
          CHECK(s.D(i + 1, i + 1) == 0);
        } else {
          CHECK(s.D(i + 1, i + 1) % s.D(i, i) == 0);
        }
      }
    }
    // |det| is the product of the invariant factors.
    Integer product = 1;
    for (Eigen::Index i = 0; i < k; ++i) product *= s.D(i, i);
    CHECK(product == abs(cofactor_determinant(a)));
    // Deterministic for a fixed pivot rule.
    CHECK(smith_normal_form(a).U == s.U);
  }
}

TEST_CASE("kernel basis spans the rational kernel") {
  const IntMatrix a = int_matrix({{1, 2, 3}, {2, 4, 6}, {1, 1, 1}});
  const IntMatrix basis = kernel_basis(a);
  CHECK(basis.cols() == 1);
  CHECK(IntMatrix(a * basis).isZero());
}

TEST_CASE("matrix order") {
  for (Eigen::Index k = 1; k <= 4; ++k) CHECK(matrix_order(IntMatrix(-identity(k))) == Order::finite(2));
  CHECK(matrix_order(kM) == Order::finite(3));
  CHECK(matrix_order(int_matrix({{2, 1}, {1, 1}})).is_infinite());
  CHECK(matrix_order(int_matrix({{1, 1}, {0, 1}})).is_infinite());
  CHECK(matrix_order(identity(3)) == Order::finite(1));
  CHECK(matrix_order(int_matrix({{0, 1}, {-1, 1}})) == Order::finite(6));
  CHECK_THROWS_AS(matrix_order(int_matrix({{2, 0}, {0, 1}})), Error);
}

TEST_CASE("matrix order agrees with iteration on random torsion") {
  Rng rng(kSeed + 2);
  for (int trial = 0; trial < 50; ++trial) {
    const IntMatrix a = random_finite_order(rng, 4, true);
    IntMatrix p = a;
    std::int64_t r = 1;
    while (p != identity(a.rows())) {
      p = IntMatrix(p * a);
      ++r;
    }
    CHECK(matrix_order(a) == Order::finite(r));
  }
}

TEST_CASE("torsion order bound") {
  // Largest orders of finite subgroups' elements in GL_k(Z): 2, 6, 6, 12, 12, 30.
  CHECK(torsion_order_bound(1) == 2);
  CHECK(torsion_order_bound(2) == 6);
  CHECK(torsion_order_bound(3) == 6);
  CHECK(torsion_order_bound(4) == 12);
  CHECK(torsion_order_bound(5) == 12);
  CHECK(torsion_order_bound(6) == 30);
}

TEST_CASE("realized periods") {
  CHECK(keys(realized_periods(IntMatrix(-identity(2)))) == std::set<std::int64_t>{1, 2});
  CHECK(keys(realized_periods(kM)) == std::set<std::int64_t>{1, 3});
  const IntMatrix mixed = block_diagonal({kM, IntMatrix(-identity(2))});
  CHECK(keys(realized_periods(mixed)) == std::set<std::int64_t>{1, 2, 3, 6});
  CHECK(keys(realized_periods(kM)) == periods_in_ball(kM, 5));
  CHECK(keys(realized_periods(mixed)) == periods_in_ball(mixed, 2));
  CHECK(realized_periods(kM).realized_periods.at(1) == LatticeVector::Zero(2));
}

TEST_CASE("realized period witnesses have exact periods") {
  Rng rng(kSeed + 3);
  for (int trial = 0; trial < 40; ++trial) {
    const IntMatrix a = random_finite_order(rng, 4, true);
    const OrbitReport report = realized_periods(a);
    REQUIRE(report.order.is_finite());
    for (const auto& [s, w] : report.realized_periods) {
      CHECK(report.order.value() % s == 0);
      CHECK(LatticeVector(matrix_power(a, static_cast<std::uint64_t>(s)) * w) == w);
      for (std::int64_t d = 1; d < s; ++d) {
        if (s % d == 0) CHECK(LatticeVector(matrix_power(a, static_cast<std::uint64_t>(d)) * w) != w);
      }
    }
    if (a.rows() <= 3) CHECK(keys(report) == periods_in_ball(a, 2));
  }
}

TEST_CASE("realized periods of an infinite-order matrix") {
  const OrbitReport report = realized_periods(int_matrix({{2, 1}, {1, 1}}));
  CHECK(report.order.is_infinite());
  CHECK(report.realized_periods.count(1) == 1);
}

TEST_CASE("point period") {
  CHECK(point_period(kM, LatticeVector::Zero(2)) == 1);
  CHECK(point_period(IntMatrix(-identity(2)), lattice_vector({1, 0})) == 2);
  CHECK(point_period(kM, lattice_vector({1, 0})) == 3);
  CHECK_THROWS_AS(point_period(int_matrix({{2, 1}, {1, 1}}), lattice_vector({1, 0})), Error);
  CHECK(orbit_length(int_matrix({{2, 1}, {1, 1}}), lattice_vector({1, 0})).is_infinite());
  CHECK(orbit_length(int_matrix({{2, 1}, {1, 1}}), LatticeVector::Zero(2)) == Order::finite(1));
}

TEST_CASE("fixed characters") {
  const auto half = fixed_characters(int_matrix({{-1}}));
  REQUIRE(half.size() == 2);
  CHECK(half[0][0] == Rational(0));
  CHECK(half[1][0] == Rational(1, 2));
  CHECK(fixed_characters(kM).size() == 3);
  CHECK_THROWS_WITH_AS(fixed_characters(identity(2)), "infinitely many fixed characters", Error);
}

TEST_CASE("fixed characters solve the character equation") {
  Rng rng(kSeed + 4);
  for (int trial = 0; trial < 30; ++trial) {
    const IntMatrix a = random_finite_order(rng, 4);
    const auto chars = fixed_characters(a);
    CHECK(Integer(chars.size()) == abs(cofactor_determinant(i_minus(a))));
    std::set<std::vector<Rational>> distinct;
    for (const auto& chi : chars) {
      std::vector<Rational> entries(chi.data(), chi.data() + chi.size());
      distinct.insert(entries);
      for (Eigen::Index i = 0; i < chi.size(); ++i) {
        CHECK(chi[i] >= 0);
        CHECK(chi[i] < 1);
        Rational row = -chi[i];
        for (Eigen::Index j = 0; j < chi.size(); ++j) row += Rational(a(j, i)) * chi[j];
        CHECK(denominator(row) == 1);
      }
    }
    CHECK(distinct.size() == chars.size());
  }
}

TEST_CASE("coset representatives") {
  const auto two = coset_representatives(int_matrix({{2}}));
  REQUIRE(two.size() == 2);
  CHECK(two[0] == lattice_vector({0}));
  CHECK(two[1] == lattice_vector({1}));
  CHECK(coset_representatives(identity(2)) == std::vector<LatticeVector>{LatticeVector::Zero(2)});
  CHECK_THROWS_WITH_AS(coset_representatives(int_matrix({{1, 1}, {1, 1}})), "infinite index", Error);

  const IntMatrix m = i_minus(kM);
  const auto reps = coset_representatives(m);
  REQUIRE(reps.size() == 3);
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t j = i + 1; j < reps.size(); ++j) CHECK_FALSE(in_image(m, LatticeVector(reps[i] - reps[j])));
}

TEST_CASE("coset representatives cover every coset on random matrices") {
  Rng rng(kSeed + 5);
  for (int trial = 0; trial < 30; ++trial) {
    const IntMatrix m = i_minus(random_finite_order(rng, 3));
    const auto reps = coset_representatives(m);
    CHECK(Integer(reps.size()) == abs(cofactor_determinant(m)));
    for (std::size_t i = 0; i < reps.size(); ++i)
      for (std::size_t j = i + 1; j < reps.size(); ++j) CHECK_FALSE(in_image(m, LatticeVector(reps[i] - reps[j])));
    // Every small vector is congruent to one of them.
    for (int probe = 0; probe < 10; ++probe) {
      const LatticeVector x = random_vector(rng, m.rows(), 6);
      int hits = 0;
      for (const auto& r : reps) hits += in_image(m, LatticeVector(x - r));
      CHECK(hits == 1);
    }
  }
}

TEST_CASE("solve_integer and cokernel exponent") {
  const IntMatrix m = i_minus(kM);
  CHECK_FALSE(solve_integer(m, lattice_vector({1, 0})).has_value());
  const auto sol = solve_integer(m, lattice_vector({3, 0}));
  REQUIRE(sol.has_value());
  CHECK(LatticeVector(m * *sol) == lattice_vector({3, 0}));
  CHECK(cokernel_exponent(m) == 3);
  CHECK(cokernel_exponent(IntMatrix(2 * identity(3))) == 2);
  CHECK(cokernel_exponent(int_matrix({{2, 0}, {0, 3}})) == 6);
}

TEST_CASE("unimodular inverse") {
  Rng rng(kSeed + 6);
  for (int trial = 0; trial < 50; ++trial) {
    const IntMatrix a = random_unimodular(rng, uniform(rng, 1, 4));
    CHECK(is_unimodular(a));
    CHECK(IntMatrix(a * unimodular_inverse(a)) == identity(a.rows()));
  }
  CHECK_FALSE(is_unimodular(int_matrix({{2, 0}, {0, 1}})));
}

TEST_CASE("first column of every power of a unimodular matrix has gcd 1") {
  Rng rng(kSeed + 7);
  for (int trial = 0; trial < 25; ++trial) {
    const IntMatrix a = random_unimodular(rng, uniform(rng, 2, 3));
    IntMatrix p = a;
    for (int power = 1; power <= 8; ++power, p = IntMatrix(p * a)) {
      Integer g = 0;
      for (Eigen::Index i = 0; i < p.rows(); ++i) g = gcd(g, p(i, 0));
      CHECK(g == 1);
    }
  }
}

TEST_CASE("text forms") {
  CHECK(to_string(lattice_vector({1, -2})) == "(1,-2)");
  CHECK(to_string(kM) == "[[0,1],[-1,-1]]");
  CHECK(to_string(Order::infinite()) == "infinite");
  CHECK(to_string(Order::finite(3)) == "3");
}
