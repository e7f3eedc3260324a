#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lamplighter/finite_oracle.hpp"
#include "lamplighter/reidemeister.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "support/plain_group.hpp"

using namespace lamplighter;
using namespace lamplighter::testing;

namespace {

const IntMatrix kM = int_matrix({{0, 1}, {-1, -1}});

LatticeVector zero(Eigen::Index k) { return LatticeVector::Zero(k); }

FiniteSupportFunction delta(Residue m, std::initializer_list<long> x, Residue v = 1) {
  return FiniteSupportFunction::delta(m, lattice_vector(x), v);
}

// Determinant of the s x s block E - M over Z by cofactor expansion, then mod m.
Residue block_det_oracle(Residue u, std::int64_t s, Residue m) {
  IntMatrix b = identity(s);
  for (std::int64_t i = 0; i < s; ++i) b((i + 1) % s, i) -= u;
  return mod(cofactor_determinant(b), m);
}

bool same_quotient_class(const FiniteWreathGroup& group, const TwistedClasses& classes, const WreathElement& a,
                         const WreathElement& b) {
  return classes.class_of[group.encode(project(group, a))] == classes.class_of[group.encode(project(group, b))];
}

}  // namespace

TEST_CASE("unit order") {
  CHECK(unit_order(1, 7) == 1);
  CHECK(unit_order(2, 5) == 4);
  CHECK(unit_order(2, 3) == 2);
  CHECK(unit_order(2, 9) == 6);
  CHECK(unit_order(-1, 9) == 2);
  CHECK_THROWS_AS(unit_order(3, 9), Error);
  CHECK(is_unit(4, 9));
  CHECK_FALSE(is_unit(6, 9));
}

TEST_CASE("abelian Reidemeister number") {
  for (Eigen::Index k = 1; k <= 5; ++k) CHECK(*reidemeister_abelian(IntMatrix(-identity(k))) == Integer(1) << k);
  CHECK(*reidemeister_abelian(kM) == 3);
  CHECK_FALSE(reidemeister_abelian(identity(3)).has_value());
  CHECK(*reidemeister_abelian(int_matrix({{2, 1}, {1, 1}})) == 1);
}

TEST_CASE("cyclic block determinant") {
  CHECK(cyclic_block_det(4, 1, 7) == mod(1 - 4, 7));
  CHECK(cyclic_block_det(2, 2, 5) == 2);
  CHECK(cyclic_block_det(2, 3, 3) == 2);
  for (Residue m : {2, 3, 4, 5, 6, 9, 10}) {
    for (Residue u = 1; u < m; ++u) {
      if (!is_unit(u, m)) continue;
      for (std::int64_t s = 1; s <= 7; ++s) CHECK(cyclic_block_det(u, s, m) == block_det_oracle(u, s, m));
    }
  }
}

TEST_CASE("divisor coherence of block invertibility") {
  for (Residue m = 2; m <= 30; ++m) {
    for (Residue u = 1; u < m; ++u) {
      if (!is_unit(u, m)) continue;
      for (std::int64_t r = 1; r <= 24; ++r) {
        if (!is_unit(cyclic_block_det(u, r, m), m)) continue;
        for (std::int64_t d = 1; d < r; ++d) {
          if (r % d == 0) CHECK(is_unit(cyclic_block_det(u, d, m), m));
        }
      }
    }
  }
}

TEST_CASE("classify sigma") {
  Rng rng(kSeed);
  for (int trial = 0; trial < 20; ++trial) {
    const IntMatrix a = random_finite_order(rng, 3);
    const auto c = classify_sigma(WreathAutomorphism::make(2, a, 1, random_vector(rng, a.rows(), 3)));
    CHECK(c.kind == SigmaKind::NonEpiObstruction);
    CHECK(c.unit_order == 1);
  }
  for (Eigen::Index k = 1; k <= 3; ++k) {
    const auto c = classify_sigma(WreathAutomorphism::make(5, IntMatrix(-identity(k)), 2, zero(k)));
    CHECK(c.kind == SigmaKind::EpiEverywhere);
  }
  for (int trial = 0; trial < 10; ++trial) {
    const auto c = classify_sigma(WreathAutomorphism::make(3, kM, 2, random_vector(rng, 2, 6)));
    CHECK(c.kind == SigmaKind::EpiEverywhere);
    CHECK(c.unit_order == 2);
  }
  const auto hyperbolic = classify_sigma(WreathAutomorphism::make(5, int_matrix({{2, 1}, {1, 1}}), 2, zero(2)));
  CHECK(hyperbolic.kind == SigmaKind::InfiniteOrbitObstruction);
  REQUIRE(hyperbolic.unbounded_vector.has_value());
  CHECK(orbit_length(int_matrix({{2, 1}, {1, 1}}), *hyperbolic.unbounded_vector).is_infinite());
  CHECK_THROWS_AS(classify_sigma(WreathAutomorphism::make(5, identity(1), 2, zero(1))), Error);
}

TEST_CASE("non-epi witness is a genuine obstruction") {
  // m = 5, A = -I, u = 4: orbits of length 2 give 1 - 16 = 0 mod 5.
  const auto phi = WreathAutomorphism::make(5, IntMatrix(-identity(2)), 4, zero(2));
  const auto c = classify_sigma(phi);
  REQUIRE(c.kind == SigmaKind::NonEpiObstruction);
  CHECK(*c.orbit_period == 2);
  CHECK(*c.shift_period == 1);
  CHECK(*c.combined_period == 2);
  CHECK(point_period(phi.matrix, *c.orbit_witness) == 2);
  CHECK_FALSE(is_unit(cyclic_block_det(4, *c.combined_period, 5), 5));
}

TEST_CASE("composite modulus uses unit-ness, not primality") {
  // m = 9, u = 4 has order 3: 1 - 4 = -3 is not a unit mod 9.
  const auto phi = WreathAutomorphism::make(9, int_matrix({{-1}}), 4, zero(1));
  CHECK(reidemeister_number(phi).certificate.rule == Rule::NonEpiOrbit);
  // u = 2 mod 35: 1 - 2 = -1 and 1 - 4 = -3 are units.
  CHECK(*reidemeister_number(WreathAutomorphism::make(35, int_matrix({{-1}}), 2, zero(1))).value == 2);
}

TEST_CASE("Reidemeister number examples") {
  const auto casep3 = reidemeister_number(WreathAutomorphism::make(3, kM, 2, zero(2)));
  CHECK(casep3.value == Integer(3));
  CHECK(casep3.certificate.rule == Rule::Cylinder);
  const auto twice = reidemeister_number(WreathAutomorphism::make(3, block_diagonal({kM, kM}), 2, zero(4)));
  CHECK(twice.value == Integer(9));
  const auto u1 = reidemeister_number(WreathAutomorphism::make(3, kM, 1, zero(2)));
  CHECK_FALSE(u1.is_finite());
  CHECK(u1.certificate.rule == Rule::NonEpiOrbit);
  const auto det0 = reidemeister_number(WreathAutomorphism::make(5, int_matrix({{1, 1}, {0, 1}}), 2, zero(2)));
  CHECK(det0.certificate.rule == Rule::DetZero);
  REQUIRE(det0.certificate.fixed_vector.has_value());
  const LatticeVector v = *det0.certificate.fixed_vector;
  CHECK_FALSE(v.isZero());
  CHECK(LatticeVector(int_matrix({{1, 1}, {0, 1}}) * v) == v);
  CHECK(reidemeister_number(WreathAutomorphism::make(5, int_matrix({{2, 1}, {1, 1}}), 2, zero(2))).certificate.rule ==
        Rule::InfiniteOrbit);
}

TEST_CASE("verdict consistency and inner-twist invariance") {
  Rng rng(kSeed + 1);
  for (int trial = 0; trial < 60; ++trial) {
    const Residue m = std::array<Residue, 5>{2, 3, 5, 7, 9}[static_cast<std::size_t>(trial % 5)];
    const IntMatrix a = trial % 4 == 0 ? random_unimodular(rng, uniform(rng, 1, 3)) : random_finite_order(rng, 4);
    const Eigen::Index k = a.rows();
    const auto phi = WreathAutomorphism::make(m, a, random_unit(rng, m), random_vector(rng, k, 3));
    const auto verdict = reidemeister_number(phi);
    if (verdict.value) {
      CHECK(*verdict.value == abs(cofactor_determinant(IntMatrix(identity(k) - a))));
      CHECK(classify_sigma(phi).kind == SigmaKind::EpiEverywhere);
    }
    for (int i = 0; i < 3; ++i) {
      const auto twisted = compose_inner(random_element(rng, m, k), phi);
      CHECK(reidemeister_number(twisted).is_finite() == verdict.is_finite());
      CHECK(reidemeister_number(twisted).value == verdict.value);
    }
  }
}

TEST_CASE("verdict JSON round trip") {
  Rng rng(kSeed + 2);
  std::vector<WreathAutomorphism> autos{
      WreathAutomorphism::make(3, kM, 2, zero(2)), WreathAutomorphism::make(3, kM, 1, lattice_vector({1, 0})),
      WreathAutomorphism::make(5, identity(2), 2, zero(2)),
      WreathAutomorphism::make(5, int_matrix({{2, 1}, {1, 1}}), 2, zero(2))};
  for (const auto& phi : autos) {
    const auto v = reidemeister_number(phi);
    const auto j = verdict_to_json(v);
    CHECK(verdict_from_json(j) == v);
    CHECK(verdict_from_json(nlohmann::json::parse(j.dump())) == v);
  }
  const auto j = verdict_to_json(reidemeister_number(autos[0]));
  CHECK(j["verdict"] == "finite");
  CHECK(j["value"] == 3);
  CHECK(j["certificate"]["rule"] == "cylinder");
  CHECK(verdict_to_json(reidemeister_number(autos[1]))["certificate"]["rule"] == "non-epi-orbit");
  CHECK_FALSE(verdict_to_json(reidemeister_number(autos[1])).contains("value"));
  CHECK_THROWS_AS(rule_from_string("nonsense"), Error);
}

TEST_CASE("class representatives") {
  const auto reps = class_representatives(WreathAutomorphism::make(3, kM, 2, zero(2)));
  CHECK(reps.size() == 3);
  const auto two = class_representatives(WreathAutomorphism::make(5, int_matrix({{-1}}), 2, zero(1)));
  REQUIRE(two.size() == 2);
  CHECK(two[0] == WreathElement::translation(5, lattice_vector({0})));
  CHECK(two[1] == WreathElement::translation(5, lattice_vector({1})));
  CHECK(class_representatives(WreathAutomorphism::make(5, IntMatrix(-identity(2)), 2, zero(2))).size() == 4);
  CHECK_THROWS_AS(class_representatives(WreathAutomorphism::make(2, int_matrix({{-1}}), 1, zero(1))), Error);
}

TEST_CASE("class representatives are pairwise inequivalent") {
  Rng rng(kSeed + 3);
  for (const auto& phi : {WreathAutomorphism::make(3, kM, 2, zero(2)),
                          WreathAutomorphism::make(7, IntMatrix(-identity(3)), 3, lattice_vector({1, 0, 2})),
                          compose_inner(random_element(rng, 5, 2),
                                        WreathAutomorphism::make(5, IntMatrix(-identity(2)), 2, zero(2)))}) {
    const auto reps = class_representatives(phi);
    CHECK(Integer(reps.size()) == *reidemeister_number(phi).value);
    for (std::size_t i = 0; i < reps.size(); ++i)
      for (std::size_t j = i + 1; j < reps.size(); ++j)
        CHECK(are_twisted_conjugate_full(phi, reps[i], reps[j]).answer == Answer::No);
  }
}

TEST_CASE("twisted conjugacy in the lamp group") {
  const auto flip = WreathAutomorphism::make(2, int_matrix({{-1}}), 1, zero(1));
  const auto f = delta(2, {4}) + delta(2, {-1});
  const auto same = are_twisted_conjugate_sigma(flip, f, f);
  CHECK(same.conjugate);
  CHECK(same.witness->empty());

  const auto pair = are_twisted_conjugate_sigma(flip, delta(2, {1}), delta(2, {-1}));
  CHECK(pair.conjugate);
  CHECK(sigma_identity(flip, delta(2, {1}), delta(2, {-1}), *pair.witness));

  const auto apart = are_twisted_conjugate_sigma(flip, delta(2, {1}), delta(2, {2}));
  CHECK_FALSE(apart.conjugate);
  CHECK(apart.exact);
  // Oracle: the images are already in different classes of the n = 5 quotient.
  const FiniteWreathGroup group(2, 5, 1);
  const auto classes = twisted_classes_bruteforce(group, induce_automorphism(group, flip));
  CHECK_FALSE(same_quotient_class(group, classes, WreathElement::lamp(2, lattice_vector({1})),
                                  WreathElement::lamp(2, lattice_vector({2}))));

  CHECK_THROWS_AS(are_twisted_conjugate_sigma(compose_inner(WreathElement::lamp(2, zero(1)), flip), f, f), Error);
}

TEST_CASE("lamp-group answers agree with constructed pairs and quotients") {
  Rng rng(kSeed + 4);
  for (int trial = 0; trial < 60; ++trial) {
    const Residue m = std::array<Residue, 4>{2, 3, 5, 9}[static_cast<std::size_t>(trial % 4)];
    const IntMatrix a = trial % 5 == 0 ? int_matrix({{2, 1}, {1, 1}}) : random_finite_order(rng, 3);
    const Eigen::Index k = a.rows();
    const auto phi = WreathAutomorphism::make(m, a, random_unit(rng, m), random_vector(rng, k, 2));
    const auto h2 = random_function(rng, m, k, 3, 2);
    const auto w = random_function(rng, m, k, 3, 2);
    const auto h1 = h2 + w - apply_sigma(phi, w);
    const auto yes = are_twisted_conjugate_sigma(phi, h1, h2);
    CHECK(yes.conjugate);
    if (yes.conjugate) CHECK(sigma_identity(phi, h1, h2, *yes.witness));

    // A random pair: a positive answer must survive projection to a quotient.
    const auto g1 = random_function(rng, m, k, 3, 2);
    const auto answer = are_twisted_conjugate_sigma(phi, g1, h2);
    if (answer.conjugate) {
      CHECK(sigma_identity(phi, g1, h2, *answer.witness));
      const FiniteWreathGroup group(m, 2, k);
      if (group.order() && *group.order() <= 200'000) {
        const auto classes = twisted_classes_bruteforce(group, induce_automorphism(group, phi));
        CHECK(same_quotient_class(group, classes, WreathElement{g1, zero(k)}, WreathElement{h2, zero(k)}));
      }
    }
  }
}

TEST_CASE("delta chain check") {
  const auto flip = WreathAutomorphism::make(2, int_matrix({{-1}}), 1, zero(1));
  const auto self = delta_chain_check(flip, lattice_vector({3}), lattice_vector({3}), 0);
  CHECK(self.satisfied);
  CHECK(*self.steps == 0);
  const auto one = delta_chain_check(flip, lattice_vector({1}), lattice_vector({-1}));
  CHECK(one.satisfied);
  CHECK(*one.steps == 1);
  const auto none = delta_chain_check(flip, lattice_vector({1}), lattice_vector({2}));
  CHECK_FALSE(none.satisfied);
  CHECK(none.conclusive);
  const auto shifted = WreathAutomorphism::make(2, identity(1), 1, lattice_vector({1}));
  const auto bounded = delta_chain_check(shifted, lattice_vector({0}), lattice_vector({-5}), 3);
  CHECK_FALSE(bounded.satisfied);
  CHECK_FALSE(bounded.conclusive);
  CHECK(delta_chain_check(shifted, lattice_vector({0}), lattice_vector({-5}), 5).swapped);
  CHECK_THROWS_AS(delta_chain_check(WreathAutomorphism::make(3, int_matrix({{-1}}), 1, zero(1)), lattice_vector({0}),
                                    lattice_vector({1}), 2),
                  Error);
}

TEST_CASE("chain condition is necessary for delta classes when m = 2") {
  Rng rng(kSeed + 5);
  for (int trial = 0; trial < 40; ++trial) {
    const IntMatrix a = random_finite_order(rng, 2);
    const Eigen::Index k = a.rows();
    const auto phi = WreathAutomorphism::make(2, a, 1, random_vector(rng, k, 2));
    const auto x1 = random_vector(rng, k, 2), x2 = random_vector(rng, k, 2);
    const auto sigma = are_twisted_conjugate_sigma(phi, FiniteSupportFunction::delta(2, x1),
                                                   FiniteSupportFunction::delta(2, x2));
    const auto chain = delta_chain_check(phi, x1, x2);
    if (sigma.conjugate) CHECK(chain.satisfied);
    if (chain.conclusive && !chain.satisfied) CHECK_FALSE(sigma.conjugate);
  }
}

TEST_CASE("full twisted conjugacy examples") {
  const auto phi = WreathAutomorphism::make(3, kM, 2, zero(2));
  const auto g = WreathElement::identity(3, 2);
  const auto same = are_twisted_conjugate_full(phi, g, g);
  CHECK(same.answer == Answer::Yes);
  CHECK(same.witness->is_identity());
  CHECK(are_twisted_conjugate_full(phi, g, WreathElement::translation(3, lattice_vector({1, 0}))).answer == Answer::No);
  const auto lamp = WreathElement::lamp(3, zero(2));
  const auto yes = are_twisted_conjugate_full(phi, lamp, g);
  REQUIRE(yes.answer == Answer::Yes);
  CHECK(twisting_identity(phi, lamp, g, *yes.witness));
  CHECK(to_string(Answer::Unknown) == "unknown");
}

TEST_CASE("full answers match the quotient when classes are cylinders") {
  // With R finite and n a multiple of the cokernel exponent, projection is a
  // bijection on twisted classes.
  Rng rng(kSeed + 6);
  struct Case {
    WreathAutomorphism phi;
    std::int64_t n;
  };
  const std::vector<Case> cases{{WreathAutomorphism::make(3, kM, 2, lattice_vector({1, 1})), 3},
                                {WreathAutomorphism::make(5, int_matrix({{-1}}), 2, lattice_vector({2})), 2},
                                {WreathAutomorphism::make(5, int_matrix({{-1}}), 3, zero(1)), 4}};
  for (const auto& c : cases) {
    REQUIRE(reidemeister_number(c.phi).is_finite());
    const FiniteWreathGroup group(c.phi.modulus, c.n, c.phi.rank());
    const auto classes = twisted_classes_bruteforce(group, induce_automorphism(group, c.phi));
    for (int trial = 0; trial < 40; ++trial) {
      const auto a = random_element(rng, c.phi.modulus, c.phi.rank(), 3, 3);
      const auto b = random_element(rng, c.phi.modulus, c.phi.rank(), 3, 3);
      const auto answer = are_twisted_conjugate_full(c.phi, a, b);
      REQUIRE(answer.answer != Answer::Unknown);
      CHECK((answer.answer == Answer::Yes) == same_quotient_class(group, classes, a, b));
      if (answer.answer == Answer::Yes) CHECK(twisting_identity(c.phi, a, b, *answer.witness));
    }
  }
}

TEST_CASE("full search in the degenerate case") {
  const auto phi = WreathAutomorphism::make(3, identity(1), 2, zero(1));
  const auto g = WreathElement::identity(3, 1);
  const auto t = WreathElement::translation(3, lattice_vector({1}));
  CHECK(are_twisted_conjugate_full(phi, g, t).answer == Answer::No);
  // phi(delta_0) = 2 delta_0, so z = delta_0 carries the identity to 2 delta_0 ... = delta_0 * (2 delta_0)^-1.
  const auto target = twisted_transform(phi, g, WreathElement::lamp(3, zero(1)));
  const auto found = are_twisted_conjugate_full(phi, g, target);
  REQUIRE(found.answer == Answer::Yes);
  CHECK(twisting_identity(phi, g, target, *found.witness));

  FullOptions tiny;
  tiny.budget = 50;
  const auto far = WreathElement::lamp(3, lattice_vector({40}));
  const auto unknown = are_twisted_conjugate_full(phi, g, far, tiny);
  CHECK(unknown.answer != Answer::Yes);
  CHECK(unknown.nodes_explored <= 50);
}

TEST_CASE("R-infinity status") {
  CHECK(r_infinity_status(2, 3).status == RInfinity::Has);
  CHECK(r_infinity_status(3, 3).status == RInfinity::Has);
  const auto even = r_infinity_status(3, 4);
  REQUIRE(even.status == RInfinity::Not);
  CHECK(reidemeister_number(*even.example).value == Integer(9));
  const auto seven = r_infinity_status(7, 2);
  REQUIRE(seven.status == RInfinity::Not);
  CHECK(seven.example->matrix == IntMatrix(-identity(2)));
  CHECK(seven.example->unit == 2);
  CHECK(r_infinity_status(9, 2).status == RInfinity::Unknown);
  CHECK(r_infinity_status(35, 1).status == RInfinity::Not);
  CHECK(r_infinity_status(12, 1).status == RInfinity::Has);
  CHECK(to_string(RInfinity::Has) == "HasRInfinity");
  CHECK(to_string(RInfinity::Not) == "NotRInfinity");
}

TEST_CASE("every NotRInfinity witness has a finite verdict") {
  for (Residue m = 2; m <= 40; ++m) {
    for (Eigen::Index k = 1; k <= 4; ++k) {
      const auto status = r_infinity_status(m, k);
      CHECK(status.example.has_value() == (status.status == RInfinity::Not));
      if (status.example) CHECK(reidemeister_number(*status.example).is_finite());
    }
  }
}
