#pragma once

// Reidemeister numbers of automorphisms of Z_m wr Z^k.
//
// R(phi) is assembled from the quotient action A on Z^k and the restriction
// phi' to the lamp group Sigma:
//   * det(I - A) = 0            -> R(phi) infinite (the quotient already is).
//   * A of infinite order       -> 1 - phi' fails to be onto along infinite
//                                  orbits, and there are infinitely many.
//   * A of finite order         -> lamp positions split into orbits of the
//                                  affine map x -> A x + x0. On an orbit of
//                                  length r, 1 - phi' is the cyclic block
//                                  E - M with determinant 1 - u^r, so it is
//                                  onto iff 1 - u^r is a unit mod m. The
//                                  generic orbit lengths are lcm(s, t) for s
//                                  a realized period of A and t the period
//                                  of x0.
// When every block is onto, the classes of phi are cylinders over classes
// of A and R(phi) = |det(I - A)|.

#include "lamplighter/wreath.hpp"

#include <json.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace lamplighter {

/// Multiplicative order of u modulo m.
std::int64_t unit_order(Residue u, Residue m);

bool is_unit(Residue a, Residue m);

/// |det(I - A)|, or nullopt (infinite) when it vanishes.
std::optional<Integer> reidemeister_abelian(const IntMatrix& a);

/// Determinant of the s x s cyclic block E - M (1 on the diagonal, -u below
/// it and in the top-right corner), expanded directly and reduced mod m.
Residue cyclic_block_det(Residue u, std::int64_t s, Residue m);

enum class SigmaKind { EpiEverywhere, InfiniteOrbitObstruction, NonEpiObstruction };

struct SigmaClassification {
  SigmaKind kind = SigmaKind::EpiEverywhere;
  std::int64_t unit_order = 1;
  /// NonEpi: realized period s of A and period t of the effective x0 with
  /// 1 - u^lcm(s,t) not a unit.
  std::optional<std::int64_t> orbit_period;
  std::optional<std::int64_t> shift_period;
  std::optional<std::int64_t> combined_period;
  std::optional<LatticeVector> orbit_witness;
  /// InfiniteOrbit: a standard basis vector whose A-orbit is unbounded.
  std::optional<LatticeVector> unbounded_vector;
};

/// Requires det(I - A) != 0. Inner twists only shift x0 by their translation.
SigmaClassification classify_sigma(const WreathAutomorphism& phi);

enum class Rule { DetZero, InfiniteOrbit, NonEpiOrbit, Cylinder };

std::string to_string(Rule rule);
Rule rule_from_string(const std::string& name);

struct Certificate {
  Rule rule = Rule::Cylinder;
  std::optional<LatticeVector> fixed_vector;      // det-zero: nonzero v with A v = v
  std::optional<LatticeVector> unbounded_vector;  // infinite-orbit
  std::optional<std::int64_t> orbit_period;       // non-epi-orbit: s
  std::optional<std::int64_t> shift_period;       // t
  std::optional<std::int64_t> combined_period;    // lcm(s, t)
  std::optional<LatticeVector> orbit_witness;     // point with A-period s
  std::optional<std::int64_t> unit_order;
  std::optional<Integer> abelian_number;          // |det(I - A)|

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

struct ReidemeisterVerdict {
  std::optional<Integer> value;  // empty = infinite
  Certificate certificate;

  bool is_finite() const { return value.has_value(); }
  friend bool operator==(const ReidemeisterVerdict&, const ReidemeisterVerdict&) = default;
};

ReidemeisterVerdict reidemeister_number(const WreathAutomorphism& phi);

/// {"verdict":"finite"|"infinite","value":n?,"certificate":{"rule":...,"witness":{...}}}
nlohmann::json verdict_to_json(const ReidemeisterVerdict& verdict);
ReidemeisterVerdict verdict_from_json(const nlohmann::json& j);

/// Lifts (0, c) of the cosets of (I - A) Z^k. Requires a finite verdict.
std::vector<WreathElement> class_representatives(const WreathAutomorphism& phi);

struct SigmaOptions {
  /// Orbit steps explored in each direction when grouping lamp positions
  /// that lie on infinite orbits of an infinite-order A.
  std::int64_t infinite_orbit_steps = 10'000;
};

struct SigmaConjugacy {
  bool conjugate = false;
  /// h with h1 - h2 = h - phi'(h).
  std::optional<FiniteSupportFunction> witness;
  /// False only when a negative answer rests on the bounded orbit search.
  bool exact = true;
};

/// Decides h1 - h2 in the image of 1 - phi' on Sigma. phi must be standard.
SigmaConjugacy are_twisted_conjugate_sigma(const WreathAutomorphism& phi, const FiniteSupportFunction& h1,
                                           const FiniteSupportFunction& h2, const SigmaOptions& options = {});

struct ChainCheck {
  bool satisfied = false;
  std::optional<std::int64_t> steps;  // t achieving the identity
  bool swapped = false;               // the identity holds with x1, x2 exchanged
  /// A negative answer is definitive: the affine orbit is finite and fully
  /// scanned.
  bool conclusive = false;
};

/// Searches t in [0, t_max] with F^t(x1) = x2 or F^t(x2) = x1, where
/// F(x) = A x + x0. A necessary condition for delta_{x1} ~ delta_{x2} when
/// m = 2.
ChainCheck delta_chain_check(const WreathAutomorphism& phi, const LatticeVector& x1, const LatticeVector& x2,
                             std::int64_t t_max);
/// Same, with the default bound ord(A) * k (requires finite order).
ChainCheck delta_chain_check(const WreathAutomorphism& phi, const LatticeVector& x1, const LatticeVector& x2);

struct FullOptions {
  std::size_t budget = 100'000;
  SigmaOptions sigma;
};

enum class Answer { Yes, No, Unknown };

std::string to_string(Answer answer);

struct TwistedConjugacy {
  Answer answer = Answer::Unknown;
  /// z with h = z g phi(z)^{-1}.
  std::optional<WreathElement> witness;
  std::string reason;
  std::size_t nodes_explored = 0;
};

TwistedConjugacy are_twisted_conjugate_full(const WreathAutomorphism& phi, const WreathElement& g,
                                            const WreathElement& h, const FullOptions& options = {});

enum class RInfinity { Has, Not, Unknown };

std::string to_string(RInfinity status);

struct GroupStatus {
  RInfinity status = RInfinity::Unknown;
  std::optional<WreathAutomorphism> example;
  std::string reason;
};

GroupStatus r_infinity_status(Residue m, Eigen::Index k);

bool is_prime(std::int64_t n);

}  // namespace lamplighter
