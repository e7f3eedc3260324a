#pragma once

// Ground truth on the finite quotients G = Z_m wr (Z/n)^k.
//
// Twisted classes are counted by brute force (union-find over the whole
// group). Irreducible representations are labelled by the little-group
// method for the split extension Sigma_n x| B with both factors abelian:
// a label is a B-orbit of characters chi of Sigma_n (kept as its
// lexicographically least member) together with a character eta of the
// stabilizer H of chi. The irrep is Ind_{Sigma_n x| H}^{G}(chi~ (x) eta),
// where chi~(f, b) = chi(f), and has dimension |B| / |H|.
//
// Pullback along a standard automorphism phi(f, b) = (phi'(f), A b):
//   (Ind_K sigma) o phi = Ind_{phi^{-1} K}(sigma o phi), and
//   (chi~ (x) eta) o phi = psi~ (x) (eta o A) with psi = chi o phi',
// on Sigma_n x| A^{-1} H. Conjugating by a translation c moves psi to its
// canonical orbit member without touching the B-part, so the label of
// rho o phi is (canon(psi), eta o A). Inner twists act trivially on
// isomorphism classes and are ignored.

#include "lamplighter/wreath.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <vector>

namespace lamplighter {

inline constexpr std::uint64_t kDefaultOracleBudget = 200'000;

class FiniteWreathGroup {
 public:
  /// Lamp values indexed by position; translation stored as a position index.
  struct Element {
    std::vector<Residue> f;
    std::int64_t t = 0;
    friend bool operator==(const Element&, const Element&) = default;
  };

  FiniteWreathGroup(Residue modulus, std::int64_t n, Eigen::Index rank);

  Residue modulus() const { return modulus_; }
  std::int64_t quotient() const { return n_; }
  Eigen::Index rank() const { return rank_; }
  /// Number of points of (Z/n)^k.
  std::int64_t positions() const { return positions_; }
  /// |G| = m^(n^k) * n^k, or nullopt when it does not fit in 63 bits.
  std::optional<std::uint64_t> order() const;
  void require_within(std::uint64_t budget) const;

  /// Position index of a coordinate vector, lexicographic with the first
  /// coordinate most significant. Coordinates are reduced mod n.
  std::int64_t index_of(const LatticeVector& x) const;
  std::vector<std::int64_t> coordinates(std::int64_t index) const;
  std::int64_t add(std::int64_t a, std::int64_t b) const { return add_[static_cast<std::size_t>(a * positions_ + b)]; }
  std::int64_t negate(std::int64_t a) const { return neg_[static_cast<std::size_t>(a)]; }
  std::int64_t basis_index(Eigen::Index i) const;

  Element identity() const;
  Element lamp(std::int64_t position, Residue value = 1) const;
  Element translation(std::int64_t position) const;
  Element multiply(const Element& a, const Element& b) const;
  Element inverse(const Element& a) const;

  /// Canonical order: lexicographic on (f[0], ..., f[P-1], t).
  std::uint64_t encode(const Element& e) const;
  Element decode(std::uint64_t code) const;

  /// As a lattice element with positions in [0, n)^k.
  WreathElement lift(const Element& e) const;

 private:
  Residue modulus_;
  std::int64_t n_;
  Eigen::Index rank_;
  std::int64_t positions_;
  std::vector<std::int64_t> add_;
  std::vector<std::int64_t> neg_;
};

struct FiniteAutomorphism {
  std::vector<std::int64_t> lamp_map;         // p -> A p + x0 (mod n)
  Residue unit = 1;
  std::vector<std::int64_t> translation_map;  // t -> A t (mod n)
  std::optional<FiniteWreathGroup::Element> inner;
};

FiniteWreathGroup::Element project(const FiniteWreathGroup& group, const WreathElement& g);
FiniteAutomorphism induce_automorphism(const FiniteWreathGroup& group, const WreathAutomorphism& phi);
FiniteWreathGroup::Element apply(const FiniteWreathGroup& group, const FiniteAutomorphism& phi,
                                 const FiniteWreathGroup::Element& g);
/// tau_gamma o phi.
FiniteAutomorphism compose_inner(const FiniteWreathGroup& group, const FiniteWreathGroup::Element& gamma,
                                 const FiniteAutomorphism& phi);

struct TwistedClasses {
  std::uint64_t count = 0;
  /// Least element (canonical order) of each class, sorted.
  std::vector<FiniteWreathGroup::Element> representatives;
  /// Class number of every element, indexed by its code.
  std::vector<std::uint32_t> class_of;
};

TwistedClasses twisted_classes_bruteforce(const FiniteWreathGroup& group, const FiniteAutomorphism& phi,
                                          std::uint64_t budget = kDefaultOracleBudget);

struct IrrepLabel {
  std::vector<Residue> chi;                // canonical orbit representative
  std::vector<std::int64_t> stabilizer;    // translation indices, increasing
  std::vector<std::int64_t> eta;           // eta(b) = zeta_n^eta[i] for b = stabilizer[i]
  std::int64_t dimension = 1;

  friend bool operator==(const IrrepLabel&, const IrrepLabel&) = default;
};

std::vector<IrrepLabel> irreps_little_group(const FiniteWreathGroup& group,
                                            std::uint64_t budget = kDefaultOracleBudget);

std::uint64_t phi_hat_fixed_count(const FiniteWreathGroup& group, const FiniteAutomorphism& phi,
                                  const std::vector<IrrepLabel>& labels);
std::uint64_t phi_hat_fixed_count(const FiniteWreathGroup& group, const FiniteAutomorphism& phi,
                                  std::uint64_t budget = kDefaultOracleBudget);

bool tbft_check(const FiniteWreathGroup& group, const FiniteAutomorphism& phi,
                std::uint64_t budget = kDefaultOracleBudget);

struct OracleReport {
  Residue m = 2;
  std::int64_t n = 1;
  Eigen::Index k = 1;
  std::uint64_t twisted_classes = 0;
  std::uint64_t fixed_irreps = 0;
  bool tbft = false;
  std::vector<WreathElement> representatives;

  friend bool operator==(const OracleReport&, const OracleReport&) = default;
};

OracleReport run_oracle(const WreathAutomorphism& phi, std::int64_t n, std::uint64_t budget = kDefaultOracleBudget);

nlohmann::json to_json(const OracleReport& report);
OracleReport oracle_report_from_json(const nlohmann::json& j);

}  // namespace lamplighter
