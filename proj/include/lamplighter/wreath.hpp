#pragma once

// Arithmetic in the restricted wreath product Z_m wr Z^k = Sigma x| Z^k,
// where Sigma is the group of finitely supported functions Z^k -> Z_m and
// a translation y acts by alpha(y)(delta_x) = delta_{x+y}.

#include "lamplighter/lattice.hpp"

#include <map>
#include <optional>
#include <set>
#include <vector>

namespace lamplighter {

/// Element of Sigma in canonical form: zero residues are never stored.
class FiniteSupportFunction {
 public:
  using Entries = std::map<LatticeVector, Residue, LexLess>;

  FiniteSupportFunction(Residue modulus, Eigen::Index rank);

  static FiniteSupportFunction delta(Residue modulus, const LatticeVector& x, Residue value = 1);

  Residue modulus() const { return modulus_; }
  Eigen::Index rank() const { return rank_; }
  const Entries& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  Residue at(const LatticeVector& x) const;
  /// Adds value at x (mod m), dropping the entry if it becomes zero.
  void add(const LatticeVector& x, Residue value);

  std::set<LatticeVector, LexLess> support() const;

  /// alpha(y)(f): the same function moved by y.
  FiniteSupportFunction translated(const LatticeVector& y) const;
  FiniteSupportFunction scaled(Residue c) const;

  FiniteSupportFunction& operator+=(const FiniteSupportFunction& other);
  FiniteSupportFunction& operator-=(const FiniteSupportFunction& other);
  friend FiniteSupportFunction operator+(FiniteSupportFunction a, const FiniteSupportFunction& b) {
    return a += b;
  }
  friend FiniteSupportFunction operator-(FiniteSupportFunction a, const FiniteSupportFunction& b) {
    return a -= b;
  }
  FiniteSupportFunction operator-() const { return scaled(modulus_ - 1); }

  friend bool operator==(const FiniteSupportFunction& a, const FiniteSupportFunction& b);

 private:
  void check_compatible(const FiniteSupportFunction& other) const;

  Residue modulus_;
  Eigen::Index rank_;
  Entries entries_;
};

/// (f, t) in Sigma x| Z^k.
struct WreathElement {
  FiniteSupportFunction f;
  LatticeVector t;

  static WreathElement identity(Residue modulus, Eigen::Index rank);
  static WreathElement translation(Residue modulus, const LatticeVector& t);
  static WreathElement lamp(Residue modulus, const LatticeVector& x, Residue value = 1);

  Residue modulus() const { return f.modulus(); }
  Eigen::Index rank() const { return t.size(); }
  bool is_identity() const { return f.empty() && t.isZero(); }

  friend bool operator==(const WreathElement& a, const WreathElement& b) {
    return a.f == b.f && a.t == b.t;
  }
};

/// Total order on elements (translation first, then support), for sets.
struct ElementLess {
  bool operator()(const WreathElement& a, const WreathElement& b) const;
};

WreathElement multiply(const WreathElement& a, const WreathElement& b);
WreathElement inverse(const WreathElement& a);

inline WreathElement operator*(const WreathElement& a, const WreathElement& b) { return multiply(a, b); }

/// phi = tau_gamma o phi_std, where phi_std(f, t) = (phi'(f), A t) and
/// phi'(delta_x) = unit * delta_{A x + x0}. The inner twist gamma is kept as
/// an element so the standard part stays inspectable.
struct WreathAutomorphism {
  Residue modulus = 2;
  IntMatrix matrix;
  Residue unit = 1;
  LatticeVector x0;
  std::optional<WreathElement> inner;

  /// Validates gcd(unit, m) = 1, |det A| = 1 and dimensions; throws Error.
  static WreathAutomorphism make(Residue modulus, IntMatrix matrix, Residue unit, LatticeVector x0,
                                 std::optional<WreathElement> inner = std::nullopt);
  static WreathAutomorphism identity(Residue modulus, Eigen::Index rank);

  Eigen::Index rank() const { return matrix.rows(); }
  bool is_standard() const { return !inner.has_value(); }
  WreathAutomorphism standard_part() const;

  /// Shift of the restriction to Sigma: x0 plus the inner twist's translation.
  LatticeVector effective_x0() const;

  void validate() const;

  friend bool operator==(const WreathAutomorphism&, const WreathAutomorphism&) = default;
};

/// tau_gamma o phi.
WreathAutomorphism compose_inner(const WreathElement& gamma, const WreathAutomorphism& phi);

WreathElement apply(const WreathAutomorphism& phi, const WreathElement& g);

/// Restriction of phi to Sigma: alpha(t_gamma) o phi'.
FiniteSupportFunction apply_sigma(const WreathAutomorphism& phi, const FiniteSupportFunction& f);

/// The affine map x -> A x + x0_eff carrying lamp positions under phi.
LatticeVector lamp_image(const WreathAutomorphism& phi, const LatticeVector& x);

WreathAutomorphism inverse(const WreathAutomorphism& phi);

/// h g phi(h)^{-1}.
WreathElement twisted_transform(const WreathAutomorphism& phi, const WreathElement& g,
                                const WreathElement& h);

struct Shift {
  LatticeVector offset;
  Residue multiplier;
};

/// Support of sum_j s_j * (T + v_j, coeffs) reduced mod m.
std::set<LatticeVector, LexLess> shifted_sum_support(Residue modulus,
                                                     const std::vector<LatticeVector>& points,
                                                     const std::vector<Residue>& coeffs,
                                                     const std::vector<Shift>& shifts);

/// Signed, 1-based coordinate order, e.g. {+1, -2}: maximize coordinate 1,
/// then minimize coordinate 2 among the survivors.
using VertexOrder = std::vector<int>;

LatticeVector lex_extreme_vertex(const std::set<LatticeVector, LexLess>& points, const VertexOrder& order);
LatticeVector lex_extreme_vertex(const std::vector<LatticeVector>& points, const VertexOrder& order);

}  // namespace lamplighter
