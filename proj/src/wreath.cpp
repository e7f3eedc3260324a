#include "lamplighter/wreath.hpp"

#include <numeric>

namespace lamplighter {

FiniteSupportFunction::FiniteSupportFunction(Residue modulus, Eigen::Index rank)
    : modulus_(modulus), rank_(rank) {
  if (modulus < 2) throw Error("modulus must be at least 2");
  if (rank < 0) throw Error("negative rank");
}

FiniteSupportFunction FiniteSupportFunction::delta(Residue modulus, const LatticeVector& x, Residue value) {
  FiniteSupportFunction f(modulus, x.size());
  f.add(x, value);
  return f;
}

Residue FiniteSupportFunction::at(const LatticeVector& x) const {
  auto it = entries_.find(x);
  return it == entries_.end() ? 0 : it->second;
}

void FiniteSupportFunction::add(const LatticeVector& x, Residue value) {
  if (x.size() != rank_) throw Error("lamp position has wrong dimension");
  const Residue v = mod(value, modulus_);
  if (v == 0) return;
  auto [it, inserted] = entries_.try_emplace(x, v);
  if (inserted) return;
  it->second = mod(it->second + v, modulus_);
  if (it->second == 0) entries_.erase(it);
}

std::set<LatticeVector, LexLess> FiniteSupportFunction::support() const {
  std::set<LatticeVector, LexLess> s;
  for (const auto& [x, v] : entries_) s.insert(x);
  return s;
}

FiniteSupportFunction FiniteSupportFunction::translated(const LatticeVector& y) const {
  FiniteSupportFunction out(modulus_, rank_);
  for (const auto& [x, v] : entries_) out.entries_.emplace(LatticeVector(x + y), v);
  return out;
}

FiniteSupportFunction FiniteSupportFunction::scaled(Residue c) const {
  FiniteSupportFunction out(modulus_, rank_);
  for (const auto& [x, v] : entries_) out.add(x, mod(v * mod(c, modulus_), modulus_));
  return out;
}

void FiniteSupportFunction::check_compatible(const FiniteSupportFunction& other) const {
  if (other.modulus_ != modulus_) throw Error("mismatched modulus");
  if (other.rank_ != rank_) throw Error("mismatched rank");
}

FiniteSupportFunction& FiniteSupportFunction::operator+=(const FiniteSupportFunction& other) {
  check_compatible(other);
  for (const auto& [x, v] : other.entries_) add(x, v);
  return *this;
}

FiniteSupportFunction& FiniteSupportFunction::operator-=(const FiniteSupportFunction& other) {
  check_compatible(other);
  for (const auto& [x, v] : other.entries_) add(x, modulus_ - v);
  return *this;
}

bool operator==(const FiniteSupportFunction& a, const FiniteSupportFunction& b) {
  if (a.modulus_ != b.modulus_ || a.rank_ != b.rank_ || a.entries_.size() != b.entries_.size()) {
    return false;
  }
  auto ib = b.entries_.begin();
  for (auto ia = a.entries_.begin(); ia != a.entries_.end(); ++ia, ++ib) {
    if (ia->second != ib->second || ia->first != ib->first) return false;
  }
  return true;
}

WreathElement WreathElement::identity(Residue modulus, Eigen::Index rank) {
  return {FiniteSupportFunction(modulus, rank), LatticeVector::Zero(rank)};
}

WreathElement WreathElement::translation(Residue modulus, const LatticeVector& t) {
  return {FiniteSupportFunction(modulus, t.size()), t};
}

WreathElement WreathElement::lamp(Residue modulus, const LatticeVector& x, Residue value) {
  return {FiniteSupportFunction::delta(modulus, x, value), LatticeVector::Zero(x.size())};
}

bool ElementLess::operator()(const WreathElement& a, const WreathElement& b) const {
  LexLess less;
  if (less(a.t, b.t)) return true;
  if (less(b.t, a.t)) return false;
  const auto& ea = a.f.entries();
  const auto& eb = b.f.entries();
  return std::lexicographical_compare(ea.begin(), ea.end(), eb.begin(), eb.end(),
                                      [&](const auto& x, const auto& y) {
                                        if (less(x.first, y.first)) return true;
                                        if (less(y.first, x.first)) return false;
                                        return x.second < y.second;
                                      });
}

namespace {

void check_same_group(const WreathElement& a, const WreathElement& b) {
  if (a.modulus() != b.modulus()) throw Error("elements have different moduli");
  if (a.rank() != b.rank()) throw Error("elements have different ranks");
}

}  // namespace

WreathElement multiply(const WreathElement& a, const WreathElement& b) {
  check_same_group(a, b);
  return {a.f + b.f.translated(a.t), LatticeVector(a.t + b.t)};
}

WreathElement inverse(const WreathElement& a) {
  const LatticeVector minus_t = -a.t;
  return {-a.f.translated(minus_t), minus_t};
}

WreathAutomorphism WreathAutomorphism::make(Residue modulus, IntMatrix matrix, Residue unit,
                                            LatticeVector x0, std::optional<WreathElement> inner) {
  WreathAutomorphism phi{modulus, std::move(matrix), mod(unit, std::max<Residue>(modulus, 1)),
                         std::move(x0), std::move(inner)};
  phi.validate();
  return phi;
}

WreathAutomorphism WreathAutomorphism::identity(Residue modulus, Eigen::Index rank) {
  return make(modulus, IntMatrix::Identity(rank, rank), 1, LatticeVector::Zero(rank));
}

void WreathAutomorphism::validate() const {
  if (modulus < 2) throw Error("modulus must be at least 2");
  if (matrix.rows() != matrix.cols()) throw Error("automorphism matrix must be square");
  if (matrix.rows() < 1) throw Error("rank must be at least 1");
  if (!is_unimodular(matrix)) throw Error("automorphism matrix must have determinant +-1");
  if (x0.size() != matrix.rows()) throw Error("x0 has wrong dimension");
  if (unit <= 0 || unit >= modulus || std::gcd(unit, modulus) != 1) {
    throw Error("unit must be invertible modulo m");
  }
  if (inner) {
    if (inner->modulus() != modulus || inner->rank() != matrix.rows()) {
      throw Error("inner twist lives in a different group");
    }
  }
}

WreathAutomorphism WreathAutomorphism::standard_part() const {
  return WreathAutomorphism{modulus, matrix, unit, x0, std::nullopt};
}

LatticeVector WreathAutomorphism::effective_x0() const {
  return inner ? LatticeVector(x0 + inner->t) : x0;
}

WreathAutomorphism compose_inner(const WreathElement& gamma, const WreathAutomorphism& phi) {
  WreathAutomorphism out = phi;
  out.inner = phi.inner ? multiply(gamma, *phi.inner) : gamma;
  out.validate();
  return out;
}

namespace {

FiniteSupportFunction apply_standard_sigma(const WreathAutomorphism& phi, const FiniteSupportFunction& f) {
  FiniteSupportFunction out(phi.modulus, phi.rank());
  for (const auto& [x, v] : f.entries()) {
    out.add(LatticeVector(phi.matrix * x + phi.x0), v * phi.unit);
  }
  return out;
}

}  // namespace

WreathElement apply(const WreathAutomorphism& phi, const WreathElement& g) {
  if (g.modulus() != phi.modulus || g.rank() != phi.rank()) {
    throw Error("element and automorphism live in different groups");
  }
  WreathElement image{apply_standard_sigma(phi, g.f), LatticeVector(phi.matrix * g.t)};
  if (!phi.inner) return image;
  return multiply(multiply(*phi.inner, image), inverse(*phi.inner));
}

FiniteSupportFunction apply_sigma(const WreathAutomorphism& phi, const FiniteSupportFunction& f) {
  auto image = apply_standard_sigma(phi, f);
  return phi.inner ? image.translated(phi.inner->t) : image;
}

LatticeVector lamp_image(const WreathAutomorphism& phi, const LatticeVector& x) {
  return phi.matrix * x + phi.effective_x0();
}

WreathAutomorphism inverse(const WreathAutomorphism& phi) {
  const IntMatrix a_inv = unimodular_inverse(phi.matrix);
  Residue u_inv = 1;
  while (mod(u_inv * phi.unit, phi.modulus) != 1) ++u_inv;
  WreathAutomorphism std_inv{phi.modulus, a_inv, u_inv, LatticeVector(-(a_inv * phi.x0)), std::nullopt};
  if (!phi.inner) return std_inv;
  // (tau_g o s)^{-1} = s^{-1} o tau_{g^{-1}} = tau_{s^{-1}(g^{-1})} o s^{-1}
  std_inv.inner = apply(std_inv, inverse(*phi.inner));
  return std_inv;
}

WreathElement twisted_transform(const WreathAutomorphism& phi, const WreathElement& g,
                                const WreathElement& h) {
  return multiply(multiply(h, g), inverse(apply(phi, h)));
}

std::set<LatticeVector, LexLess> shifted_sum_support(Residue modulus,
                                                     const std::vector<LatticeVector>& points,
                                                     const std::vector<Residue>& coeffs,
                                                     const std::vector<Shift>& shifts) {
  if (points.size() != coeffs.size()) throw Error("points and coefficients differ in length");
  if (points.empty()) throw Error("empty point set");
  FiniteSupportFunction sum(modulus, points.front().size());
  for (const auto& s : shifts) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      sum.add(LatticeVector(points[i] + s.offset), coeffs[i] * s.multiplier);
    }
  }
  return sum.support();
}

LatticeVector lex_extreme_vertex(const std::vector<LatticeVector>& points, const VertexOrder& order) {
  if (points.empty()) throw Error("lex_extreme_vertex: empty set");
  std::vector<const LatticeVector*> alive;
  for (const auto& p : points) alive.push_back(&p);
  const Eigen::Index k = points.front().size();
  for (int code : order) {
    const int axis = std::abs(code) - 1;
    if (code == 0 || axis >= k) throw Error("lex_extreme_vertex: bad coordinate order");
    Integer best = (*alive.front())[axis];
    for (const auto* p : alive) {
      const Integer& c = (*p)[axis];
      if ((code > 0 && c > best) || (code < 0 && c < best)) best = c;
    }
    std::erase_if(alive, [&](const LatticeVector* p) { return (*p)[axis] != best; });
  }
  const auto* first = alive.front();
  if (std::any_of(alive.begin(), alive.end(), [&](const LatticeVector* p) { return *p != *first; }))
    throw Error("lex_extreme_vertex: coordinate order does not cover every axis");
  return *alive.front();
}

LatticeVector lex_extreme_vertex(const std::set<LatticeVector, LexLess>& points, const VertexOrder& order) {
  return lex_extreme_vertex(std::vector<LatticeVector>(points.begin(), points.end()), order);
}

}  // namespace lamplighter
