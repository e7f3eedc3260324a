#include "lamplighter/finite_oracle.hpp"

#include "lamplighter/format.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>

namespace lamplighter {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) { std::iota(parent_.begin(), parent_.end(), 0u); }

  std::uint32_t find(std::uint32_t x) {
    std::uint32_t root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
      const std::uint32_t next = parent_[x];
      parent_[x] = root;
      x = next;
    }
    return root;
  }

  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> size_;
};

std::int64_t checked_pow(std::int64_t base, std::int64_t exp) {
  std::int64_t r = 1;
  for (std::int64_t i = 0; i < exp; ++i) {
    if (r > std::numeric_limits<std::int64_t>::max() / base) throw BudgetExceeded("quotient too large");
    r *= base;
  }
  return r;
}

std::int64_t floor_mod(const Integer& x, std::int64_t n) { return mod(x, n); }

}  // namespace

FiniteWreathGroup::FiniteWreathGroup(Residue modulus, std::int64_t n, Eigen::Index rank)
    : modulus_(modulus), n_(n), rank_(rank) {
  if (modulus < 2) throw Error("modulus must be at least 2");
  if (n < 1) throw Error("quotient parameter n must be at least 1");
  if (rank < 1) throw Error("rank must be at least 1");
  positions_ = checked_pow(n, rank);
  if (positions_ > 1'000'000) throw BudgetExceeded("too many lattice positions in the quotient");
  const auto p = static_cast<std::size_t>(positions_);
  add_.resize(p * p);
  neg_.resize(p);
  for (std::int64_t a = 0; a < positions_; ++a) {
    const auto ca = coordinates(a);
    std::vector<std::int64_t> minus(ca.size());
    for (std::size_t i = 0; i < ca.size(); ++i) minus[i] = (n_ - ca[i]) % n_;
    std::int64_t neg_index = 0;
    for (auto c : minus) neg_index = neg_index * n_ + c;
    neg_[static_cast<std::size_t>(a)] = neg_index;
    for (std::int64_t b = 0; b < positions_; ++b) {
      const auto cb = coordinates(b);
      std::int64_t sum = 0;
      for (std::size_t i = 0; i < ca.size(); ++i) sum = sum * n_ + (ca[i] + cb[i]) % n_;
      add_[static_cast<std::size_t>(a * positions_ + b)] = sum;
    }
  }
}

std::optional<std::uint64_t> FiniteWreathGroup::order() const {
  std::uint64_t r = static_cast<std::uint64_t>(positions_);
  constexpr std::uint64_t limit = std::uint64_t{1} << 62;
  for (std::int64_t i = 0; i < positions_; ++i) {
    if (r > limit / static_cast<std::uint64_t>(modulus_)) return std::nullopt;
    r *= static_cast<std::uint64_t>(modulus_);
  }
  return r;
}

void FiniteWreathGroup::require_within(std::uint64_t budget) const {
  const auto n = order();
  if (!n || *n > budget) {
    throw BudgetExceeded("quotient Z_" + std::to_string(modulus_) + " wr (Z/" + std::to_string(n_) + ")^" +
                         std::to_string(rank_) + " exceeds the element budget of " + std::to_string(budget));
  }
}

std::int64_t FiniteWreathGroup::index_of(const LatticeVector& x) const {
  if (x.size() != rank_) throw Error("position has wrong dimension");
  std::int64_t idx = 0;
  for (Eigen::Index i = 0; i < rank_; ++i) idx = idx * n_ + floor_mod(x[i], n_);
  return idx;
}

std::vector<std::int64_t> FiniteWreathGroup::coordinates(std::int64_t index) const {
  std::vector<std::int64_t> c(static_cast<std::size_t>(rank_));
  for (std::size_t i = c.size(); i-- > 0;) {
    c[i] = index % n_;
    index /= n_;
  }
  return c;
}

std::int64_t FiniteWreathGroup::basis_index(Eigen::Index i) const {
  return index_of(LatticeVector::Unit(rank_, i));
}

FiniteWreathGroup::Element FiniteWreathGroup::identity() const {
  return {std::vector<Residue>(static_cast<std::size_t>(positions_), 0), 0};
}

FiniteWreathGroup::Element FiniteWreathGroup::lamp(std::int64_t position, Residue value) const {
  Element e = identity();
  e.f[static_cast<std::size_t>(position)] = mod(value, modulus_);
  return e;
}

FiniteWreathGroup::Element FiniteWreathGroup::translation(std::int64_t position) const {
  Element e = identity();
  e.t = position;
  return e;
}

FiniteWreathGroup::Element FiniteWreathGroup::multiply(const Element& a, const Element& b) const {
  Element c;
  c.f.resize(a.f.size());
  const std::int64_t back = negate(a.t);
  for (std::int64_t p = 0; p < positions_; ++p) {
    const auto i = static_cast<std::size_t>(p);
    c.f[i] = (a.f[i] + b.f[static_cast<std::size_t>(add(p, back))]) % modulus_;
  }
  c.t = add(a.t, b.t);
  return c;
}

FiniteWreathGroup::Element FiniteWreathGroup::inverse(const Element& a) const {
  Element c;
  c.f.resize(a.f.size());
  for (std::int64_t p = 0; p < positions_; ++p) {
    const Residue v = a.f[static_cast<std::size_t>(add(p, a.t))];
    c.f[static_cast<std::size_t>(p)] = (modulus_ - v) % modulus_;
  }
  c.t = negate(a.t);
  return c;
}

std::uint64_t FiniteWreathGroup::encode(const Element& e) const {
  std::uint64_t code = 0;
  for (Residue v : e.f) code = code * static_cast<std::uint64_t>(modulus_) + static_cast<std::uint64_t>(v);
  return code * static_cast<std::uint64_t>(positions_) + static_cast<std::uint64_t>(e.t);
}

FiniteWreathGroup::Element FiniteWreathGroup::decode(std::uint64_t code) const {
  Element e;
  e.t = static_cast<std::int64_t>(code % static_cast<std::uint64_t>(positions_));
  code /= static_cast<std::uint64_t>(positions_);
  e.f.resize(static_cast<std::size_t>(positions_));
  for (std::size_t p = e.f.size(); p-- > 0;) {
    e.f[p] = static_cast<Residue>(code % static_cast<std::uint64_t>(modulus_));
    code /= static_cast<std::uint64_t>(modulus_);
  }
  return e;
}

WreathElement FiniteWreathGroup::lift(const Element& e) const {
  auto to_vector = [&](std::int64_t index) {
    const auto c = coordinates(index);
    LatticeVector v(rank_);
    for (Eigen::Index i = 0; i < rank_; ++i) v[i] = c[static_cast<std::size_t>(i)];
    return v;
  };
  FiniteSupportFunction f(modulus_, rank_);
  for (std::int64_t p = 0; p < positions_; ++p) f.add(to_vector(p), e.f[static_cast<std::size_t>(p)]);
  return {std::move(f), to_vector(e.t)};
}

FiniteWreathGroup::Element project(const FiniteWreathGroup& group, const WreathElement& g) {
  if (g.modulus() != group.modulus() || g.rank() != group.rank()) throw Error("project: mismatched group");
  auto e = group.identity();
  for (const auto& [x, v] : g.f.entries()) {
    auto& slot = e.f[static_cast<std::size_t>(group.index_of(x))];
    slot = (slot + v) % group.modulus();
  }
  e.t = group.index_of(g.t);
  return e;
}

FiniteAutomorphism induce_automorphism(const FiniteWreathGroup& group, const WreathAutomorphism& phi) {
  phi.validate();
  if (phi.modulus != group.modulus() || phi.rank() != group.rank()) throw Error("induce_automorphism: mismatched group");
  FiniteAutomorphism out;
  out.unit = phi.unit;
  const auto positions = static_cast<std::size_t>(group.positions());
  out.lamp_map.resize(positions);
  out.translation_map.resize(positions);
  for (std::int64_t p = 0; p < group.positions(); ++p) {
    const auto c = group.coordinates(p);
    LatticeVector x(group.rank());
    for (Eigen::Index i = 0; i < group.rank(); ++i) x[i] = c[static_cast<std::size_t>(i)];
    const LatticeVector ax = phi.matrix * x;
    out.translation_map[static_cast<std::size_t>(p)] = group.index_of(ax);
    out.lamp_map[static_cast<std::size_t>(p)] = group.index_of(LatticeVector(ax + phi.x0));
  }
  if (phi.inner) out.inner = project(group, *phi.inner);
  return out;
}

FiniteWreathGroup::Element apply(const FiniteWreathGroup& group, const FiniteAutomorphism& phi,
                                 const FiniteWreathGroup::Element& g) {
  auto image = group.identity();
  const Residue m = group.modulus();
  for (std::size_t p = 0; p < g.f.size(); ++p) {
    if (g.f[p] == 0) continue;
    auto& slot = image.f[static_cast<std::size_t>(phi.lamp_map[p])];
    slot = (slot + g.f[p] * phi.unit) % m;
  }
  image.t = phi.translation_map[static_cast<std::size_t>(g.t)];
  if (!phi.inner) return image;
  return group.multiply(group.multiply(*phi.inner, image), group.inverse(*phi.inner));
}

FiniteAutomorphism compose_inner(const FiniteWreathGroup& group, const FiniteWreathGroup::Element& gamma,
                                 const FiniteAutomorphism& phi) {
  FiniteAutomorphism out = phi;
  out.inner = phi.inner ? group.multiply(gamma, *phi.inner) : gamma;
  return out;
}

TwistedClasses twisted_classes_bruteforce(const FiniteWreathGroup& group, const FiniteAutomorphism& phi,
                                          std::uint64_t budget) {
  group.require_within(budget);
  const std::uint64_t size = *group.order();
  if (size > std::numeric_limits<std::uint32_t>::max()) throw BudgetExceeded("group too large for union-find");

  std::vector<FiniteWreathGroup::Element> gens{group.lamp(0)};
  for (Eigen::Index i = 0; i < group.rank(); ++i) gens.push_back(group.translation(group.basis_index(i)));
  std::vector<FiniteWreathGroup::Element> gen_images;
  for (const auto& s : gens) gen_images.push_back(group.inverse(apply(group, phi, s)));

  UnionFind uf(static_cast<std::size_t>(size));
  for (std::uint64_t code = 0; code < size; ++code) {
    const auto x = group.decode(code);
    for (std::size_t j = 0; j < gens.size(); ++j) {
      const auto y = group.multiply(group.multiply(gens[j], x), gen_images[j]);
      uf.unite(static_cast<std::uint32_t>(code), static_cast<std::uint32_t>(group.encode(y)));
    }
  }

  TwistedClasses out;
  out.class_of.assign(static_cast<std::size_t>(size), std::numeric_limits<std::uint32_t>::max());
  std::vector<std::uint32_t> class_of_root(static_cast<std::size_t>(size), std::numeric_limits<std::uint32_t>::max());
  for (std::uint64_t code = 0; code < size; ++code) {
    const std::uint32_t root = uf.find(static_cast<std::uint32_t>(code));
    auto& id = class_of_root[root];
    if (id == std::numeric_limits<std::uint32_t>::max()) {
      id = static_cast<std::uint32_t>(out.count++);
      out.representatives.push_back(group.decode(code));
    }
    out.class_of[static_cast<std::size_t>(code)] = id;
  }
  return out;
}

namespace {

// Character chi of Sigma_n as residues per position; (shift_b chi)_p = chi_{p+b}.
std::vector<Residue> shifted(const FiniteWreathGroup& group, const std::vector<Residue>& chi, std::int64_t b) {
  std::vector<Residue> out(chi.size());
  for (std::int64_t p = 0; p < group.positions(); ++p) {
    out[static_cast<std::size_t>(p)] = chi[static_cast<std::size_t>(group.add(p, b))];
  }
  return out;
}

std::vector<Residue> canonical(const FiniteWreathGroup& group, const std::vector<Residue>& chi) {
  std::vector<Residue> best = chi;
  for (std::int64_t b = 1; b < group.positions(); ++b) {
    auto s = shifted(group, chi, b);
    if (s < best) best = std::move(s);
  }
  return best;
}

}  // namespace

std::vector<IrrepLabel> irreps_little_group(const FiniteWreathGroup& group, std::uint64_t budget) {
  group.require_within(budget);
  const auto positions = static_cast<std::size_t>(group.positions());
  const Residue m = group.modulus();
  std::uint64_t characters = 1;
  for (std::size_t i = 0; i < positions; ++i) characters *= static_cast<std::uint64_t>(m);

  std::vector<IrrepLabel> labels;
  std::vector<Residue> chi(positions, 0);
  for (std::uint64_t code = 0; code < characters; ++code) {
    std::uint64_t rest = code;
    for (std::size_t p = positions; p-- > 0;) {
      chi[p] = static_cast<Residue>(rest % static_cast<std::uint64_t>(m));
      rest /= static_cast<std::uint64_t>(m);
    }
    std::vector<std::int64_t> stabilizer;
    bool least = true;
    for (std::int64_t b = 0; b < group.positions() && least; ++b) {
      const auto s = shifted(group, chi, b);
      if (s < chi) least = false;
      if (s == chi) stabilizer.push_back(b);
    }
    if (!least) continue;

    // Characters of H are restrictions of b -> zeta_n^{xi . b}.
    std::set<std::vector<std::int64_t>> etas;
    for (std::int64_t xi = 0; xi < group.positions(); ++xi) {
      const auto cx = group.coordinates(xi);
      std::vector<std::int64_t> eta;
      for (std::int64_t b : stabilizer) {
        const auto cb = group.coordinates(b);
        std::int64_t dot = 0;
        for (std::size_t i = 0; i < cb.size(); ++i) dot += cx[i] * cb[i];
        eta.push_back(dot % group.quotient());
      }
      etas.insert(std::move(eta));
    }
    if (etas.size() != stabilizer.size()) throw std::logic_error("stabilizer character count mismatch");
    const std::int64_t dim = group.positions() / static_cast<std::int64_t>(stabilizer.size());
    for (const auto& eta : etas) labels.push_back(IrrepLabel{chi, stabilizer, eta, dim});
  }
  return labels;
}

std::uint64_t phi_hat_fixed_count(const FiniteWreathGroup& group, const FiniteAutomorphism& phi,
                                  const std::vector<IrrepLabel>& labels) {
  const Residue m = group.modulus();
  std::uint64_t fixed = 0;
  for (const auto& label : labels) {
    std::vector<Residue> psi(label.chi.size());
    for (std::size_t p = 0; p < psi.size(); ++p) {
      psi[p] = (phi.unit * label.chi[static_cast<std::size_t>(phi.lamp_map[p])]) % m;
    }
    if (canonical(group, psi) != label.chi) continue;
    bool same = true;
    for (std::size_t i = 0; i < label.stabilizer.size() && same; ++i) {
      const std::int64_t image = phi.translation_map[static_cast<std::size_t>(label.stabilizer[i])];
      const auto it = std::lower_bound(label.stabilizer.begin(), label.stabilizer.end(), image);
      if (it == label.stabilizer.end() || *it != image) throw std::logic_error("A does not preserve the stabilizer");
      same = label.eta[static_cast<std::size_t>(it - label.stabilizer.begin())] == label.eta[i];
    }
    if (same) ++fixed;
  }
  return fixed;
}

std::uint64_t phi_hat_fixed_count(const FiniteWreathGroup& group, const FiniteAutomorphism& phi,
                                  std::uint64_t budget) {
  return phi_hat_fixed_count(group, phi, irreps_little_group(group, budget));
}

bool tbft_check(const FiniteWreathGroup& group, const FiniteAutomorphism& phi, std::uint64_t budget) {
  return twisted_classes_bruteforce(group, phi, budget).count == phi_hat_fixed_count(group, phi, budget);
}

OracleReport run_oracle(const WreathAutomorphism& phi, std::int64_t n, std::uint64_t budget) {
  const FiniteWreathGroup group(phi.modulus, n, phi.rank());
  group.require_within(budget);
  const FiniteAutomorphism phi_n = induce_automorphism(group, phi);
  const TwistedClasses classes = twisted_classes_bruteforce(group, phi_n, budget);
  OracleReport report;
  report.m = phi.modulus;
  report.n = n;
  report.k = phi.rank();
  report.twisted_classes = classes.count;
  report.fixed_irreps = phi_hat_fixed_count(group, phi_n, budget);
  report.tbft = report.twisted_classes == report.fixed_irreps;
  for (const auto& r : classes.representatives) report.representatives.push_back(group.lift(r));
  return report;
}

nlohmann::json to_json(const OracleReport& report) {
  auto reps = nlohmann::json::array();
  for (const auto& r : report.representatives) reps.push_back(element_to_json(r));
  return {{"group", {{"m", report.m}, {"n", report.n}, {"k", report.k}}},
          {"twisted_classes", report.twisted_classes},
          {"fixed_irreps", report.fixed_irreps},
          {"tbft", report.tbft},
          {"representatives", reps}};
}

OracleReport oracle_report_from_json(const nlohmann::json& j) {
  OracleReport r;
  const auto& g = j.at("group");
  r.m = g.at("m").get<Residue>();
  r.n = g.at("n").get<std::int64_t>();
  r.k = g.at("k").get<Eigen::Index>();
  r.twisted_classes = j.at("twisted_classes").get<std::uint64_t>();
  r.fixed_irreps = j.at("fixed_irreps").get<std::uint64_t>();
  r.tbft = j.at("tbft").get<bool>();
  for (const auto& e : j.at("representatives")) r.representatives.push_back(element_from_json(e, r.m));
  return r;
}

}  // namespace lamplighter
