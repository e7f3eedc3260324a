#include "cli.hpp"

#include "lamplighter/finite_oracle.hpp"
#include "lamplighter/format.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

namespace lamplighter::cli {

WreathAutomorphism AutomorphismSpec::automorphism() const {
  return WreathAutomorphism::make(modulus, matrix, unit, x0, inner);
}

AutomorphismSpec spec_from_automorphism(const WreathAutomorphism& phi) {
  AutomorphismSpec spec;
  spec.modulus = phi.modulus;
  spec.matrix = phi.matrix;
  spec.unit = phi.unit;
  spec.x0 = phi.x0;
  spec.inner = phi.inner;
  return spec;
}

nlohmann::json spec_to_json(const AutomorphismSpec& spec) {
  nlohmann::json j{{"version", spec.version},
                   {"modulus", spec.modulus},
                   {"rank", spec.rank()},
                   {"matrix", matrix_to_json(spec.matrix)},
                   {"unit", spec.unit},
                   {"x0", vector_to_json(spec.x0)}};
  if (spec.inner) j["inner"] = format_element(*spec.inner);
  return j;
}

AutomorphismSpec spec_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error("spec must be a JSON object");
  AutomorphismSpec spec;
  if (!j.contains("version")) throw Error("spec is missing \"version\"");
  spec.version = j.at("version").get<int>();
  if (spec.version != 1) throw Error("unsupported spec version " + std::to_string(spec.version));
  spec.modulus = j.at("modulus").get<Residue>();
  if (spec.modulus < 2) throw Error("modulus must be at least 2");
  spec.matrix = matrix_from_json(j.at("matrix"));
  if (spec.matrix.rows() != spec.matrix.cols()) throw Error("matrix must be square");
  if (spec.rank() > kMaxRank) throw Error("rank above " + std::to_string(kMaxRank) + " is not supported");
  if (j.contains("rank") && j.at("rank").get<Eigen::Index>() != spec.rank()) {
    throw Error("\"rank\" disagrees with the matrix size");
  }
  spec.unit = j.value("unit", Residue{1});
  spec.x0 = j.contains("x0") ? vector_from_json(j.at("x0")) : LatticeVector(LatticeVector::Zero(spec.rank()));
  if (j.contains("inner") && !j.at("inner").is_null()) {
    const auto& inner = j.at("inner");
    spec.inner = inner.is_string() ? parse_element(inner.get<std::string>(), spec.modulus)
                                   : element_from_json(inner, spec.modulus);
  }
  spec.automorphism();
  return spec;
}

AutomorphismSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open spec file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw Error("spec file '" + path + "' is not valid JSON: " + e.what());
  }
  return spec_from_json(j);
}

std::string verdict_summary(const ReidemeisterVerdict& verdict) {
  std::string s = verdict.is_finite() ? "finite, R=" + verdict.value->str() : "infinite";
  return s + ", rule=" + to_string(verdict.certificate.rule);
}

namespace {

struct SpecSource {
  std::string file;
  std::optional<Residue> modulus;
  std::string matrix;
  Residue unit = 1;
  std::string x0;
  std::string inner;

  void attach(CLI::App* cmd) {
    cmd->add_option("spec", file, "automorphism spec (JSON file)");
    cmd->add_option("--modulus,-m", modulus, "lamp modulus m (inline spec)");
    cmd->add_option("--matrix", matrix, "inline matrix, rows separated by ';', e.g. \"0,1;-1,-1\"");
    cmd->add_option("--unit,-u", unit, "unit u (inline spec)");
    cmd->add_option("--x0", x0, "shift vector, e.g. \"1,0\" (inline spec)");
    cmd->add_option("--inner", inner, "inner twist in the element grammar (inline spec)");
  }

  AutomorphismSpec load() const {
    if (!file.empty()) {
      if (!matrix.empty()) throw Error("give either a spec file or --matrix, not both");
      return load_spec(file);
    }
    if (matrix.empty() || !modulus) throw Error("no automorphism given: pass a spec file or --modulus and --matrix");
    nlohmann::json j{{"version", 1}, {"modulus", *modulus}, {"unit", unit}};
    j["matrix"] = matrix_to_json(parse_inline_matrix(matrix));
    if (!x0.empty()) j["x0"] = vector_to_json(parse_inline_vector(x0));
    if (!inner.empty()) j["inner"] = inner;
    return spec_from_json(j);
  }
};

struct Globals {
  bool json = false;
  std::uint64_t seed = kDefaultSeed;
  std::optional<std::uint64_t> budget;
};

IntMatrix i_minus(const IntMatrix& a) { return IntMatrix(IntMatrix::Identity(a.rows(), a.cols()) - a); }

std::string periods_text(const OrbitReport& report) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [s, w] : report.realized_periods) {
    if (!first) os << "; ";
    first = false;
    os << s << " at " << to_string(w);
  }
  return os.str();
}

Residue one_minus_power(Residue u, std::int64_t r, Residue m) {
  Residue p = 1;
  for (std::int64_t i = 0; i < r; ++i) p = p * u % m;
  return mod(1 - p, m);
}

void print_certificate(std::ostream& out, const WreathAutomorphism& phi, const ReidemeisterVerdict& v) {
  const Certificate& c = v.certificate;
  switch (c.rule) {
    case Rule::DetZero:
      out << "  det(I-A) = 0; fixed vector v = " << to_string(*c.fixed_vector) << " with A v = v\n";
      break;
    case Rule::InfiniteOrbit:
      out << "  A has infinite order; basis vector " << to_string(*c.unbounded_vector) << " has an unbounded orbit\n";
      break;
    case Rule::NonEpiOrbit:
      out << "  orbit period s = " << *c.orbit_period << " (point " << to_string(*c.orbit_witness)
          << "), shift period t = " << *c.shift_period << ", r = lcm(s,t) = " << *c.combined_period << '\n'
          << "  1 - u^r = " << one_minus_power(phi.unit, *c.combined_period, phi.modulus) << " mod " << phi.modulus
          << " is not a unit\n";
      break;
    case Rule::Cylinder:
      out << "  1 - u^r is a unit on every orbit block; classes are cylinders over the " << c.abelian_number->str()
          << " classes of A\n";
      break;
  }
}

int cmd_classify(const AutomorphismSpec& spec, const Globals& g, std::ostream& out) {
  const WreathAutomorphism phi = spec.automorphism();
  const ReidemeisterVerdict verdict = reidemeister_number(phi);
  if (g.json) {
    out << verdict_to_json(verdict).dump(2) << '\n';
    return kOk;
  }
  out << verdict_summary(verdict) << '\n';
  out << "  det(I-A) = " << determinant(i_minus(phi.matrix)).str() << '\n';
  const Order order = matrix_order(phi.matrix);
  out << "  order(A) = " << to_string(order) << '\n';
  if (order.is_finite()) {
    out << "  realized periods: " << periods_text(realized_periods(phi.matrix)) << '\n';
    out << "  effective x0 = " << to_string(phi.effective_x0())
        << ", period t = " << point_period(phi.matrix, phi.effective_x0()) << '\n';
  }
  out << "  unit order d = " << unit_order(phi.unit, phi.modulus) << '\n';
  print_certificate(out, phi, verdict);
  return kOk;
}

int cmd_orbits(const AutomorphismSpec& spec, const Globals& g, std::ostream& out) {
  const WreathAutomorphism phi = spec.automorphism();
  const OrbitReport report = realized_periods(phi.matrix);
  nlohmann::json j{{"order", to_string(report.order)}};
  auto basis = nlohmann::json::array();
  for (const auto& p : report.basis_periods) basis.push_back(to_string(p));
  j["basis_periods"] = basis;
  if (report.order.is_finite()) {
    const std::int64_t t = point_period(phi.matrix, phi.effective_x0());
    j["shift_period"] = t;
    auto blocks = nlohmann::json::array();
    for (const auto& [s, w] : report.realized_periods) {
      const std::int64_t r = std::lcm(s, t);
      const Residue det = one_minus_power(phi.unit, r, phi.modulus);
      blocks.push_back({{"period", s},
                        {"witness", vector_to_json(w)},
                        {"orbit_length", r},
                        {"block_det", det},
                        {"invertible", is_unit(det, phi.modulus)}});
    }
    j["periods"] = blocks;
  }
  if (g.json) {
    out << j.dump(2) << '\n';
    return kOk;
  }
  out << "order(A) = " << j["order"].get<std::string>() << '\n';
  out << "basis periods:";
  for (const auto& p : basis) out << ' ' << p.get<std::string>();
  out << '\n';
  if (!report.order.is_finite()) return kOk;
  out << "effective x0 = " << to_string(phi.effective_x0()) << ", period t = " << j["shift_period"] << '\n';
  for (const auto& b : j["periods"]) {
    out << "s = " << b["period"] << " at " << to_string(vector_from_json(b["witness"]))
        << ": orbit length " << b["orbit_length"] << ", det(E-M) = " << b["block_det"] << " mod " << phi.modulus
        << (b["invertible"].get<bool>() ? " (unit)" : " (not a unit)") << '\n';
  }
  return kOk;
}

int cmd_twisted_eq(const AutomorphismSpec& spec, const std::string& g_text, const std::string& h_text,
                   const Globals& g, std::ostream& out) {
  const WreathAutomorphism phi = spec.automorphism();
  const WreathElement a = parse_element(g_text, phi.modulus);
  const WreathElement b = parse_element(h_text, phi.modulus);
  if (a.rank() != phi.rank() || b.rank() != phi.rank()) throw Error("element rank differs from the spec rank");
  FullOptions options;
  if (g.budget) options.budget = static_cast<std::size_t>(*g.budget);
  const TwistedConjugacy result = are_twisted_conjugate_full(phi, a, b, options);
  if (g.json) {
    nlohmann::json j{{"answer", to_string(result.answer)},
                     {"reason", result.reason},
                     {"nodes_explored", result.nodes_explored}};
    if (result.witness) j["witness"] = element_to_json(*result.witness);
    out << j.dump(2) << '\n';
    return kOk;
  }
  out << to_string(result.answer) << '\n';
  if (result.witness) out << "  witness z = " << format_element(*result.witness) << "  (h = z g phi(z)^-1)\n";
  if (!result.reason.empty()) out << "  " << result.reason << '\n';
  if (result.nodes_explored > 0) out << "  nodes explored: " << result.nodes_explored << '\n';
  return kOk;
}

int cmd_group_status(Residue m, Eigen::Index k, const Globals& g, std::ostream& out) {
  if (m < 2 || k < 1) throw Error("group-status needs m >= 2 and k >= 1");
  const GroupStatus status = r_infinity_status(m, k);
  std::optional<ReidemeisterVerdict> verdict;
  if (status.example) verdict = reidemeister_number(*status.example);
  if (g.json) {
    nlohmann::json j{{"status", to_string(status.status)}, {"reason", status.reason}};
    if (status.example) {
      j["example"] = spec_to_json(spec_from_automorphism(*status.example));
      j["example_verdict"] = verdict_to_json(*verdict);
    }
    out << j.dump(2) << '\n';
    return kOk;
  }
  out << to_string(status.status) << '\n';
  if (!status.reason.empty()) out << "  " << status.reason << '\n';
  if (status.example) {
    out << "  witness spec: " << spec_to_json(spec_from_automorphism(*status.example)).dump() << '\n';
    out << "  witness verdict: " << verdict_summary(*verdict) << '\n';
  }
  return kOk;
}

WreathElement random_element(std::mt19937_64& rng, Residue m, Eigen::Index k) {
  std::uniform_int_distribution<int> coord(-3, 3);
  std::uniform_int_distribution<int> count(0, 4);
  std::uniform_int_distribution<Residue> value(1, m - 1);
  auto point = [&] {
    LatticeVector x(k);
    for (Eigen::Index i = 0; i < k; ++i) x[i] = coord(rng);
    return x;
  };
  FiniteSupportFunction f(m, k);
  for (int i = count(rng); i > 0; --i) f.add(point(), value(rng));
  return {std::move(f), point()};
}

struct OracleRun {
  FiniteWreathGroup group;
  FiniteAutomorphism phi_n;
  TwistedClasses classes;
  OracleReport report;
};

OracleRun oracle_run(const WreathAutomorphism& phi, std::int64_t n, std::uint64_t budget) {
  if (n < 1) throw Error("n must be at least 1");
  FiniteWreathGroup group(phi.modulus, n, phi.rank());
  group.require_within(budget);
  FiniteAutomorphism phi_n = induce_automorphism(group, phi);
  TwistedClasses classes = twisted_classes_bruteforce(group, phi_n, budget);
  OracleReport report;
  report.m = phi.modulus;
  report.n = n;
  report.k = phi.rank();
  report.twisted_classes = classes.count;
  report.fixed_irreps = phi_hat_fixed_count(group, phi_n, budget);
  report.tbft = report.twisted_classes == report.fixed_irreps;
  for (const auto& r : classes.representatives) report.representatives.push_back(group.lift(r));
  return {std::move(group), std::move(phi_n), std::move(classes), std::move(report)};
}

int cmd_verify(const AutomorphismSpec& spec, std::int64_t n, const Globals& g, std::ostream& out) {
  constexpr int samples = 20;
  const WreathAutomorphism phi = spec.automorphism();
  const OracleRun run = oracle_run(phi, n, g.budget.value_or(kDefaultOracleBudget));
  const OracleReport& report = run.report;
  const ReidemeisterVerdict verdict = reidemeister_number(phi);

  bool consistent = report.tbft;
  std::string comparison;
  if (verdict.is_finite()) {
    const Integer& r = *verdict.value;
    const Integer exponent = cokernel_exponent(i_minus(phi.matrix));
    const Integer classes(report.twisted_classes);
    if (Integer(n) % exponent == 0) {
      if (classes == r) {
        comparison = "matches Finite(" + r.str() + ")";
      } else {
        consistent = false;
        comparison = "MISMATCH: expected Finite(" + r.str() + ") classes since n is a multiple of " + exponent.str();
      }
    } else if (classes <= r) {
      comparison = "at most Finite(" + r.str() + "); n is not a multiple of the exponent " + exponent.str();
    } else {
      consistent = false;
      comparison = "MISMATCH: more classes than Finite(" + r.str() + ")";
    }
  } else {
    comparison = "library verdict infinite; the quotient count is only a lower bound";
  }

  // Twisted transforms in the infinite group must project into one class.
  std::mt19937_64 rng(g.seed);
  int projected = 0;
  for (int i = 0; i < samples; ++i) {
    const WreathElement x = random_element(rng, phi.modulus, phi.rank());
    const WreathElement z = random_element(rng, phi.modulus, phi.rank());
    const WreathElement y = twisted_transform(phi, x, z);
    const auto cx = run.classes.class_of[run.group.encode(project(run.group, x))];
    const auto cy = run.classes.class_of[run.group.encode(project(run.group, y))];
    if (cx == cy) ++projected;
  }
  if (projected != samples) consistent = false;

  if (g.json) {
    nlohmann::json j{{"oracle", to_json(report)},
                     {"verdict", verdict_to_json(verdict)},
                     {"comparison", comparison},
                     {"projection_samples", {{"seed", g.seed}, {"total", samples}, {"consistent", projected}}},
                     {"consistent", consistent}};
    out << j.dump(2) << '\n';
  } else {
    out << "group Z_" << report.m << " wr (Z/" << report.n << ")^" << report.k << ", order "
        << *run.group.order() << '\n';
    out << "classes=" << report.twisted_classes << ", fixed=" << report.fixed_irreps
        << ", tbft=" << (report.tbft ? "true" : "false") << ", " << comparison << '\n';
    out << "library verdict: " << verdict_summary(verdict) << '\n';
    out << "projected twisted transforms: " << projected << '/' << samples << " stay in one class (seed " << g.seed
        << ")\n";
  }
  return consistent ? kOk : kMismatch;
}

int cmd_oracle_classes(const AutomorphismSpec& spec, std::int64_t n, const Globals& g, std::ostream& out) {
  const OracleReport report = oracle_run(spec.automorphism(), n, g.budget.value_or(kDefaultOracleBudget)).report;
  if (g.json) {
    out << to_json(report).dump(2) << '\n';
    return kOk;
  }
  out << "twisted classes: " << report.twisted_classes << '\n';
  for (const auto& r : report.representatives) out << "  " << format_element(r) << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reidemeister numbers and twisted conjugacy in Z_m wr Z^k", "lamplighter"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals globals;
  app.add_flag("--json", globals.json, "machine-readable output");
  app.add_option("--seed", globals.seed, "seed for randomized checks")->capture_default_str();
  app.add_option("--budget", globals.budget, "element budget (oracle) or node budget (twisted-eq)");

  SpecSource classify_src, orbits_src, eq_src, verify_src, oracle_src;
  std::string g_text, h_text;
  std::int64_t verify_n = 0, oracle_n = 0;
  Residue status_m = 0;
  Eigen::Index status_k = 0;

  auto* classify = app.add_subcommand("classify", "decide finiteness of R(phi) with a certificate");
  classify_src.attach(classify);
  auto* orbits = app.add_subcommand("orbits", "orbit report of A and the orbit blocks of phi'");
  orbits_src.attach(orbits);
  auto* eq = app.add_subcommand("twisted-eq", "decide whether h = z g phi(z)^-1 for some z");
  eq->set_help_flag("--help", "print this help message and exit");
  eq_src.attach(eq);
  eq->add_option("--g", g_text, "first element")->required();
  eq->add_option("--h", h_text, "second element")->required();
  auto* status = app.add_subcommand("group-status", "R_infinity status of Z_m wr Z^k");
  status->add_option("m", status_m, "lamp modulus")->required();
  status->add_option("k", status_k, "rank")->required();
  auto* verify = app.add_subcommand("verify", "cross-check against the finite quotient with (Z/n)^k");
  verify_src.attach(verify);
  verify->add_option("-n,--quotient", verify_n, "quotient parameter n")->required();
  auto* oracle = app.add_subcommand("oracle-classes", "twisted classes of the finite quotient");
  oracle_src.attach(oracle);
  oracle->add_option("-n,--quotient", oracle_n, "quotient parameter n")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (classify->parsed()) return cmd_classify(classify_src.load(), globals, out);
    if (orbits->parsed()) return cmd_orbits(orbits_src.load(), globals, out);
    if (eq->parsed()) return cmd_twisted_eq(eq_src.load(), g_text, h_text, globals, out);
    if (status->parsed()) return cmd_group_status(status_m, status_k, globals, out);
    if (verify->parsed()) return cmd_verify(verify_src.load(), verify_n, globals, out);
    if (oracle->parsed()) return cmd_oracle_classes(oracle_src.load(), oracle_n, globals, out);
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kBudget;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed spec: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace lamplighter::cli
