#pragma once

// Command-line front end. `run` is the whole program minus process setup so
// tests can drive it with captured streams.

#include "lamplighter/reidemeister.hpp"

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace lamplighter::cli {

enum ExitCode : int { kOk = 0, kMismatch = 1, kInputError = 2, kBudget = 3 };

inline constexpr Eigen::Index kMaxRank = 16;
inline constexpr std::uint64_t kDefaultSeed = 20240917;

/// On-disk automorphism description:
///   {"version":1, "modulus":m, "rank":k, "matrix":[[...],...], "unit":u,
///    "x0":[...], "inner":"f=[...] t=(...)"}
/// "inner" is optional and may also be given in the element JSON form.
struct AutomorphismSpec {
  int version = 1;
  Residue modulus = 2;
  IntMatrix matrix;
  Residue unit = 1;
  LatticeVector x0;
  std::optional<WreathElement> inner;

  Eigen::Index rank() const { return matrix.rows(); }
  WreathAutomorphism automorphism() const;

  friend bool operator==(const AutomorphismSpec&, const AutomorphismSpec&) = default;
};

AutomorphismSpec spec_from_automorphism(const WreathAutomorphism& phi);
nlohmann::json spec_to_json(const AutomorphismSpec& spec);
/// Validates the schema and the automorphism invariants; throws Error.
AutomorphismSpec spec_from_json(const nlohmann::json& j);
AutomorphismSpec load_spec(const std::string& path);

/// One-line verdict summary, e.g. "finite, R=3, rule=cylinder".
std::string verdict_summary(const ReidemeisterVerdict& verdict);

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lamplighter::cli
