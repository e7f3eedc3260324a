#pragma once

// Text and JSON forms of lattice data and wreath elements.
//
// Element grammar:  f=[(x1,...,xk):v; ...] t=(t1,...,tk)
// with 1 <= v < m, positions in increasing lexicographic order, and `f=[]`
// for the empty support. JSON mirror:
//   {"support":[{"pos":[...],"val":v}, ...], "translation":[...]}

#include "lamplighter/wreath.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace lamplighter {

std::string format_element(const WreathElement& g);
WreathElement parse_element(std::string_view text, Residue modulus);

/// Parses "a,b;c,d" into a row-major matrix.
IntMatrix parse_inline_matrix(std::string_view text);
/// Parses "a,b,c" (optionally parenthesized) into a vector.
LatticeVector parse_inline_vector(std::string_view text);

nlohmann::json integer_to_json(const Integer& x);
Integer integer_from_json(const nlohmann::json& j);

nlohmann::json vector_to_json(const LatticeVector& v);
LatticeVector vector_from_json(const nlohmann::json& j);

nlohmann::json matrix_to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const nlohmann::json& j);

nlohmann::json element_to_json(const WreathElement& g);
WreathElement element_from_json(const nlohmann::json& j, Residue modulus);

}  // namespace lamplighter
