#include "lamplighter/format.hpp"

#include <cctype>
#include <limits>
#include <sstream>

namespace lamplighter {

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }
  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  void expect(std::string_view word) {
    for (char c : word) expect(c);
  }
  Integer integer() {
    skip_space();
    const std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    const std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits) fail("expected integer");
    std::string token(text_.substr(start, pos_ - start));
    if (token.front() == '+') token.erase(0, 1);
    return Integer(token);
  }
  LatticeVector tuple() {
    expect('(');
    std::vector<Integer> coords;
    if (!peek(')')) {
      do {
        coords.push_back(integer());
      } while (accept(','));
    }
    expect(')');
    LatticeVector v(static_cast<Eigen::Index>(coords.size()));
    for (std::size_t i = 0; i < coords.size(); ++i) v[static_cast<Eigen::Index>(i)] = coords[i];
    return v;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw Error("parse error at offset " + std::to_string(pos_) + ": " + what);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string format_element(const WreathElement& g) {
  std::ostringstream os;
  os << "f=[";
  bool first = true;
  for (const auto& [x, v] : g.f.entries()) {
    if (!first) os << "; ";
    first = false;
    os << to_string(x) << ':' << v;
  }
  os << "] t=" << to_string(g.t);
  return os.str();
}

WreathElement parse_element(std::string_view text, Residue modulus) {
  Cursor cur(text);
  cur.expect("f=");
  cur.expect('[');
  std::vector<std::pair<LatticeVector, Integer>> entries;
  if (!cur.peek(']')) {
    do {
      LatticeVector x = cur.tuple();
      cur.expect(':');
      Integer v = cur.integer();
      entries.emplace_back(std::move(x), std::move(v));
    } while (cur.accept(';'));
  }
  cur.expect(']');
  cur.expect("t=");
  LatticeVector t = cur.tuple();
  if (!cur.at_end()) cur.fail("trailing characters");

  FiniteSupportFunction f(modulus, t.size());
  for (const auto& [x, v] : entries) {
    if (x.size() != t.size()) throw Error("lamp position and translation differ in dimension");
    if (v < 1 || v >= modulus) throw Error("lamp value must satisfy 1 <= v < m");
    if (f.at(x) != 0) throw Error("duplicate lamp position " + to_string(x));
    f.add(x, v.convert_to<Residue>());
  }
  return {std::move(f), std::move(t)};
}

IntMatrix parse_inline_matrix(std::string_view text) {
  std::vector<std::vector<Integer>> rows;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(';', start), text.size());
    Cursor cur(text.substr(start, end - start));
    std::vector<Integer> row;
    do {
      row.push_back(cur.integer());
    } while (cur.accept(','));
    if (!cur.at_end()) cur.fail("unexpected character in matrix row");
    rows.push_back(std::move(row));
    start = end + 1;
  }
  const auto n = static_cast<Eigen::Index>(rows.size());
  IntMatrix m(n, static_cast<Eigen::Index>(rows.front().size()));
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (static_cast<Eigen::Index>(row.size()) != m.cols()) throw Error("ragged matrix rows");
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = row[static_cast<std::size_t>(j)];
  }
  return m;
}

LatticeVector parse_inline_vector(std::string_view text) {
  Cursor cur(text);
  const bool paren = cur.accept('(');
  std::vector<Integer> coords;
  if (!cur.peek(')') && !cur.at_end()) {
    do {
      coords.push_back(cur.integer());
    } while (cur.accept(','));
  }
  if (paren) cur.expect(')');
  if (!cur.at_end()) cur.fail("trailing characters");
  LatticeVector v(static_cast<Eigen::Index>(coords.size()));
  for (std::size_t i = 0; i < coords.size(); ++i) v[static_cast<Eigen::Index>(i)] = coords[i];
  return v;
}

nlohmann::json integer_to_json(const Integer& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max()) {
    return x.convert_to<std::int64_t>();
  }
  return x.str();
}

Integer integer_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    Cursor cur(s);
    Integer v = cur.integer();
    if (!cur.at_end()) cur.fail("trailing characters in integer");
    return v;
  }
  throw Error("expected an integer, got " + j.dump());
}

nlohmann::json vector_to_json(const LatticeVector& v) {
  auto arr = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(integer_to_json(v[i]));
  return arr;
}

LatticeVector vector_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw Error("expected an integer array");
  LatticeVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = integer_from_json(j[i]);
  return v;
}

nlohmann::json matrix_to_json(const IntMatrix& m) {
  auto rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) rows.push_back(vector_to_json(m.row(i).transpose()));
  return rows;
}

IntMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw Error("matrix must be a non-empty array of rows");
  const auto n = static_cast<Eigen::Index>(j.size());
  IntMatrix m(n, static_cast<Eigen::Index>(j.front().is_array() ? j.front().size() : 0));
  for (Eigen::Index i = 0; i < n; ++i) {
    const LatticeVector row = vector_from_json(j[static_cast<std::size_t>(i)]);
    if (row.size() != m.cols()) throw Error("ragged matrix rows");
    m.row(i) = row.transpose();
  }
  return m;
}

nlohmann::json element_to_json(const WreathElement& g) {
  auto support = nlohmann::json::array();
  for (const auto& [x, v] : g.f.entries()) {
    support.push_back({{"pos", vector_to_json(x)}, {"val", v}});
  }
  return {{"support", support}, {"translation", vector_to_json(g.t)}};
}

WreathElement element_from_json(const nlohmann::json& j, Residue modulus) {
  if (!j.is_object() || !j.contains("translation")) throw Error("element JSON needs a translation");
  LatticeVector t = vector_from_json(j.at("translation"));
  FiniteSupportFunction f(modulus, t.size());
  if (j.contains("support")) {
    for (const auto& entry : j.at("support")) {
      LatticeVector x = vector_from_json(entry.at("pos"));
      const auto v = entry.at("val").get<std::int64_t>();
      if (x.size() != t.size()) throw Error("lamp position and translation differ in dimension");
      if (v < 1 || v >= modulus) throw Error("lamp value must satisfy 1 <= v < m");
      if (f.at(x) != 0) throw Error("duplicate lamp position " + to_string(x));
      f.add(x, v);
    }
  }
  return {std::move(f), std::move(t)};
}

}  // namespace lamplighter
