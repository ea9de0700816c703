#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "parikh/errors.hpp"

namespace parikh {

/// Point of N^d. Coordinate i counts occurrences of the i-th alphabet
/// letter, in grammar declaration order.
using Vector = std::vector<std::uint64_t>;

inline Vector add(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw error("vector dimension mismatch");
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline bool is_zero(const Vector& v) {
  for (auto c : v)
    if (c != 0) return false;
  return true;
}

/// Coordinatewise a <= b.
inline bool dominated_by(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw error("vector dimension mismatch");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

/// Renders "(n1,n2,...)" with no whitespace; dimension 0 gives "()".
inline std::string to_text(const Vector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) s += ',';
    s += std::to_string(v[i]);
  }
  s += ')';
  return s;
}

/// Parses the to_text form; whitespace around numbers is tolerated.
inline Vector parse_vector(const std::string& text) {
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  };
  skip_ws();
  if (i >= text.size() || text[i] != '(')
    throw parse_error("expected '(' in vector literal: " + text);
  ++i;
  Vector v;
  skip_ws();
  if (i < text.size() && text[i] == ')') return v;  // "()" is dimension 0
  for (;;) {
    skip_ws();
    std::size_t start = i;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
    if (i == start)
      throw parse_error("expected natural number in vector literal: " + text);
    v.push_back(std::stoull(text.substr(start, i - start)));
    skip_ws();
    if (i >= text.size())
      throw parse_error("unterminated vector literal: " + text);
    if (text[i] == ')') break;
    if (text[i] != ',')
      throw parse_error("expected ',' or ')' in vector literal: " + text);
    ++i;
  }
  return v;
}

}  // namespace parikh
