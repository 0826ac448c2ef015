#pragma once

// Plain-text polynomial matrices in s with integer coefficients.
//
//   file    := { line '\n' }
//   line    := blank | '#' comment | row
//   row     := entry { sep entry }          sep is whitespace or ','
//   entry   := [sign] term { sign term }    no whitespace inside an entry
//   term    := int | [int ['*']] 's' ['^' int]
//
// Example row: "1+s^2  -3s  0  2*s^4-s"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "isopar/torsion.hpp"

namespace isopar {

/// Coefficient lists indexed by power of s, one per entry.
using IntPolyMatrix = std::vector<std::vector<std::vector<std::int64_t>>>;

/// Throws ParseError with a line number on malformed input or ragged rows.
IntPolyMatrix parse_int_poly_matrix(std::string_view text);
std::vector<std::int64_t> parse_int_poly(std::string_view entry);

template <Field K>
PolyMatrix<K> to_poly_matrix(const K& field, const IntPolyMatrix& m) {
  if (m.empty()) throw ParseError("matrix has no rows");
  PolyMatrix<K> out(field, m.size(), m[0].size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) {
      std::vector<typename K::Element> c;
      for (auto v : m[i][j]) c.push_back(field.from_int(v));
      out(i, j) = PolyElement<K>(field, std::move(c));
    }
  return out;
}

}  // namespace isopar
