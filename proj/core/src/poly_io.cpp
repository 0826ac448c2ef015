#include "isopar/poly_io.hpp"

#include <cctype>
#include <charconv>
#include <limits>

namespace isopar {

namespace {

std::int64_t read_int(std::string_view s, std::size_t& pos) {
  std::int64_t v = 0;
  auto [end, ec] = std::from_chars(s.data() + pos, s.data() + s.size(), v);
  if (ec != std::errc()) throw ParseError("bad integer in '" + std::string(s) + "'");
  pos = static_cast<std::size_t>(end - s.data());
  return v;
}

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

}  // namespace

std::vector<std::int64_t> parse_int_poly(std::string_view s) {
  if (s.empty()) throw ParseError("empty entry");
  std::vector<std::int64_t> c;
  std::size_t pos = 0;
  bool first = true;
  while (pos < s.size()) {
    std::int64_t sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (!first) {
      throw ParseError("expected '+' or '-' in '" + std::string(s) + "'");
    }
    first = false;
    if (pos == s.size()) throw ParseError("dangling sign in '" + std::string(s) + "'");
    std::int64_t coeff = 1;
    bool has_coeff = false;
    if (is_digit(s[pos])) {
      coeff = read_int(s, pos);
      has_coeff = true;
    }
    std::size_t power = 0;
    if (pos < s.size() && s[pos] == '*') {
      if (!has_coeff) throw ParseError("'*' without a coefficient in '" + std::string(s) + "'");
      ++pos;
      if (pos == s.size() || s[pos] != 's') throw ParseError("expected 's' after '*' in '" + std::string(s) + "'");
    }
    if (pos < s.size() && s[pos] == 's') {
      ++pos;
      power = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        if (pos == s.size() || !is_digit(s[pos])) throw ParseError("bad exponent in '" + std::string(s) + "'");
        const auto e = read_int(s, pos);
        if (e > 4096) throw ParseError("exponent too large in '" + std::string(s) + "'");
        power = static_cast<std::size_t>(e);
      }
    } else if (!has_coeff) {
      throw ParseError("expected a term in '" + std::string(s) + "'");
    }
    if (c.size() <= power) c.resize(power + 1, 0);
    const std::int64_t term = sign * coeff;
    if ((term > 0 && c[power] > std::numeric_limits<std::int64_t>::max() - term) ||
        (term < 0 && c[power] < std::numeric_limits<std::int64_t>::min() - term))
      throw ParseError("coefficient overflow in '" + std::string(s) + "'");
    c[power] += term;
  }
  while (!c.empty() && c.back() == 0) c.pop_back();
  return c;
}

IntPolyMatrix parse_int_poly_matrix(std::string_view text) {
  IntPolyMatrix rows;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
    std::vector<std::vector<std::int64_t>> row;
    std::size_t pos = 0;
    while (pos < line.size()) {
      const char ch = line[pos];
      if (std::isspace(static_cast<unsigned char>(ch)) || ch == ',') {
        ++pos;
        continue;
      }
      std::size_t end = pos;
      while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end])) && line[end] != ',') ++end;
      try {
        row.push_back(parse_int_poly(line.substr(pos, end - pos)));
      } catch (const ParseError& e) {
        throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
      }
      pos = end;
    }
    if (row.empty()) continue;
    if (!rows.empty() && row.size() != rows[0].size())
      throw ParseError("line " + std::to_string(line_no) + ": expected " + std::to_string(rows[0].size()) +
                       " entries, found " + std::to_string(row.size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("matrix has no rows");
  return rows;
}

}  // namespace isopar
