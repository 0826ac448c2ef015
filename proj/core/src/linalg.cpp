#include "isopar/linalg.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace isopar {

std::size_t bareiss_rank(const Matrix<RationalField>& m) {
  using boost::multiprecision::cpp_int;
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::vector<cpp_int>> a(rows, std::vector<cpp_int>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    cpp_int l = 1;
    for (std::size_t j = 0; j < cols; ++j) l = boost::multiprecision::lcm(l, denominator(m(i, j).value()));
    for (std::size_t j = 0; j < cols; ++j) {
      const auto& v = m(i, j).value();
      a[i][j] = numerator(v) * (l / denominator(v));
    }
  }

  cpp_int prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

}  // namespace isopar
