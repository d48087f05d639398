#pragma once

// Exact linear algebra over the rationals. Vectors are rows; a basis is a
// matrix whose rows are the basis vectors.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "padic_lattice/errors.hpp"
#include "padic_lattice/rational.hpp"

namespace padic {

using Vec = std::vector<Rat>;
using Mat = std::vector<Vec>;

inline Vec zero_vec(std::size_t n) { return Vec(n, Rat(0)); }

inline Mat identity(std::size_t n) {
  Mat m(n, zero_vec(n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x.is_zero(); });
}

namespace detail {
inline void require_same_length(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) {
    throw InvalidParameter("vector length mismatch: " + std::to_string(a.size()) + " vs " +
                           std::to_string(b.size()));
  }
}
}  // namespace detail

inline Vec operator+(Vec a, const Vec& b) {
  detail::require_same_length(a, b);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

inline Vec operator-(Vec a, const Vec& b) {
  detail::require_same_length(a, b);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

inline Vec operator*(const Rat& k, Vec v) {
  for (auto& x : v) x *= k;
  return v;
}

/// a += k * b
inline void axpy(Vec& a, const Rat& k, const Vec& b) {
  detail::require_same_length(a, b);
  if (k.is_zero()) return;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!b[i].is_zero()) a[i] += k * b[i];
  }
}

/// Row vector times matrix: sum_i x_i * M_i.
inline Vec row_combination(const Vec& x, const Mat& rows, std::size_t width) {
  if (x.size() != rows.size()) throw InvalidParameter("coefficient count does not match row count");
  Vec out = zero_vec(width);
  for (std::size_t i = 0; i < rows.size(); ++i) axpy(out, x[i], rows[i]);
  return out;
}

inline Mat multiply(const Mat& a, const Mat& b, std::size_t width) {
  Mat out;
  out.reserve(a.size());
  for (const auto& row : a) out.push_back(row_combination(row, b, width));
  return out;
}

inline bool is_rectangular(const Mat& m) {
  if (m.empty()) return true;
  return std::all_of(m.begin(), m.end(), [&](const Vec& r) { return r.size() == m[0].size(); });
}

namespace detail {

// In-place reduced row echelon form. Returns pivot columns.
inline std::vector<std::size_t> rref(Mat& a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < a.size(); ++c) {
    std::size_t sel = row;
    while (sel < a.size() && a[sel][c].is_zero()) ++sel;
    if (sel == a.size()) continue;
    std::swap(a[row], a[sel]);
    const Rat inv = Rat(1) / a[row][c];
    for (auto& x : a[row]) x *= inv;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][c].is_zero()) continue;
      const Rat f = a[r][c];
      axpy(a[r], -f, a[row]);
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

inline Mat transpose(const Mat& m, std::size_t cols) {
  Mat t(cols, zero_vec(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) t[j][i] = m[i][j];
  return t;
}

}  // namespace detail

inline std::size_t rank(const Mat& m) {
  if (m.empty()) return 0;
  if (!is_rectangular(m)) throw InvalidParameter("ragged matrix");
  Mat a = m;
  return detail::rref(a, a[0].size()).size();
}

/// Coefficients x with x * rows = v, or nullopt when v is outside the row span.
/// Rows must be linearly independent.
inline std::optional<Vec> solve_in_span(const Mat& rows, const Vec& v) {
  if (rows.empty()) {
    if (is_zero(v)) return Vec{};
    return std::nullopt;
  }
  if (!is_rectangular(rows) || rows[0].size() != v.size()) {
    throw InvalidParameter("dimension mismatch in solve");
  }
  const std::size_t m = rows.size();
  const std::size_t n = v.size();
  // Augmented system rows^T x = v^T, one equation per coordinate.
  Mat aug(n, zero_vec(m + 1));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) aug[j][i] = rows[i][j];
    aug[j][m] = v[j];
  }
  const auto pivots = detail::rref(aug, m + 1);
  const bool inconsistent = !pivots.empty() && pivots.back() == m;
  if (pivots.size() - (inconsistent ? 1 : 0) != m) throw SingularMatrix("rows are linearly dependent");
  if (inconsistent) return std::nullopt;
  Vec x = zero_vec(m);
  for (std::size_t r = 0; r < m; ++r) x[pivots[r]] = aug[r][m];
  return x;
}

/// The unique x with x * M = b for square invertible M.
inline Vec solve_linear(const Mat& m, const Vec& b) {
  if (m.size() != b.size() || !is_rectangular(m) || (!m.empty() && m[0].size() != m.size())) {
    throw InvalidParameter("solve_linear needs a square matrix matching the right-hand side");
  }
  if (rank(m) != m.size()) throw SingularMatrix("matrix is singular");
  auto x = solve_in_span(m, b);
  return std::move(*x);
}

inline Mat inverse(const Mat& m) {
  const std::size_t n = m.size();
  if (!is_rectangular(m) || (n > 0 && m[0].size() != n)) throw InvalidParameter("inverse needs a square matrix");
  Mat aug(n, zero_vec(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = m[i][j];
    aug[i][n + i] = 1;
  }
  const auto pivots = detail::rref(aug, n);
  if (pivots.size() != n) throw SingularMatrix("matrix is singular");
  Mat inv(n, zero_vec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

inline Rat determinant(Mat a) {
  const std::size_t n = a.size();
  if (!is_rectangular(a) || (n > 0 && a[0].size() != n)) throw InvalidParameter("determinant needs a square matrix");
  Rat det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t sel = c;
    while (sel < n && a[sel][c].is_zero()) ++sel;
    if (sel == n) return Rat(0);
    if (sel != c) {
      std::swap(a[sel], a[c]);
      det = -det;
    }
    det *= a[c][c];
    const Rat inv = Rat(1) / a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r][c].is_zero()) continue;
      const Rat f = a[r][c] * inv;
      axpy(a[r], -f, a[c]);
    }
  }
  return det;
}

/// "[a, b, c]"
inline std::string to_string(const Vec& v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << ']';
  return os.str();
}

}  // namespace padic
