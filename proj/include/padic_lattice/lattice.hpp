#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "padic_lattice/errors.hpp"
#include "padic_lattice/linalg.hpp"
#include "padic_lattice/norm.hpp"
#include "padic_lattice/rational.hpp"

namespace padic {

/// The Z_p-span of m linearly independent vectors in a normed space.
class LatticeBasis {
 public:
  LatticeBasis(SpacePtr space, Mat vectors) : space_(std::move(space)), vectors_(std::move(vectors)) {
    if (!space_) throw InvalidParameter("lattice needs a space");
    const std::size_t n = space_->dim();
    if (vectors_.empty() || vectors_.size() > n) {
      throw InvalidParameter("lattice rank must be between 1 and " + std::to_string(n) + ", got " +
                             std::to_string(vectors_.size()));
    }
    for (const auto& v : vectors_) space_->check_dim(v);
    if (padic::rank(vectors_) != vectors_.size()) throw InvalidParameter("basis vectors are linearly dependent");
  }

  const SpacePtr& space_ptr() const noexcept { return space_; }
  const NormedSpace& space() const noexcept { return *space_; }
  Prime prime() const noexcept { return space_->prime(); }
  const Mat& vectors() const noexcept { return vectors_; }
  const Vec& operator[](std::size_t i) const { return vectors_[i]; }
  std::size_t rank() const noexcept { return vectors_.size(); }
  std::size_t dim() const noexcept { return space_->dim(); }
  bool full_rank() const noexcept { return rank() == dim(); }

  std::vector<NormValue> norms() const {
    std::vector<NormValue> out;
    out.reserve(rank());
    for (const auto& v : vectors_) out.push_back(space_->norm(v));
    return out;
  }

  /// Basis of the sublattice spanned by the first k vectors.
  LatticeBasis prefix(std::size_t k) const {
    return LatticeBasis(space_, Mat(vectors_.begin(), vectors_.begin() + static_cast<std::ptrdiff_t>(k)));
  }

  friend bool operator==(const LatticeBasis& a, const LatticeBasis& b) {
    return *a.space_ == *b.space_ && a.vectors_ == b.vectors_;
  }

 private:
  SpacePtr space_;
  Mat vectors_;
};

/// Coefficients of v over the basis in Q_p, or nullopt when v is outside the span.
inline std::optional<Vec> span_coordinates(const LatticeBasis& l, const Vec& v) {
  l.space().check_dim(v);
  return solve_in_span(l.vectors(), v);
}

/// Coefficients of v over the basis when v lies in the lattice.
inline std::optional<Vec> lattice_coordinates(const LatticeBasis& l, const Vec& v) {
  auto c = span_coordinates(l, v);
  if (!c) return std::nullopt;
  for (const auto& x : *c) {
    if (!in_zp(l.prime(), x)) return std::nullopt;
  }
  return c;
}

inline bool contains(const LatticeBasis& l, const Vec& v) { return lattice_coordinates(l, v).has_value(); }

inline std::vector<NormValue> sorted_descending(std::vector<NormValue> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

namespace detail {

// Row state shared by the frame-based orthogonalizer and the CVP/LVP solvers.
// Rows are kept in ambient coordinates, frame coordinates, and as combinations
// of the input basis, all updated together.
class FrameEliminator {
 public:
  explicit FrameEliminator(const LatticeBasis& l)
      : space_(&l.space()), rows_(l.vectors()), transform_(identity(l.rank())) {
    coords_.reserve(rows_.size());
    norms_.reserve(rows_.size());
    for (const auto& r : rows_) {
      coords_.push_back(space_->coordinates(r));
      norms_.push_back(space_->norm_of_coordinates(coords_.back()));
    }
    order_.resize(space_->dim());
    for (std::size_t j = 0; j < order_.size(); ++j) order_[j] = j;
  }

  std::size_t rows() const noexcept { return rows_.size(); }
  const NormValue& norm(std::size_t i) const { return norms_[i]; }
  const Vec& row(std::size_t i) const { return rows_[i]; }
  const Vec& coords(std::size_t i) const { return coords_[i]; }
  const Vec& combination(std::size_t i) const { return transform_[i]; }
  const Mat& basis() const noexcept { return rows_; }
  const std::vector<std::size_t>& frame_order() const noexcept { return order_; }

  /// Moves the longest of rows i..m-1 to position i, keeping the others in order.
  /// Ties go to the lowest index.
  void bring_longest_to(std::size_t i) {
    std::size_t best = i;
    for (std::size_t k = i + 1; k < rows_.size(); ++k) {
      if (norms_[k] > norms_[best]) best = k;
    }
    if (best == i) return;
    const auto first = static_cast<std::ptrdiff_t>(i);
    const auto mid = static_cast<std::ptrdiff_t>(best);
    const auto last = mid + 1;
    std::rotate(rows_.begin() + first, rows_.begin() + mid, rows_.begin() + last);
    std::rotate(coords_.begin() + first, coords_.begin() + mid, coords_.begin() + last);
    std::rotate(norms_.begin() + first, norms_.begin() + mid, norms_.begin() + last);
    std::rotate(transform_.begin() + first, transform_.begin() + mid, transform_.begin() + last);
  }

  /// Chooses frame position i as the axis where row i attains its norm, searching
  /// positions i..n-1 (earlier positions are already zero in row i). Returns
  /// the frame index of the pivot axis.
  std::size_t choose_pivot_axis(std::size_t i) {
    std::size_t best = i;
    NormValue best_norm = space_->axis_norm(order_[i], coords_[i][order_[i]]);
    for (std::size_t q = i + 1; q < order_.size(); ++q) {
      NormValue nq = space_->axis_norm(order_[q], coords_[i][order_[q]]);
      if (nq > best_norm) {
        best = q;
        best_norm = std::move(nq);
      }
    }
    const auto first = static_cast<std::ptrdiff_t>(i);
    std::rotate(order_.begin() + first, order_.begin() + static_cast<std::ptrdiff_t>(best),
                order_.begin() + static_cast<std::ptrdiff_t>(best) + 1);
    return order_[i];
  }

  /// Clears frame axis `axis` in rows i+1..m-1 using row i.
  void eliminate_below(std::size_t i, std::size_t axis) {
    const Rat& pivot = coords_[i][axis];
    for (std::size_t l = i + 1; l < rows_.size(); ++l) {
      if (coords_[l][axis].is_zero()) continue;
      const Rat f = -(coords_[l][axis] / pivot);
      axpy(rows_[l], f, rows_[i]);
      axpy(coords_[l], f, coords_[i]);
      axpy(transform_[l], f, transform_[i]);
      norms_[l] = space_->norm_of_coordinates(coords_[l]);
    }
  }

  /// Coefficients in the permuted frame order; upper triangular after a full run.
  Mat permuted_coordinates() const {
    Mat out;
    out.reserve(rows_.size());
    for (const auto& c : coords_) {
      Vec r;
      r.reserve(order_.size());
      for (std::size_t q : order_) r.push_back(c[q]);
      out.push_back(std::move(r));
    }
    return out;
  }

 private:
  const NormedSpace* space_;
  Mat rows_;
  Mat coords_;
  std::vector<NormValue> norms_;
  Mat transform_;
  std::vector<std::size_t> order_;
};

}  // namespace detail

struct FrameOrthogonalization {
  LatticeBasis basis;
  /// frame_order[q] is the frame axis placed at position q.
  std::vector<std::size_t> frame_order;
  /// Coefficients of the output basis over the permuted frame; upper triangular.
  Mat triangular;
};

/// Orthogonalizes a lattice basis by elimination in the coordinates of the
/// space's orthogonal frame. Output norms are non-increasing.
inline FrameOrthogonalization orthogonalize_with_frame_detailed(const LatticeBasis& l) {
  detail::FrameEliminator el(l);
  for (std::size_t i = 0; i < el.rows(); ++i) {
    el.bring_longest_to(i);
    const std::size_t axis = el.choose_pivot_axis(i);
    el.eliminate_below(i, axis);
  }
  return {LatticeBasis(l.space_ptr(), el.basis()), el.frame_order(), el.permuted_coordinates()};
}

inline LatticeBasis orthogonalize_with_frame(const LatticeBasis& l) {
  return orthogonalize_with_frame_detailed(l).basis;
}

/// Sorted norms of any orthogonal basis of the lattice, largest first.
inline std::vector<NormValue> successive_maxima(const LatticeBasis& l) {
  return sorted_descending(orthogonalize_with_frame(l).norms());
}

/// Minimum distance from a full-rank lattice to a point outside it: p times
/// the smallest successive maximum.
inline NormValue escape_distance_from_maxima(const std::vector<NormValue>& maxima) {
  return maxima.back().scaled(-1);
}

inline NormValue escape_distance(const LatticeBasis& l) {
  if (!l.full_rank()) {
    throw RankError("escape distance needs a full-rank lattice (rank " + std::to_string(l.rank()) +
                    " in dimension " + std::to_string(l.dim()) + ")");
  }
  return escape_distance_from_maxima(successive_maxima(l));
}

/// The k largest distinct values of {p^-i * maxima_j : i >= 0}.
inline std::vector<NormValue> ladder_from_maxima(const std::vector<NormValue>& maxima, std::size_t k) {
  std::vector<NormValue> all;
  all.reserve(maxima.size() * k);
  for (const auto& m : maxima) {
    for (std::size_t i = 0; i < k; ++i) all.push_back(m.scaled(static_cast<long>(i)));
  }
  std::sort(all.begin(), all.end(), std::greater<>());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  if (all.size() > k) all.resize(k);
  return all;
}

/// First k values of the strictly decreasing sequence of lattice norms.
inline std::vector<NormValue> lambda_ladder(const LatticeBasis& l, std::size_t k) {
  if (k == 0) throw InvalidParameter("ladder length must be at least 1");
  return ladder_from_maxima(successive_maxima(l), k);
}

/// True iff the input norms, sorted, equal the successive maxima.
inline bool is_orthogonal_basis(const LatticeBasis& l) {
  return sorted_descending(l.norms()) == successive_maxima(l);
}

/// C with b = C * a, or nullopt when some row of b lies outside span(a).
inline std::optional<Mat> change_of_basis(const LatticeBasis& a, const LatticeBasis& b) {
  if (!(a.space() == b.space()) || a.rank() != b.rank()) {
    throw InvalidParameter("change of basis needs bases of equal rank in the same space");
  }
  Mat c;
  c.reserve(b.rank());
  for (const auto& row : b.vectors()) {
    auto x = span_coordinates(a, row);
    if (!x) return std::nullopt;
    c.push_back(std::move(*x));
  }
  return c;
}

/// True iff both bases generate the same Z_p-lattice.
inline bool same_lattice(const LatticeBasis& a, const LatticeBasis& b) {
  const auto c = change_of_basis(a, b);
  if (!c) return false;
  for (const auto& row : *c) {
    for (const auto& x : row) {
      if (!in_zp(a.prime(), x)) return false;
    }
  }
  return is_unit(a.prime(), determinant(*c));
}

/// Successive maxima, escape distance (full rank only) and a prefix of the
/// norm ladder.
struct InvariantReport {
  std::vector<NormValue> maxima;
  std::optional<NormValue> escape;
  std::vector<NormValue> ladder;

  friend bool operator==(const InvariantReport&, const InvariantReport&) = default;
};

inline InvariantReport report_from_maxima(std::vector<NormValue> maxima, bool full_rank, std::size_t ladder_len) {
  InvariantReport r;
  r.maxima = sorted_descending(std::move(maxima));
  if (full_rank) r.escape = escape_distance_from_maxima(r.maxima);
  r.ladder = ladder_from_maxima(r.maxima, ladder_len);
  return r;
}

inline InvariantReport compute_invariants(const LatticeBasis& l, std::size_t ladder_len = 5) {
  if (ladder_len == 0) throw InvalidParameter("ladder length must be at least 1");
  return report_from_maxima(successive_maxima(l), l.full_rank(), ladder_len);
}

inline std::string join_norms(Prime p, const std::vector<NormValue>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ' ';
    out += values[i].str(p);
  }
  return out;
}

/// Canonical three-line text block.
inline std::string format_report(Prime p, const InvariantReport& r) {
  std::ostringstream os;
  os << "lambda~: " << join_norms(p, r.maxima) << '\n';
  os << "mu: " << (r.escape ? r.escape->str(p) : std::string("undefined: not full rank")) << '\n';
  os << "ladder: " << join_norms(p, r.ladder) << '\n';
  return os.str();
}

}  // namespace padic
