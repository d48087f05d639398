#pragma once

// Elementary operations between orthogonal bases of one lattice: unit
// scaling, swapping, and shears alpha_i += k alpha_j with k in Z_p and
// N(k alpha_j) <= N(alpha_i).

#include <cstddef>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "padic_lattice/errors.hpp"
#include "padic_lattice/lattice.hpp"

namespace padic {

struct ScaleUnit {
  std::size_t i;
  Rat k;
  friend bool operator==(const ScaleUnit&, const ScaleUnit&) = default;
};

struct Swap {
  std::size_t i;
  std::size_t j;
  friend bool operator==(const Swap&, const Swap&) = default;
};

struct AddMultiple {
  std::size_t i;
  std::size_t j;
  Rat k;
  friend bool operator==(const AddMultiple&, const AddMultiple&) = default;
};

using ElementaryOp = std::variant<ScaleUnit, Swap, AddMultiple>;

inline std::string to_string(const ElementaryOp& op) {
  return std::visit(
      [](const auto& o) -> std::string {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, ScaleUnit>) {
          return "scale(" + std::to_string(o.i) + ", " + o.k.str() + ")";
        } else if constexpr (std::is_same_v<T, Swap>) {
          return "swap(" + std::to_string(o.i) + ", " + std::to_string(o.j) + ")";
        } else {
          return "add(" + std::to_string(o.i) + ", " + std::to_string(o.j) + ", " + o.k.str() + ")";
        }
      },
      op);
}

enum class OpCheck {
  /// Unit scaling, Z_p multipliers, and the norm bound on shears.
  Full,
  /// Only what keeps the lattice unchanged: unit scaling and Z_p multipliers.
  LatticeOnly,
};

namespace detail {

inline void check_index(std::size_t at, std::size_t i, std::size_t m) {
  if (i >= m) throw InvalidOperation(at, "row index " + std::to_string(i) + " out of range");
}

// Applies op to rows in place; `at` is the op's position for error messages.
inline void apply_op(const NormedSpace& s, Mat& rows, const ElementaryOp& op, std::size_t at, OpCheck check) {
  const Prime p = s.prime();
  const std::size_t m = rows.size();
  if (const auto* sc = std::get_if<ScaleUnit>(&op)) {
    check_index(at, sc->i, m);
    if (!is_unit(p, sc->k)) throw InvalidOperation(at, "scale factor " + sc->k.str() + " is not a p-adic unit");
    for (auto& x : rows[sc->i]) x *= sc->k;
  } else if (const auto* sw = std::get_if<Swap>(&op)) {
    check_index(at, sw->i, m);
    check_index(at, sw->j, m);
    std::swap(rows[sw->i], rows[sw->j]);
  } else {
    const auto& ad = std::get<AddMultiple>(op);
    check_index(at, ad.i, m);
    check_index(at, ad.j, m);
    if (ad.i == ad.j) throw InvalidOperation(at, "shear needs two distinct rows");
    if (!in_zp(p, ad.k)) throw InvalidOperation(at, "multiplier " + ad.k.str() + " is not in Z_p");
    if (check == OpCheck::Full) {
      const NormValue moved = s.norm(rows[ad.j]).times_abs(p, ad.k);
      const NormValue target = s.norm(rows[ad.i]);
      if (moved > target) {
        throw InvalidOperation(at, "N(k*row" + std::to_string(ad.j) + ") = " + moved.str(p) + " exceeds N(row" +
                                       std::to_string(ad.i) + ") = " + target.str(p));
      }
    }
    axpy(rows[ad.i], ad.k, rows[ad.j]);
  }
}

}  // namespace detail

inline LatticeBasis apply_ops(const LatticeBasis& b, const std::vector<ElementaryOp>& ops,
                              OpCheck check = OpCheck::Full) {
  Mat rows = b.vectors();
  for (std::size_t at = 0; at < ops.size(); ++at) detail::apply_op(b.space(), rows, ops[at], at, check);
  return LatticeBasis(b.space_ptr(), std::move(rows));
}

/// A transcript of elementary operations turning `from` into `to`, where both
/// are orthogonal bases of the same lattice. Every operation is checked
/// against its constraint as it is recorded.
///
/// Works on the matrix A with from = A * to. Target vectors are taken in order
/// of decreasing norm; for each one a remaining row with a unit entry in that
/// column and norm equal to the target's is used to clear the column from
/// every other row. Such a row always exists because the unprocessed block of
/// A stays invertible over Z_p, and the norm equality makes every clearing
/// shear satisfy its bound. What remains is a scaled permutation, fixed up by
/// unit scalings and swaps.
inline std::vector<ElementaryOp> elementary_transform(const LatticeBasis& from, const LatticeBasis& to) {
  if (!(from.space() == to.space()) || from.rank() != to.rank()) {
    throw PreconditionError("bases must have equal rank in the same space");
  }
  if (!is_orthogonal_basis(from)) throw PreconditionError("source basis is not orthogonal");
  if (!is_orthogonal_basis(to)) throw PreconditionError("target basis is not orthogonal");
  if (!same_lattice(from, to)) throw PreconditionError("bases generate different lattices");

  const NormedSpace& s = from.space();
  const Prime p = s.prime();
  const std::size_t m = from.rank();
  Mat a = *change_of_basis(to, from);  // from = a * to
  Mat rows = from.vectors();
  std::vector<ElementaryOp> ops;

  auto record = [&](ElementaryOp op) {
    detail::apply_op(s, rows, op, ops.size(), OpCheck::Full);
    // Mirror the row operation on the coefficient matrix.
    if (const auto* sc = std::get_if<ScaleUnit>(&op)) {
      for (auto& x : a[sc->i]) x *= sc->k;
    } else if (const auto* sw = std::get_if<Swap>(&op)) {
      std::swap(a[sw->i], a[sw->j]);
    } else {
      const auto& ad = std::get<AddMultiple>(op);
      axpy(a[ad.i], ad.k, a[ad.j]);
    }
    ops.push_back(std::move(op));
  };

  const std::vector<NormValue> target_norms = to.norms();
  std::vector<std::size_t> columns(m);
  for (std::size_t j = 0; j < m; ++j) columns[j] = j;
  std::stable_sort(columns.begin(), columns.end(),
                   [&](std::size_t x, std::size_t y) { return target_norms[x] > target_norms[y]; });

  std::vector<bool> assigned(m, false);
  std::vector<std::size_t> pivot_row_of(m);
  for (std::size_t col : columns) {
    std::size_t pivot = m;
    for (std::size_t r = 0; r < m && pivot == m; ++r) {
      if (!assigned[r] && is_unit(p, a[r][col]) && s.norm(rows[r]) == target_norms[col]) pivot = r;
    }
    if (pivot == m) throw PreconditionError("no admissible pivot; bases are not orthogonal bases of one lattice");
    assigned[pivot] = true;
    pivot_row_of[col] = pivot;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == pivot || a[r][col].is_zero()) continue;
      record(AddMultiple{r, pivot, -(a[r][col] / a[pivot][col])});
    }
  }

  for (std::size_t col = 0; col < m; ++col) {
    const std::size_t r = pivot_row_of[col];
    if (a[r][col] != Rat(1)) record(ScaleUnit{r, Rat(1) / a[r][col]});
  }
  // Selection sort of rows into target order using swaps.
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t r = col;
    while (a[r][col].is_zero()) ++r;
    if (r != col) record(Swap{col, r});
  }

  if (rows != to.vectors()) throw Error("internal: transcript replay does not reach the target basis");
  return ops;
}

}  // namespace padic
