#pragma once

// Seeded instance generator. A lattice is built diagonally over the frame,
// p^d_i * e_sigma(i), so its successive maxima are known exactly, and is then
// re-based by random elementary operations.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "padic_lattice/errors.hpp"
#include "padic_lattice/lattice.hpp"
#include "padic_lattice/transform.hpp"

namespace padic {

/// std::mt19937_64 output is fixed by the standard, so draws are reproducible
/// across platforms as long as we avoid the std distributions.
using Rng = std::mt19937_64;

inline long draw(Rng& rng, long lo, long hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long>(rng() % span);
}

inline bool coin(Rng& rng) { return (rng() & 1u) != 0; }

/// Random a/b with p dividing neither, |a|, b <= 3p.
inline Rat random_unit(Prime p, Rng& rng) {
  const long bound = 3 * static_cast<long>(p.value());
  auto pick = [&] {
    long x = 0;
    do x = draw(rng, 1, bound);
    while (x % p.value() == 0);
    return x;
  };
  const long a = pick();
  const long b = coin(rng) ? 1 : pick();
  return Rat(mpz_class(coin(rng) ? -a : a), mpz_class(b));
}

/// Random nonzero element of valuation exactly v.
inline Rat random_with_valuation(Prime p, long v, Rng& rng) { return pow_p(p, v) * random_unit(p, rng); }

/// Random element of Z_p with valuation at least v (possibly zero).
inline Rat random_zp_multiple(Prime p, long v, Rng& rng) {
  if (draw(rng, 0, 5) == 0) return Rat(0);
  return random_with_valuation(p, std::max(0L, v) + draw(rng, 0, 2), rng);
}

/// Random operations on `b`, each admissible for the basis it is applied to.
/// With OpCheck::Full shears respect the norm bound, so an orthogonal basis
/// stays orthogonal; with OpCheck::LatticeOnly any Z_p shear is allowed.
inline std::vector<ElementaryOp> random_ops(const LatticeBasis& b, std::size_t count, Rng& rng,
                                            OpCheck check = OpCheck::Full) {
  const NormedSpace& s = b.space();
  const Prime p = s.prime();
  const std::size_t m = b.rank();
  Mat rows = b.vectors();
  std::vector<ElementaryOp> ops;
  for (std::size_t t = 0; t < count; ++t) {
    const long kind = m == 1 ? 0 : draw(rng, 0, 3);
    ElementaryOp op;
    if (kind == 0) {
      op = ScaleUnit{static_cast<std::size_t>(draw(rng, 0, static_cast<long>(m) - 1)), random_unit(p, rng)};
    } else if (kind == 1) {
      const auto i = static_cast<std::size_t>(draw(rng, 0, static_cast<long>(m) - 1));
      const auto j = static_cast<std::size_t>(draw(rng, 0, static_cast<long>(m) - 1));
      op = Swap{i, j};
    } else {
      const auto i = static_cast<std::size_t>(draw(rng, 0, static_cast<long>(m) - 1));
      auto j = static_cast<std::size_t>(draw(rng, 0, static_cast<long>(m) - 2));
      if (j >= i) ++j;
      long min_val = 0;
      if (check == OpCheck::Full) {
        // N(k a_j) = p^-v(k) N(a_j) <= N(a_i) needs v(k) >= e_j - e_i.
        const Rat gap = s.norm(rows[j]).exponent() - s.norm(rows[i]).exponent();
        min_val = std::max(0L, static_cast<long>(gap.ceil().get_si()));
      }
      op = AddMultiple{i, j, random_zp_multiple(p, min_val, rng)};
    }
    detail::apply_op(s, rows, op, t, check);
    ops.push_back(std::move(op));
  }
  return ops;
}

struct WeightSpec {
  enum class Kind {
    Zero,
    /// Integers in [lo, hi].
    Integer,
    /// Multiples of 1/2 in [lo, hi]; a ramified-type norm.
    Half,
  };
  Kind kind = Kind::Zero;
  long lo = 0;
  long hi = 0;
};

struct GenParams {
  std::int64_t p = 2;
  std::size_t dim = 2;
  std::size_t rank = 2;
  WeightSpec weights;
  /// Range of the diagonal exponents d_i.
  long val_lo = 0;
  long val_hi = 3;
  std::uint64_t seed = 1;
  bool random_frame = false;
  /// Number of re-basing operations; defaults to 3 * rank when unset.
  std::optional<std::size_t> scramble_ops;
  /// Full keeps the basis orthogonal; LatticeOnly mixes with arbitrary Z_p shears.
  OpCheck scramble = OpCheck::LatticeOnly;
  bool with_target = false;
  std::size_t ladder_len = 5;
};

struct GeneratedInstance {
  SpacePtr space;
  /// Orthogonal diagonal basis before re-basing.
  LatticeBasis diagonal;
  LatticeBasis basis;
  std::optional<Vec> target;
  InvariantReport truth;
};

inline GeneratedInstance gen_instance(const GenParams& g) {
  const Prime p(g.p);
  if (g.dim == 0 || g.rank == 0 || g.rank > g.dim) {
    throw InvalidParameter("need 1 <= rank <= dim, got rank " + std::to_string(g.rank) + " dim " +
                           std::to_string(g.dim));
  }
  if (g.val_lo > g.val_hi || g.weights.lo > g.weights.hi) throw InvalidParameter("empty range");
  Rng rng(g.seed);
  const std::size_t n = g.dim;

  Mat frame = identity(n);
  if (g.random_frame) {
    do {
      for (auto& row : frame)
        for (auto& x : row) x = Rat(draw(rng, -2, 2));
    } while (determinant(frame).is_zero());
  }

  std::vector<Rat> weights(n, Rat(0));
  for (auto& w : weights) {
    switch (g.weights.kind) {
      case WeightSpec::Kind::Zero:
        break;
      case WeightSpec::Kind::Integer:
        w = Rat(draw(rng, g.weights.lo, g.weights.hi));
        break;
      case WeightSpec::Kind::Half:
        w = Rat(mpz_class(draw(rng, 2 * g.weights.lo, 2 * g.weights.hi)), mpz_class(2));
        break;
    }
  }
  auto space = std::make_shared<const NormedSpace>(p, frame, weights);

  std::vector<std::size_t> axes(n);
  for (std::size_t j = 0; j < n; ++j) axes[j] = j;
  for (std::size_t j = n; j > 1; --j) {
    std::swap(axes[j - 1], axes[static_cast<std::size_t>(draw(rng, 0, static_cast<long>(j) - 1))]);
  }

  Mat diag;
  std::vector<NormValue> maxima;
  for (std::size_t i = 0; i < g.rank; ++i) {
    const long d = draw(rng, g.val_lo, g.val_hi);
    const std::size_t axis = axes[i];
    diag.push_back(pow_p(p, d) * frame[axis]);
    maxima.push_back(NormValue::exp(weights[axis] - Rat(d)));
  }
  LatticeBasis diagonal(space, diag);

  const std::size_t count = g.scramble_ops.value_or(3 * g.rank);
  LatticeBasis basis = apply_ops(diagonal, random_ops(diagonal, count, rng, g.scramble), g.scramble);

  std::optional<Vec> target;
  if (g.with_target) {
    Vec t = zero_vec(n);
    for (auto& x : t) {
      if (draw(rng, 0, 4) != 0) x = random_with_valuation(p, draw(rng, g.val_lo, g.val_hi), rng);
    }
    target = std::move(t);
  }

  InvariantReport truth = report_from_maxima(std::move(maxima), g.rank == n, g.ladder_len);
  return {std::move(space), std::move(diagonal), std::move(basis), std::move(target), std::move(truth)};
}

}  // namespace padic
