#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "padic_lattice/errors.hpp"
#include "padic_lattice/lattice.hpp"

namespace padic {

/// A closest lattice vector to some target.
struct CvpSolution {
  Vec vector;
  /// vector = sum coefficients_i * basis_i, each coefficient in Z_p.
  Vec coefficients;
  /// N(target - vector).
  NormValue distance;
};

/// A lattice vector whose norm is lambda_2, the largest norm below lambda_1.
struct LvpSolution {
  Vec vector;
  Vec coefficients;
  NormValue norm;
};

/// Closest vector via elimination in frame coordinates. Only the distance is
/// unique; the vector is one minimizer.
inline CvpSolution cvp_with_frame(const LatticeBasis& l, const Vec& target) {
  const NormedSpace& s = l.space();
  s.check_dim(target);
  detail::FrameEliminator el(l);
  Vec residual = target;
  Vec residual_coords = s.coordinates(target);
  NormValue residual_norm = s.norm_of_coordinates(residual_coords);
  Vec v = zero_vec(l.dim());
  Vec coeffs = zero_vec(l.rank());

  for (std::size_t i = 0; i < el.rows(); ++i) {
    el.bring_longest_to(i);
    if (residual_norm > el.norm(i)) break;
    const std::size_t axis = el.choose_pivot_axis(i);
    const Rat q = residual_coords[axis] / el.coords(i)[axis];
    if (!q.is_zero()) {
      axpy(residual, -q, el.row(i));
      axpy(residual_coords, -q, el.coords(i));
      axpy(v, q, el.row(i));
      axpy(coeffs, q, el.combination(i));
      residual_norm = s.norm_of_coordinates(residual_coords);
    }
    if (residual_norm.is_zero()) break;
    el.eliminate_below(i, axis);
  }
  return {std::move(v), std::move(coeffs), std::move(residual_norm)};
}

/// Longest-vector problem: a vector of norm lambda_2.
///
/// Runs the frame elimination only until the first strict norm drop. If the
/// lattice has no drop (all successive maxima equal) the answer is p * alpha_1.
inline LvpSolution lvp_with_frame(const LatticeBasis& l) {
  const NormedSpace& s = l.space();
  const Rat p(static_cast<long>(s.prime().value()));
  detail::FrameEliminator el(l);
  std::optional<std::size_t> drop;
  for (std::size_t i = 0; i < el.rows(); ++i) {
    el.bring_longest_to(i);
    if (i > 0 && el.norm(i - 1) > el.norm(i)) {
      drop = i;
      break;
    }
    el.eliminate_below(i, el.choose_pivot_axis(i));
  }
  const NormValue scaled_first = el.norm(0).scaled(1);
  if (drop && !(scaled_first > el.norm(*drop))) {
    return {el.row(*drop), el.combination(*drop), el.norm(*drop)};
  }
  return {p * el.row(0), p * el.combination(0), scaled_first};
}

using CvpOracle = std::function<CvpSolution(const LatticeBasis&, const Vec&)>;

/// One CVP reduction inside orthogonalize_via_cvp.
struct CvpReductionStep {
  std::size_t sublattice_rank;
  Vec before;
  NormValue distance;
  NormValue after;
};

struct CvpOrthogonalization {
  LatticeBasis basis;
  std::size_t oracle_calls = 0;
  std::vector<CvpReductionStep> steps;
};

/// Orthogonalizes using only a CVP oracle: each round fixes the longest
/// remaining vector, then replaces every later vector by its difference with
/// the closest point of the lattice spanned by the fixed prefix.
inline CvpOrthogonalization orthogonalize_via_cvp_detailed(const LatticeBasis& basis, const CvpOracle& cvp) {
  const NormedSpace& s = basis.space();
  const Prime p = s.prime();
  Mat rows = basis.vectors();
  std::vector<NormValue> norms = basis.norms();
  CvpOrthogonalization out{basis, 0, {}};
  const std::size_t m = rows.size();

  for (std::size_t i = 0; i < m; ++i) {
    std::size_t best = i;
    for (std::size_t k = i + 1; k < m; ++k) {
      if (norms[k] > norms[best]) best = k;
    }
    std::rotate(rows.begin() + static_cast<std::ptrdiff_t>(i), rows.begin() + static_cast<std::ptrdiff_t>(best),
                rows.begin() + static_cast<std::ptrdiff_t>(best) + 1);
    std::rotate(norms.begin() + static_cast<std::ptrdiff_t>(i), norms.begin() + static_cast<std::ptrdiff_t>(best),
                norms.begin() + static_cast<std::ptrdiff_t>(best) + 1);
    if (i + 1 == m) break;

    const LatticeBasis prefix(basis.space_ptr(), Mat(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(i) + 1));
    for (std::size_t j = i + 1; j < m; ++j) {
      CvpSolution sol = cvp(prefix, rows[j]);
      ++out.oracle_calls;
      if (sol.coefficients.size() != prefix.rank() ||
          row_combination(sol.coefficients, prefix.vectors(), s.dim()) != sol.vector) {
        throw Error("CVP oracle returned inconsistent coefficients");
      }
      for (const auto& c : sol.coefficients) {
        if (!in_zp(p, c)) throw Error("CVP oracle returned a vector outside the lattice");
      }
      CvpReductionStep step{i + 1, rows[j], sol.distance, NormValue()};
      rows[j] = rows[j] - sol.vector;
      norms[j] = s.norm(rows[j]);
      step.after = norms[j];
      out.steps.push_back(std::move(step));
    }
  }
  out.basis = LatticeBasis(basis.space_ptr(), std::move(rows));
  return out;
}

inline LatticeBasis orthogonalize_via_cvp(const LatticeBasis& basis, const CvpOracle& cvp) {
  return orthogonalize_via_cvp_detailed(basis, cvp).basis;
}

inline constexpr std::uint64_t kDefaultOracleBudget = 10'000'000;

namespace detail {

// Mixed-radix odometer over [0, radix)^m, carrying a running vector
// base + sum digit_i * step_i.
class Odometer {
 public:
  Odometer(std::size_t m, unsigned long radix, Vec base, Mat steps)
      : digits_(m, 0), radix_(radix), current_(std::move(base)), steps_(std::move(steps)) {
    wrap_.reserve(steps_.size());
    const Rat back(static_cast<long>(radix_ - 1));
    for (const auto& st : steps_) wrap_.push_back(back * st);
  }

  const std::vector<unsigned long>& digits() const noexcept { return digits_; }
  const Vec& current() const noexcept { return current_; }

  /// Advances to the next tuple; false after the last one (state wraps to zero).
  bool next() {
    for (std::size_t i = digits_.size(); i-- > 0;) {
      if (digits_[i] + 1 < radix_) {
        ++digits_[i];
        axpy(current_, Rat(1), steps_[i]);
        return true;
      }
      digits_[i] = 0;
      axpy(current_, Rat(-1), wrap_[i]);
    }
    return false;
  }

 private:
  std::vector<unsigned long> digits_;
  unsigned long radix_;
  Vec current_;
  Mat steps_;
  Mat wrap_;
};

inline bool lex_less(const Vec& a, const Vec& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

inline NormValue longest_basis_norm(const LatticeBasis& l) {
  NormValue best;
  for (auto& n : l.norms()) {
    if (n > best) best = n;
  }
  return best;
}

}  // namespace detail

namespace detail {

/// Residue-class search on a fixed basis b_1..b_m of L.
///
/// With s_i = floor(log_p(lambda_1 / N(b_i))) the classes at level k are
/// cosets of M_k = sum p^max(0, k - s_i) Z_p b_i, so a coefficient is only
/// branched on once its vector reaches the current scale. Generators of M_k
/// all have norm <= p^-k * lambda_1. A class whose residual t - w exceeds that
/// bound has the same distance for every member and is final; the others are
/// refined. No class is left open once p^-k * lambda_1 drops below the true
/// distance, so the search ends.
inline CvpSolution enumerate_cvp(const LatticeBasis& l, const Vec& target, std::uint64_t budget,
                                 std::uint64_t& visited) {
  const NormedSpace& s = l.space();
  const std::size_t m = l.rank();
  const Prime p = l.prime();

  Mat basis_coords;
  for (const auto& v : l.vectors()) basis_coords.push_back(s.coordinates(v));
  const NormValue lambda1 = longest_basis_norm(l);
  std::vector<long> shift(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Rat gap = lambda1.exponent() - l.norms()[i].exponent();
    shift[i] = -Rat(-gap).ceil().get_si();
  }

  struct Open {
    Vec coeffs;
    Vec residual;  // frame coordinates of target - sum coeffs_i b_i
  };
  std::optional<CvpSolution> best;
  auto offer = [&](const Vec& coeffs, NormValue dist) {
    if (!best || dist < best->distance || (dist == best->distance && lex_less(coeffs, best->coefficients))) {
      best = CvpSolution{Vec(), coeffs, std::move(dist)};
    }
  };

  std::vector<Open> open;
  {
    Vec root = s.coordinates(target);
    NormValue n = s.norm_of_coordinates(root);
    if (n > lambda1) {
      offer(zero_vec(m), n);
    } else {
      open.push_back({zero_vec(m), std::move(root)});
    }
  }

  for (long level = 0; !open.empty(); ++level) {
    const NormValue bound = lambda1.scaled(level + 1);
    std::vector<std::size_t> active;
    std::vector<Rat> unit;
    Mat steps;
    for (std::size_t i = 0; i < m; ++i) {
      if (shift[i] > level) continue;
      active.push_back(i);
      unit.push_back(pow_p(p, level - shift[i]));
      steps.push_back(-unit.back() * basis_coords[i]);
    }
    std::vector<Open> next;
    for (const auto& node : open) {
      Odometer odo(active.size(), p.as_ulong(), node.residual, steps);
      do {
        if (++visited > budget) {
          throw BudgetExceeded("CVP enumeration exceeded " + std::to_string(budget) + " nodes at depth " +
                               std::to_string(level + 1) + (best ? ", best distance so far " + best->distance.str(p) : ""));
        }
        Vec coeffs = node.coeffs;
        for (std::size_t a = 0; a < active.size(); ++a) {
          coeffs[active[a]] += unit[a] * Rat(static_cast<long>(odo.digits()[a]));
        }
        NormValue n = s.norm_of_coordinates(odo.current());
        if (n > bound) {
          offer(coeffs, std::move(n));
        } else {
          next.push_back({std::move(coeffs), odo.current()});
        }
      } while (odo.next());
    }
    open = std::move(next);
  }
  return std::move(*best);
}

inline CvpSolution brute_cvp_counted(const LatticeBasis& l, const Vec& target, std::uint64_t budget,
                                     std::uint64_t& visited) {
  l.space().check_dim(target);
  if (auto c = lattice_coordinates(l, target)) return {target, std::move(*c), NormValue::zero()};

  // Any basis of L gives a valid search; a near-orthogonal one keeps at most a
  // handful of classes open per level. It is built by the CVP-oracle reduction
  // with this same search on lower ranks, never by the frame code.
  LatticeBasis search = l;
  if (l.rank() > 1) {
    const CvpOracle inner = [&](const LatticeBasis& sub, const Vec& t) {
      return brute_cvp_counted(sub, t, budget, visited);
    };
    LatticeBasis reduced = orthogonalize_via_cvp(l, inner);
    if (same_lattice(l, reduced)) search = std::move(reduced);
  }
  CvpSolution sol = enumerate_cvp(search, target, budget, visited);
  if (!(search == l)) {
    const Mat change = *change_of_basis(l, search);
    sol.coefficients = row_combination(sol.coefficients, change, l.rank());
  }
  sol.vector = row_combination(sol.coefficients, l.vectors(), l.dim());
  return sol;
}

}  // namespace detail

/// Exhaustive CVP over coefficient residue classes, used as an independent
/// check of cvp_with_frame. Exceeding the node budget throws BudgetExceeded.
inline CvpSolution brute_cvp(const LatticeBasis& l, const Vec& target,
                             std::uint64_t budget = kDefaultOracleBudget) {
  std::uint64_t visited = 0;
  return detail::brute_cvp_counted(l, target, budget, visited);
}

/// Exhaustive LVP over coefficients in [0, p^2)^m.
///
/// lambda_2 >= lambda_1 / p because p * alpha is in L for a longest basis
/// vector alpha. Any lattice norm above lambda_1 / p^2 is already attained by
/// the representative mod p^2 of its coefficient vector, so the largest
/// enumerated norm strictly below lambda_1 is lambda_2.
inline LvpSolution brute_lambda2(const LatticeBasis& l) {
  const NormedSpace& s = l.space();
  const std::size_t m = l.rank();
  const Prime p = l.prime();
  const unsigned long radix = p.as_ulong() * p.as_ulong();
  const NormValue lambda1 = detail::longest_basis_norm(l);

  Mat steps;
  for (const auto& v : l.vectors()) steps.push_back(s.coordinates(v));
  detail::Odometer odo(m, radix, zero_vec(s.dim()), steps);

  std::optional<NormValue> best;
  std::vector<unsigned long> best_digits;
  while (odo.next()) {
    NormValue n = s.norm_of_coordinates(odo.current());
    if (!(n < lambda1)) continue;
    if (!best || n > *best) {
      best = std::move(n);
      best_digits = odo.digits();
    }
  }
  if (!best) throw Error("internal: no lattice norm below lambda_1 found");
  Vec coeffs;
  for (auto d : best_digits) coeffs.push_back(Rat(static_cast<long>(d)));
  Vec v = row_combination(coeffs, l.vectors(), l.dim());
  return {std::move(v), std::move(coeffs), std::move(*best)};
}

}  // namespace padic
