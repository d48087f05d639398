#pragma once

// Test-only brute-force oracles. They use nothing but norm evaluation and
// enumeration, never the orthogonalizer.

#include <algorithm>
#include <set>
#include <vector>

#include "padic_lattice/padic_lattice.hpp"

namespace padic::testing {

inline NormValue max_basis_norm(const LatticeBasis& l) {
  const auto n = l.norms();
  return *std::max_element(n.begin(), n.end());
}

/// Distinct norms of nonzero lattice vectors strictly above p^-K * lambda_1,
/// largest first. Every such norm is attained by a coefficient tuple in
/// [0, p^K)^m, since the remaining part has norm at most p^-K * lambda_1.
inline std::vector<NormValue> brute_norms_above(const LatticeBasis& l, long k) {
  const NormedSpace& s = l.space();
  const Prime p = l.prime();
  const NormValue lambda1 = max_basis_norm(l);
  const NormValue floor = lambda1.scaled(k);
  const auto radix = static_cast<unsigned long>(pow_p(p, k).num_ref().get_ui());
  Mat steps;
  for (const auto& v : l.vectors()) steps.push_back(s.coordinates(v));
  detail::Odometer odo(l.rank(), radix, zero_vec(s.dim()), steps);
  std::set<NormValue, std::greater<>> seen;
  while (odo.next()) {
    NormValue n = s.norm_of_coordinates(odo.current());
    if (n > floor) seen.insert(std::move(n));
  }
  return {seen.begin(), seen.end()};
}

/// Escape distance by brute force: min over j of dist(p^-1 beta_j, L) for a
/// known orthogonal basis beta, each distance computed by exhaustive CVP.
inline NormValue brute_escape(const LatticeBasis& l, const Mat& orthogonal_basis) {
  const Rat inv_p = Rat(1) / Rat(static_cast<long>(l.prime().value()));
  std::optional<NormValue> best;
  for (const auto& b : orthogonal_basis) {
    NormValue d = brute_cvp(l, inv_p * b).distance;
    if (!best || d < *best) best = std::move(d);
  }
  return *best;
}

}  // namespace padic::testing
