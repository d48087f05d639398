#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "padic_lattice/errors.hpp"
#include "padic_lattice/linalg.hpp"
#include "padic_lattice/rational.hpp"

namespace padic {

/// A norm magnitude: either zero or p^e for a rational exponent e.
/// The prime is carried by the space, not by the value.
class NormValue {
 public:
  NormValue() = default;  // zero
  static NormValue zero() { return NormValue(); }
  static NormValue exp(Rat e) { return NormValue(std::move(e)); }

  bool is_zero() const noexcept { return !exponent_.has_value(); }
  /// Only valid when nonzero.
  const Rat& exponent() const { return *exponent_; }

  /// Multiplies by p^(-k), i.e. the norm of p^k times a vector of this norm.
  NormValue scaled(long k) const {
    if (is_zero()) return *this;
    return exp(*exponent_ - Rat(k));
  }

  /// Multiplies by |x|_p.
  NormValue times_abs(Prime p, const Rat& x) const {
    const Valuation v = valuation(p, x);
    if (is_zero() || v.is_infinite()) return zero();
    return scaled(v.value());
  }

  friend bool operator==(const NormValue& a, const NormValue& b) = default;
  friend std::strong_ordering operator<=>(const NormValue& a, const NormValue& b) {
    if (a.is_zero() || b.is_zero()) {
      if (a.is_zero() && b.is_zero()) return std::strong_ordering::equal;
      return a.is_zero() ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return *a.exponent_ <=> *b.exponent_;
  }

  /// "0" or "p^e".
  std::string str(Prime p) const {
    if (is_zero()) return "0";
    return std::to_string(p.value()) + "^" + exponent_->str();
  }

  /// Inverse of str(); the prime in the text must match p.
  static NormValue parse(Prime p, const std::string& text) {
    if (text == "0") return zero();
    const auto caret = text.find('^');
    if (caret == std::string::npos || text.substr(0, caret) != std::to_string(p.value())) {
      throw InvalidParameter("malformed norm value \"" + text + "\"");
    }
    return exp(Rat::parse(text.substr(caret + 1)));
  }

 private:
  explicit NormValue(Rat e) : exponent_(std::move(e)) {}
  std::optional<Rat> exponent_;
};

/// Multiplying a vector by p^k divides its norm by p^k.
inline NormValue scale_norm(const NormValue& nv, Prime /*p*/, long k) { return nv.scaled(k); }

/// A norm on Q_p^n presented by an orthogonal frame e_1..e_n with
/// N(e_i) = p^(w_i); then N(sum a_i e_i) = max_i |a_i|_p p^(w_i).
class NormedSpace {
 public:
  NormedSpace(Prime p, Mat frame, std::vector<Rat> weights)
      : p_(p), frame_(std::move(frame)), weights_(std::move(weights)) {
    const std::size_t n = frame_.size();
    if (n == 0) throw InvalidParameter("dimension must be at least 1");
    if (!is_rectangular(frame_) || frame_[0].size() != n) throw InvalidParameter("frame must be square");
    if (weights_.size() != n) {
      throw InvalidParameter("expected " + std::to_string(n) + " weights, got " +
                             std::to_string(weights_.size()));
    }
    try {
      frame_inverse_ = inverse(frame_);
    } catch (const SingularMatrix&) {
      throw InvalidFrame("frame is singular");
    }
  }

  Prime prime() const noexcept { return p_; }
  std::size_t dim() const noexcept { return frame_.size(); }
  const Mat& frame() const noexcept { return frame_; }
  const std::vector<Rat>& weights() const noexcept { return weights_; }

  /// Frame coordinates a with a * frame = v.
  Vec coordinates(const Vec& v) const {
    check_dim(v);
    return row_combination(v, frame_inverse_, dim());
  }

  /// N(a * e_j).
  NormValue axis_norm(std::size_t j, const Rat& a) const {
    const Valuation v = valuation(p_, a);
    if (v.is_infinite()) return NormValue::zero();
    return NormValue::exp(weights_[j] - Rat(v.value()));
  }

  /// Norm of the vector whose frame coordinates are `coords`.
  NormValue norm_of_coordinates(const Vec& coords) const {
    NormValue best;
    for (std::size_t j = 0; j < coords.size(); ++j) {
      if (coords[j].is_zero()) continue;
      NormValue nj = axis_norm(j, coords[j]);
      if (nj > best) best = std::move(nj);
    }
    return best;
  }

  NormValue norm(const Vec& v) const { return norm_of_coordinates(coordinates(v)); }

  void check_dim(const Vec& v) const {
    if (v.size() != dim()) {
      throw InvalidParameter("vector has length " + std::to_string(v.size()) + ", space has dimension " +
                             std::to_string(dim()));
    }
  }

  friend bool operator==(const NormedSpace& a, const NormedSpace& b) {
    return a.p_ == b.p_ && a.frame_ == b.frame_ && a.weights_ == b.weights_;
  }

 private:
  Prime p_;
  Mat frame_;
  std::vector<Rat> weights_;
  Mat frame_inverse_;
};

using SpacePtr = std::shared_ptr<const NormedSpace>;

inline SpacePtr make_space(std::int64_t p, Mat frame, std::vector<Rat> weights) {
  return std::make_shared<const NormedSpace>(Prime(p), std::move(frame), std::move(weights));
}

/// Identity frame with all weights zero: the sup-norm of the coordinates.
inline SpacePtr standard_space(std::int64_t p, std::size_t n) {
  return make_space(p, identity(n), std::vector<Rat>(n, Rat(0)));
}

inline NormValue norm_eval(const NormedSpace& s, const Vec& v) { return s.norm(v); }

}  // namespace padic
