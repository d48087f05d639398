#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "padic_lattice/errors.hpp"

namespace padic {

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0 || n % 3 == 0) return false;
  for (std::int64_t d = 5; d <= n / d; d += 6) {
    if (n % d == 0 || n % (d + 2) == 0) return false;
  }
  return true;
}

/// A prime number, validated once at construction.
class Prime {
 public:
  explicit Prime(std::int64_t p) : p_(p) {
    if (!is_prime(p)) throw InvalidParameter("not a prime: " + std::to_string(p));
  }

  std::int64_t value() const noexcept { return p_; }
  unsigned long as_ulong() const noexcept { return static_cast<unsigned long>(p_); }

  friend bool operator==(Prime, Prime) = default;

 private:
  std::int64_t p_;
};

/// Exact rational number in lowest terms with positive denominator.
class Rat {
 public:
  Rat() = default;
  Rat(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rat(int v) : q_(v) {}   // NOLINT(google-explicit-constructor)
  explicit Rat(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }
  Rat(const mpz_class& num, const mpz_class& den) : q_(num, den) {
    if (den == 0) throw InvalidParameter("zero denominator");
    q_.canonicalize();
  }

  const mpq_class& raw() const noexcept { return q_; }
  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }
  const mpz_class& num_ref() const noexcept { return q_.get_num(); }
  const mpz_class& den_ref() const noexcept { return q_.get_den(); }

  bool is_zero() const noexcept { return sgn(q_) == 0; }
  int sign() const noexcept { return sgn(q_); }
  bool is_integer() const noexcept { return q_.get_den() == 1; }

  Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
  Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
  Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
  Rat& operator/=(const Rat& o) {
    if (o.is_zero()) throw InvalidParameter("division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
  friend Rat operator-(const Rat& a) { return Rat(mpq_class(-a.q_)); }

  friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    const int c = cmp(a.q_, b.q_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// Smallest integer >= this value.
  mpz_class ceil() const {
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return r;
  }

  /// "a" or "a/b" with b > 0 and gcd(|a|, b) = 1.
  std::string str() const { return q_.get_str(10); }

  /// Parses the canonical form only; "2/4", "-0", "+1" and "3/1" are rejected.
  static Rat parse(std::string_view text) {
    const std::string s(text);
    auto bad = [&] { return InvalidParameter("malformed rational \"" + s + "\""); };
    if (s.empty()) throw bad();
    std::size_t i = (s[0] == '-') ? 1 : 0;
    bool seen_digit = false;
    bool seen_slash = false;
    for (; i < s.size(); ++i) {
      const char c = s[i];
      if (c >= '0' && c <= '9') {
        seen_digit = true;
      } else if (c == '/' && !seen_slash && seen_digit) {
        seen_slash = true;
        seen_digit = false;
      } else {
        throw bad();
      }
    }
    if (!seen_digit) throw bad();
    mpq_class q;
    if (q.set_str(s, 10) != 0 || q.get_den() == 0) throw bad();
    q.canonicalize();
    if (q.get_str(10) != s) {
      throw InvalidParameter("rational \"" + s + "\" is not in lowest terms (expected \"" +
                             q.get_str(10) + "\")");
    }
    return Rat(std::move(q));
  }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

 private:
  mpq_class q_;
};

/// Exponent of p in a scalar; +infinity for zero.
class Valuation {
 public:
  static Valuation infinity() { return Valuation(true, 0); }
  static Valuation finite(long v) { return Valuation(false, v); }

  bool is_infinite() const noexcept { return infinite_; }
  /// Meaningful only when finite.
  long value() const noexcept { return value_; }

  friend bool operator==(const Valuation&, const Valuation&) = default;
  friend std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
    if (a.infinite_ || b.infinite_) {
      if (a.infinite_ && b.infinite_) return std::strong_ordering::equal;
      return a.infinite_ ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    return a.value_ <=> b.value_;
  }
  friend Valuation operator+(const Valuation& a, const Valuation& b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return finite(a.value_ + b.value_);
  }

  std::string str() const { return infinite_ ? "inf" : std::to_string(value_); }
  friend std::ostream& operator<<(std::ostream& os, const Valuation& v) { return os << v.str(); }

 private:
  Valuation(bool inf, long v) : infinite_(inf), value_(v) {}
  bool infinite_;
  long value_;
};

namespace detail {

inline long integer_valuation(unsigned long p, const mpz_class& z) {
  if (mpz_divisible_ui_p(z.get_mpz_t(), p) == 0) return 0;
  mpz_class rest;
  mpz_class prime(p);
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), z.get_mpz_t(), prime.get_mpz_t()));
}

}  // namespace detail

inline Valuation valuation(Prime p, const Rat& x) {
  if (x.is_zero()) return Valuation::infinity();
  return Valuation::finite(detail::integer_valuation(p.as_ulong(), x.num_ref()) -
                           detail::integer_valuation(p.as_ulong(), x.den_ref()));
}

inline Valuation valuation(std::int64_t p, const Rat& x) { return valuation(Prime(p), x); }

/// Membership in Z_p: a/b in lowest terms with p not dividing b.
inline bool in_zp(Prime p, const Rat& x) {
  return mpz_divisible_ui_p(x.den_ref().get_mpz_t(), p.as_ulong()) == 0;
}

inline bool in_zp(std::int64_t p, const Rat& x) { return in_zp(Prime(p), x); }

/// A p-adic unit: valuation exactly zero.
inline bool is_unit(Prime p, const Rat& x) {
  return !x.is_zero() && in_zp(p, x) &&
         mpz_divisible_ui_p(x.num_ref().get_mpz_t(), p.as_ulong()) == 0;
}

/// p^k for any integer k.
inline Rat pow_p(Prime p, long k) {
  mpz_class m;
  mpz_ui_pow_ui(m.get_mpz_t(), p.as_ulong(), static_cast<unsigned long>(k < 0 ? -k : k));
  if (k >= 0) return Rat(mpq_class(m));
  return Rat(mpz_class(1), m);
}

}  // namespace padic
