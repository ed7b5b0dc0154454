#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

#include <gmpxx.h>

namespace derange {

using BigInt = mpz_class;

inline std::string to_string(const BigInt& x) { return x.get_str(); }

inline BigInt big(std::uint64_t x) {
  BigInt r;
  mpz_import(r.get_mpz_t(), 1, -1, sizeof(x), 0, 0, &x);
  return r;
}

inline BigInt factorial(unsigned n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline BigInt power(const BigInt& base, unsigned exponent) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

inline bool divides(const BigInt& d, const BigInt& x) {
  return mpz_divisible_p(x.get_mpz_t(), d.get_mpz_t()) != 0;
}

/// Reduced fraction of arbitrary-precision integers.
///
/// The representation is canonical at all times: gcd(|num|, den) = 1 and
/// den >= 1, so structural equality coincides with numeric equality.
/// Comparisons are exact; there is no floating point anywhere in this type
/// other than the explicit `approx()` used for display.
class ExactRational {
 public:
  ExactRational() = default;
  ExactRational(long n) : value_(n) {}  // NOLINT(google-explicit-constructor)
  ExactRational(const BigInt& n) : value_(n) {}  // NOLINT
  ExactRational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::domain_error("ExactRational: zero denominator");
    value_ = mpq_class(num, den);
    value_.canonicalize();
  }

  static ExactRational from_mpq(mpq_class q) {
    q.canonicalize();
    ExactRational r;
    r.value_ = std::move(q);
    return r;
  }

  const BigInt& numerator() const { return value_.get_num(); }
  const BigInt& denominator() const { return value_.get_den(); }
  const mpq_class& mpq() const { return value_; }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }

  ExactRational abs() const { return from_mpq(::abs(value_)); }
  ExactRational reciprocal() const {
    if (is_zero()) throw std::domain_error("ExactRational: reciprocal of zero");
    return from_mpq(1 / value_);
  }

  double approx() const { return value_.get_d(); }
  std::string str() const {
    return numerator().get_str() + "/" + denominator().get_str();
  }

  ExactRational& operator+=(const ExactRational& o) { value_ += o.value_; return *this; }
  ExactRational& operator-=(const ExactRational& o) { value_ -= o.value_; return *this; }
  ExactRational& operator*=(const ExactRational& o) { value_ *= o.value_; return *this; }
  ExactRational& operator/=(const ExactRational& o) {
    if (o.is_zero()) throw std::domain_error("ExactRational: division by zero");
    value_ /= o.value_;
    return *this;
  }

  friend ExactRational operator+(ExactRational a, const ExactRational& b) { return a += b; }
  friend ExactRational operator-(ExactRational a, const ExactRational& b) { return a -= b; }
  friend ExactRational operator*(ExactRational a, const ExactRational& b) { return a *= b; }
  friend ExactRational operator/(ExactRational a, const ExactRational& b) { return a /= b; }
  friend ExactRational operator-(const ExactRational& a) { return from_mpq(-a.value_); }

  friend bool operator==(const ExactRational& a, const ExactRational& b) {
    return cmp(a.value_, b.value_) == 0;
  }
  friend std::strong_ordering operator<=>(const ExactRational& a, const ExactRational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const ExactRational& r) {
    return os << r.str();
  }

 private:
  mpq_class value_{0};
};

inline ExactRational min(const ExactRational& a, const ExactRational& b) { return b < a ? b : a; }
inline ExactRational max(const ExactRational& a, const ExactRational& b) { return a < b ? b : a; }

/// floor(x * 2^bits) / 2^bits
inline ExactRational floor_dyadic(const ExactRational& x, unsigned bits) {
  BigInt scaled = x.numerator() << bits;
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), x.denominator().get_mpz_t());
  return ExactRational(q, BigInt(1) << bits);
}

/// ceil(x * 2^bits) / 2^bits
inline ExactRational ceil_dyadic(const ExactRational& x, unsigned bits) {
  BigInt scaled = x.numerator() << bits;
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), x.denominator().get_mpz_t());
  return ExactRational(q, BigInt(1) << bits);
}

}  // namespace derange
