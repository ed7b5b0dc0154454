#pragma once

#include <stdexcept>
#include <string>

#include "rational.hpp"

namespace derange {

enum class Ordering { Less, Greater, Indeterminate };

/// Closed interval [lo, hi] with exact rational endpoints.
///
/// Used to certify statements about transcendental quantities (e, ln x):
/// every producer in this header guarantees that the true value lies in the
/// returned interval, so a comparison that is decided by the endpoints is a
/// proof, and anything else is reported as Ordering::Indeterminate.
class RationalInterval {
 public:
  RationalInterval() = default;
  explicit RationalInterval(const ExactRational& point) : lo_(point), hi_(point) {}
  RationalInterval(ExactRational lo, ExactRational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (hi_ < lo_) throw std::invalid_argument("RationalInterval: lo > hi");
  }

  const ExactRational& lo() const { return lo_; }
  const ExactRational& hi() const { return hi_; }
  ExactRational width() const { return hi_ - lo_; }

  bool contains(const ExactRational& x) const { return lo_ <= x && x <= hi_; }
  bool contains(const RationalInterval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
  bool is_positive() const { return lo_.sign() > 0; }

  /// Widen outward so both endpoints become dyadic with 2^bits denominators.
  RationalInterval rounded_outward(unsigned bits) const {
    return {floor_dyadic(lo_, bits), ceil_dyadic(hi_, bits)};
  }

  RationalInterval reciprocal() const {
    if (contains(ExactRational(0))) {
      throw std::domain_error("RationalInterval: reciprocal of interval containing 0");
    }
    return {hi_.reciprocal(), lo_.reciprocal()};
  }

  friend RationalInterval operator+(const RationalInterval& a, const RationalInterval& b) {
    return {a.lo_ + b.lo_, a.hi_ + b.hi_};
  }
  friend RationalInterval operator-(const RationalInterval& a, const RationalInterval& b) {
    return {a.lo_ - b.hi_, a.hi_ - b.lo_};
  }
  friend RationalInterval operator*(const RationalInterval& a, const RationalInterval& b) {
    ExactRational p1 = a.lo_ * b.lo_, p2 = a.lo_ * b.hi_, p3 = a.hi_ * b.lo_, p4 = a.hi_ * b.hi_;
    return {min(min(p1, p2), min(p3, p4)), max(max(p1, p2), max(p3, p4))};
  }
  friend RationalInterval operator*(const ExactRational& s, const RationalInterval& a) {
    if (s.sign() >= 0) return {s * a.lo_, s * a.hi_};
    return {s * a.hi_, s * a.lo_};
  }
  friend RationalInterval operator/(const RationalInterval& a, const RationalInterval& b) {
    return a * b.reciprocal();
  }

  std::string str() const { return "[" + lo_.str() + ", " + hi_.str() + "]"; }

 private:
  ExactRational lo_{0};
  ExactRational hi_{0};
};

/// Certified comparison of an exact value against an enclosure.
inline Ordering compare(const ExactRational& x, const RationalInterval& y) {
  if (x < y.lo()) return Ordering::Less;
  if (x > y.hi()) return Ordering::Greater;
  return Ordering::Indeterminate;
}

/// Certified comparison of two enclosures.
inline Ordering compare(const RationalInterval& x, const RationalInterval& y) {
  if (x.hi() < y.lo()) return Ordering::Less;
  if (x.lo() > y.hi()) return Ordering::Greater;
  return Ordering::Indeterminate;
}

/// Enclosure of e from the partial sum S_N = sum_{i<=N} 1/i!.
///
/// The tail sum_{i>N} 1/i! is bounded by (1/(N+1)!) * (N+2)/(N+1) <= 2/(N+1)!,
/// so e lies in [S_N, S_N + 2/(N+1)!]. Successive enclosures are nested.
inline RationalInterval e_enclosure(unsigned terms) {
  if (terms < 1) throw std::invalid_argument("e_enclosure: terms must be >= 1");
  // S_N = (sum_{i<=N} N!/i!) / N!
  BigInt numerator = 0;
  BigInt falling = 1;  // N!/i! for i descending from N
  for (unsigned i = terms + 1; i-- > 0;) {
    numerator += falling;
    falling *= (i == 0 ? 1u : i);
  }
  const BigInt nfact = factorial(terms);
  ExactRational partial(numerator, nfact);
  ExactRational tail(BigInt(2), nfact * (terms + 1));
  return {partial, partial + tail};
}

namespace detail {

/// Enclosure of 2*atanh(z) = ln((1+z)/(1-z)) for rational 0 <= z < 1.
///
/// Partial sum of z^(2j+1)/(2j+1) for j < terms; the remainder is bounded by
/// the geometric series z^(2T+1) / ((2T+1)(1 - z^2)).
inline RationalInterval two_atanh(const ExactRational& z, unsigned terms) {
  if (z.sign() < 0 || z >= ExactRational(1)) {
    throw std::domain_error("two_atanh: argument outside [0, 1)");
  }
  const ExactRational z2 = z * z;
  ExactRational power = z;  // z^(2j+1)
  ExactRational sum(0);
  for (unsigned j = 0; j < terms; ++j) {
    sum += power / ExactRational(static_cast<long>(2 * j + 1));
    power *= z2;
  }
  const ExactRational tail =
      power / (ExactRational(static_cast<long>(2 * terms + 1)) * (ExactRational(1) - z2));
  const ExactRational two(2);
  return {two * sum, two * (sum + tail)};
}

}  // namespace detail

/// Enclosure of ln 2 = 2*atanh(1/3).
inline RationalInterval ln2_enclosure(unsigned terms) {
  return detail::two_atanh(ExactRational(BigInt(1), BigInt(3)), terms);
}

/// Certified enclosure of ln(x) for rational x > 0.
///
/// x is written as 2^k * y with y in [1, 2); then ln x = k ln 2 + 2 atanh((y-1)/(y+1)),
/// both terms enclosed by truncated atanh series with explicit tail bounds.
inline RationalInterval ln_enclosure(const ExactRational& x, unsigned precision_terms) {
  if (x.sign() <= 0) throw std::domain_error("ln_enclosure: argument must be positive");

  long k = static_cast<long>(mpz_sizeinbase(x.numerator().get_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(x.denominator().get_mpz_t(), 2));
  auto scaled = [&](long shift) {
    BigInt num = x.numerator(), den = x.denominator();
    if (shift >= 0) den <<= static_cast<unsigned long>(shift);
    else num <<= static_cast<unsigned long>(-shift);
    return ExactRational(num, den);
  };
  ExactRational y = scaled(k);
  while (y >= ExactRational(2)) y = scaled(++k);
  while (y < ExactRational(1)) y = scaled(--k);

  const ExactRational z = (y - ExactRational(1)) / (y + ExactRational(1));
  RationalInterval result = detail::two_atanh(z, precision_terms);
  if (k != 0) result = result + ExactRational(k) * ln2_enclosure(precision_terms);
  return result;
}

/// ln is increasing, so the image of [lo, hi] is enclosed by [ln(lo).lo, ln(hi).hi].
inline RationalInterval ln_enclosure(const RationalInterval& x, unsigned precision_terms) {
  if (!x.is_positive()) throw std::domain_error("ln_enclosure: interval must be positive");
  return {ln_enclosure(x.lo(), precision_terms).lo(), ln_enclosure(x.hi(), precision_terms).hi()};
}

}  // namespace derange
