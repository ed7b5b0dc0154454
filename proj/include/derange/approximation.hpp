#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "interval.hpp"

namespace derange {

/// Thrown when interval width prevents a certified verdict.
class IndeterminateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct NearestFraction {
  ExactRational fraction;
  ExactRational distance_lower_bound;  // certified: |fraction - x| >= this for every x in the target
  ExactRational distance_upper_bound;
};

namespace detail {

inline RationalInterval distance_to(const ExactRational& q, const RationalInterval& target) {
  if (q >= target.hi()) return {q - target.hi(), q - target.lo()};
  if (q <= target.lo()) return {target.lo() - q, target.hi() - q};
  return {ExactRational(0), max(q - target.lo(), target.hi() - q)};
}

inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline BigInt ceil_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace detail

/// Closest fraction a/b to a positive quantity enclosed by `target`, over all
/// numerators 1 <= a <= numerator_cap and denominators b >= 1.
///
/// For fixed a, |a/b - x| is unimodal in b with its minimum between a/x.hi and
/// a/x.lo, so only b in [floor(a/hi), ceil(a/lo)] can be closest; every other
/// b is dominated by one of those endpoints. The winner must be certified:
/// its distance interval lies strictly below every competitor's, otherwise
/// IndeterminateError is thrown and the caller should tighten the enclosure.
inline NearestFraction min_distance_bounded_numerator(unsigned numerator_cap,
                                                      const RationalInterval& target) {
  if (numerator_cap == 0) throw std::invalid_argument("min_distance_bounded_numerator: cap must be >= 1");
  if (!target.is_positive()) throw std::invalid_argument("min_distance_bounded_numerator: target must be positive");

  struct Candidate {
    ExactRational fraction;
    RationalInterval distance;
  };
  std::vector<Candidate> candidates;
  for (unsigned a = 1; a <= numerator_cap; ++a) {
    const ExactRational ar(static_cast<long>(a));
    const ExactRational lo_b = ar / target.hi();
    const ExactRational hi_b = ar / target.lo();
    BigInt b = detail::floor_div(lo_b.numerator(), lo_b.denominator());
    const BigInt b_end = detail::ceil_div(hi_b.numerator(), hi_b.denominator());
    if (b < 1) b = 1;
    for (; b <= b_end; ++b) {
      ExactRational q(BigInt(a), b);
      if (q.numerator() != a) continue;  // a/b not in lowest terms: seen with a smaller numerator
      candidates.push_back({q, detail::distance_to(q, target)});
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    if (candidates[i].distance.hi() < candidates[best].distance.hi()) best = i;
  }
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (i == best) continue;
    if (!(candidates[best].distance.hi() < candidates[i].distance.lo())) {
      throw IndeterminateError("nearest fraction not certified: enclosure too wide");
    }
  }
  return {candidates[best].fraction, candidates[best].distance.lo(), candidates[best].distance.hi()};
}

}  // namespace derange
