#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "primes.hpp"

namespace derange {

/// s_p(x): sum of the base-p digits of x.
inline std::uint64_t digit_sum(std::uint64_t x, std::uint64_t p) {
  if (p < 2) throw std::invalid_argument("digit_sum: base must be >= 2");
  std::uint64_t s = 0;
  for (; x > 0; x /= p) s += x % p;
  return s;
}

/// nu_p(x!) via the digit formula (x - s_p(x)) / (p - 1).
inline std::uint64_t factorial_valuation(std::uint64_t x, std::uint64_t p) {
  return (x - digit_sum(x, p)) / (p - 1);
}

/// nu_p(x) for x >= 1.
inline std::uint64_t valuation(std::uint64_t x, std::uint64_t p) {
  if (x == 0) throw std::invalid_argument("valuation: nu_p(0) is infinite");
  std::uint64_t v = 0;
  for (; x % p == 0; x /= p) ++v;
  return v;
}

struct CarryStep {
  unsigned position;
  std::uint64_t incoming;
  std::uint64_t outgoing;
};

/// Digit-by-digit trace of a multi-term base-p addition.
struct CarryProfile {
  std::uint64_t prime = 0;
  unsigned carry_count = 0;  // positions whose outgoing carry is >= 1
  std::vector<CarryStep> trace;
};

/// Schoolbook base-p addition of all addends at once. With more than two
/// terms the incoming carry at a position may exceed 1.
inline CarryProfile add_with_carries(std::span<const std::uint64_t> addends, std::uint64_t p) {
  if (p < 2) throw std::invalid_argument("add_with_carries: base must be >= 2");
  std::vector<std::uint64_t> rest(addends.begin(), addends.end());
  CarryProfile profile{p, 0, {}};
  std::uint64_t carry = 0;
  for (unsigned pos = 0;; ++pos) {
    bool remaining = carry > 0;
    std::uint64_t column = carry;
    for (auto& a : rest) {
      remaining = remaining || a > 0;
      column += a % p;
      a /= p;
    }
    if (!remaining) break;
    const std::uint64_t out = column / p;
    profile.trace.push_back({pos, carry, out});
    if (out > 0) ++profile.carry_count;
    carry = out;
  }
  return profile;
}

/// The l-term addition k + ... + k in base p.
inline CarryProfile carry_count_repeated(std::uint64_t k, std::uint64_t l, std::uint64_t p) {
  const std::vector<std::uint64_t> addends(l, k);
  return add_with_carries(addends, p);
}

/// The two-term addition x + y in base p; carry_count = nu_p(binom(x+y, x)).
inline CarryProfile carry_count_pair(std::uint64_t x, std::uint64_t y, std::uint64_t p) {
  const std::uint64_t addends[] = {x, y};
  return add_with_carries(addends, p);
}

struct WreathValuation {
  std::uint64_t lhs;  // nu_p((k!)^l l!)
  std::uint64_t rhs;  // nu_p((kl)!)
};

/// Both sides of nu_p((k!)^l l!) <= nu_p((kl)!); the wreath product S_k wr S_l
/// has order (k!)^l l! and sits inside S_kl.
inline WreathValuation wreath_valuation(std::uint64_t k, std::uint64_t l, std::uint64_t p) {
  return {l * factorial_valuation(k, p) + factorial_valuation(l, p), factorial_valuation(k * l, p)};
}

enum class ValuationCaseTag { PowerOfP, NoCarries, Strict };

inline std::string_view to_string(ValuationCaseTag t) {
  switch (t) {
    case ValuationCaseTag::PowerOfP: return "PowerOfP";
    case ValuationCaseTag::NoCarries: return "NoCarries";
    case ValuationCaseTag::Strict: return "Strict";
  }
  return "?";
}

struct ValuationCase {
  ValuationCaseTag tag;
  std::optional<CarryProfile> detail;
};

/// Classifies when the wreath inequality is an equality: k a power of p, or
/// no carries in the l-term sum k + ... + k. Otherwise the inequality is strict.
inline ValuationCase valuation_equality_classify(std::uint64_t k, std::uint64_t l, std::uint64_t p) {
  if (k < 2 || l < 2) throw std::invalid_argument("valuation_equality_classify: need k, l >= 2");
  if (is_power_of(k, p)) return {ValuationCaseTag::PowerOfP, std::nullopt};
  CarryProfile profile = carry_count_repeated(k, l, p);
  const auto tag = profile.carry_count == 0 ? ValuationCaseTag::NoCarries : ValuationCaseTag::Strict;
  return {tag, std::move(profile)};
}

}  // namespace derange
