#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <string_view>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "derangements.hpp"
#include "primes.hpp"
#include "report.hpp"
#include "valuation.hpp"

namespace derange {

/// A prime certifying a strict valuation inequality that rules out one
/// structural case (block system or orbit split) for a subgroup of S_n.
///
/// Invariant: p does not divide the relevant count (D_n, E_n, or E_n/2 when
/// `halved`) and lhs < rhs, where lhs is nu_p of the order of the largest
/// group of that shape and rhs is nu_p(n!) (or nu_p(n!/2) when `halved`).
struct WitnessPrime {
  Variant variant = Variant::Symmetric;
  unsigned n = 0;
  std::uint64_t prime = 0;
  std::string case_label;
  std::optional<std::pair<unsigned, unsigned>> blocks;  // (block size k, block count l)
  std::optional<std::pair<unsigned, unsigned>> split;   // orbit sizes (u, v)
  std::uint64_t lhs = 0;
  std::uint64_t rhs = 0;
  bool halved = false;

  Json to_json() const {
    Json j;
    j["n"] = n;
    j["variant"] = to_string(variant);
    j["prime"] = prime;
    j["case"] = case_label;
    if (blocks) j["k"] = blocks->first, j["l"] = blocks->second;
    if (split) j["u"] = split->first, j["v"] = split->second;
    j["lhs"] = lhs;
    j["rhs"] = rhs;
    if (halved) j["halved"] = true;
    return j;
  }
};

namespace detail {

inline BigInt derangement_numerator(unsigned n, Variant v) {
  return v == Variant::Symmetric ? derangement_count(n) : alt_derangement_count(n);
}

inline std::vector<std::uint64_t> without(std::vector<std::uint64_t> xs, std::initializer_list<std::uint64_t> drop) {
  std::erase_if(xs, [&](std::uint64_t x) { return std::find(drop.begin(), drop.end(), x) != drop.end(); });
  return xs;
}

inline std::vector<std::uint64_t> concat(std::vector<std::uint64_t> a, const std::vector<std::uint64_t>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

struct CaseCandidates {
  std::string label;
  std::vector<std::uint64_t> primes;
};

/// Prime candidates for n = k*l (l blocks of size k), in the order the case
/// analysis for the symmetric group uses them.
inline CaseCandidates symmetric_block_candidates(unsigned n, unsigned l) {
  if (l == 2) return {"sym-blocks-case2", concat({2}, prime_divisors(n - 3))};
  if (is_power_of(n - 2, 2)) {
    if (l == 3) return {"sym-blocks-case3", {3}};
    return {"sym-blocks-case4", without(prime_divisors(n - 3), {3})};
  }
  return {"sym-blocks-case1", without(prime_divisors(n - 2), {2})};
}

/// Same for the alternating group (n > 6).
inline CaseCandidates alternating_block_candidates(unsigned n, unsigned l) {
  if (n <= 30) {
    std::vector<std::uint64_t> ps;
    for (auto p : primes_up_to(n))
      if (2 * p > n) ps.push_back(p);
    return {"alt-blocks-half-range", ps};
  }
  const bool l24 = l == 2 || l == 4;
  if (is_power_of(n - 4, 2)) return {"alt-blocks-case1", concat(without(prime_divisors(n - 3), {3}), {3})};
  if (is_power_of(n - 3, 2) && !l24) return {"alt-blocks-case2", without(prime_divisors(n - 4), {3})};
  if (l == 3) return {"alt-blocks-case3", concat({3}, prime_divisors(n - 4))};
  if (!l24) {
    return {"alt-blocks-case4",
            concat(without(prime_divisors(n - 3), {2}), without(prime_divisors(n - 4), {2, 3}))};
  }
  if (!is_power_of(n - 3, 3)) return {"alt-blocks-case5.1", without(prime_divisors(n - 3), {3})};
  if (!is_power_of(n - 5, 5)) return {"alt-blocks-case5.2", without(prime_divisors(n - 5), {5})};
  return {"alt-blocks-case5.3", {}};
}

inline std::optional<WitnessPrime> try_block_witness(unsigned n, unsigned k, unsigned l, Variant variant,
                                                     const BigInt& numerator, std::uint64_t p,
                                                     const std::string& label) {
  if (divides(big(p), numerator)) return std::nullopt;
  const auto wv = wreath_valuation(k, l, p);
  if (wv.lhs >= wv.rhs) return std::nullopt;
  WitnessPrime w;
  w.variant = variant;
  w.n = n;
  w.prime = p;
  w.case_label = label;
  w.blocks = std::pair{k, l};
  w.lhs = wv.lhs;
  w.rhs = wv.rhs;
  return w;
}

}  // namespace detail

/// Outcome for one factorization n = k*l.
struct FactorizationWitness {
  unsigned k = 0;  // block size
  unsigned l = 0;  // number of blocks
  std::optional<WitnessPrime> witness;
  bool from_fallback = false;  // the case-directed candidates all failed
};

inline unsigned imprimitive_threshold(Variant v) { return v == Variant::Symmetric ? 4 : 6; }

/// Witness primes for every factorization n = k*l with k, l >= 2.
///
/// Candidates are tried in the order of the case analysis and labelled by
/// case; if none works, all primes <= n are scanned and the result is flagged
/// `from_fallback`. A factorization with no witness at all has an empty
/// `witness` and must be reported as a refutation by the caller.
inline std::vector<FactorizationWitness> imprimitive_witnesses(unsigned n, Variant variant) {
  if (n <= imprimitive_threshold(variant)) {
    throw std::invalid_argument("imprimitive_witnesses: need n > " + std::to_string(imprimitive_threshold(variant)));
  }
  if (is_prime(n)) throw std::invalid_argument("imprimitive_witnesses: n must be composite");

  const BigInt numerator = detail::derangement_numerator(n, variant);
  std::vector<FactorizationWitness> out;
  for (unsigned l = 2; l <= n / 2; ++l) {
    if (n % l != 0) continue;
    const unsigned k = n / l;
    FactorizationWitness fw{k, l, std::nullopt, false};
    const auto cands = variant == Variant::Symmetric ? detail::symmetric_block_candidates(n, l)
                                                     : detail::alternating_block_candidates(n, l);
    for (auto p : cands.primes) {
      if ((fw.witness = detail::try_block_witness(n, k, l, variant, numerator, p, cands.label))) break;
    }
    if (!fw.witness) {
      const std::string label = variant == Variant::Symmetric ? "sym-blocks-fallback" : "alt-blocks-fallback";
      for (auto p : primes_up_to(n)) {
        if ((fw.witness = detail::try_block_witness(n, k, l, variant, numerator, p, label))) {
          fw.from_fallback = true;
          break;
        }
      }
    }
    out.push_back(std::move(fw));
  }
  return out;
}

enum class IntransitiveKind { Witness, Contradiction, CrossReference };

inline std::string_view to_string(IntransitiveKind k) {
  switch (k) {
    case IntransitiveKind::Witness: return "witness";
    case IntransitiveKind::Contradiction: return "contradiction";
    case IntransitiveKind::CrossReference: return "cross-reference";
  }
  return "?";
}

/// Result of ruling out subgroups of S_u x S_v (u + v = n).
struct IntransitiveOutcome {
  IntransitiveKind kind = IntransitiveKind::Witness;
  std::optional<WitnessPrime> witness;
  std::string explanation;
  std::optional<std::pair<unsigned, unsigned>> reduces_to_blocks;  // (k, l) handled by the block argument
  bool two_adic_branch = false;  // the nu_2 one-carry refinement was evaluated

  Json to_json() const {
    Json j;
    j["kind"] = to_string(kind);
    if (witness) j["witness"] = witness->to_json();
    if (!explanation.empty()) j["explanation"] = explanation;
    if (reduces_to_blocks) j["reduces_to"] = {{"k", reduces_to_blocks->first}, {"l", reduces_to_blocks->second}};
    if (two_adic_branch) j["two_adic_branch"] = true;
    return j;
  }
};

namespace detail {

inline WitnessPrime split_witness(unsigned n, unsigned u, unsigned v, Variant variant, std::uint64_t p,
                                  std::string label, std::uint64_t lhs, std::uint64_t rhs, bool halved) {
  WitnessPrime w;
  w.variant = variant;
  w.n = n;
  w.prime = p;
  w.case_label = std::move(label);
  w.split = std::pair{u, v};
  w.lhs = lhs;
  w.rhs = rhs;
  w.halved = halved;
  return w;
}

}  // namespace detail

/// Rules out an intransitive G <= S_u x S_v.
///
/// Symmetric: every prime p | n has p !| D_n; some such p must give
/// nu_p(u! v!) < nu_p(n!), since equality for all of them forces n | u, v.
///
/// Alternating: odd primes p | n play the same role with E_n, forcing m | u, v
/// for the odd part m of n = 2^s m. If s = 1 then u = v, which belongs to the
/// block argument. If s >= 2, E_n/2 is odd, so nu_2(u! v!) >= nu_2(n!) - 1:
/// two or more base-2 carries in u + v give a witness, one carry forces
/// u = v = n/2 (block argument again), zero carries force n | u, v.
inline IntransitiveOutcome intransitive_witness(unsigned n, unsigned u, unsigned v, Variant variant) {
  if (u < 1 || v < 1 || u + v != n) throw std::invalid_argument("intransitive_witness: need u, v >= 1 and u + v = n");
  const BigInt numerator = detail::derangement_numerator(n, variant);
  const std::uint64_t rhs_full_2 = factorial_valuation(n, 2);
  IntransitiveOutcome out;

  const std::string prefix = variant == Variant::Symmetric ? "sym-split" : "alt-split";
  for (auto p : prime_divisors(n)) {
    if (variant == Variant::Alternating && p == 2) continue;
    if (divides(big(p), numerator)) continue;
    const std::uint64_t lhs = factorial_valuation(u, p) + factorial_valuation(v, p);
    const std::uint64_t rhs = factorial_valuation(n, p);
    if (lhs < rhs) {
      out.kind = IntransitiveKind::Witness;
      out.witness = detail::split_witness(n, u, v, variant, p,
                                          prefix + (variant == Variant::Symmetric ? "-prime-dividing-n" : "-odd-prime"),
                                          lhs, rhs, false);
      return out;
    }
  }

  if (variant == Variant::Symmetric) {
    out.kind = IntransitiveKind::Contradiction;
    out.explanation = "equality at every prime dividing n forces n | u and n | v, impossible for 0 < u, v < n";
    return out;
  }

  const unsigned s = static_cast<unsigned>(valuation(n, 2));
  const unsigned m = n >> s;
  if (u % m != 0 || v % m != 0) throw std::logic_error("intransitive_witness: odd-prime step did not force m | u, v");
  if (s == 0) {
    out.kind = IntransitiveKind::Contradiction;
    out.explanation = "n is odd and n | u, v is impossible for 0 < u, v < n";
    return out;
  }
  if (s == 1) {
    out.kind = IntransitiveKind::CrossReference;
    out.reduces_to_blocks = std::pair{n / 2, 2u};
    out.explanation = "n = 2m with m | u, v forces u = v = n/2; handled by the two-block argument";
    return out;
  }

  out.two_adic_branch = true;
  const BigInt half = numerator / 2;
  if (divides(BigInt(2), half)) throw std::logic_error("intransitive_witness: E_n/2 is even although 4 | n");
  const std::uint64_t lhs = factorial_valuation(u, 2) + factorial_valuation(v, 2);
  const std::uint64_t carries = rhs_full_2 - lhs;
  if (carries >= 2) {
    out.kind = IntransitiveKind::Witness;
    out.witness = detail::split_witness(n, u, v, variant, 2, prefix + "-two-adic", lhs, rhs_full_2 - 1, true);
    return out;
  }
  if (carries == 1) {
    out.kind = IntransitiveKind::CrossReference;
    out.reduces_to_blocks = std::pair{n / 2, 2u};
    out.explanation = "exactly one base-2 carry in u + v forces 2^(s-1) | u, v; with m | u, v this gives u = v = n/2";
    return out;
  }
  out.kind = IntransitiveKind::Contradiction;
  out.explanation = "no base-2 carry gives nu_2(u) = nu_2(v) = nu_2(n); with m | u, v this forces n | u, v";
  return out;
}

/// Least prime p in (n/2, n] with p !| E_n, if any.
inline std::optional<std::uint64_t> half_range_prime(unsigned n) {
  const BigInt e = alt_derangement_count(n);
  for (auto p : primes_up_to(n)) {
    if (2 * p > n && !divides(big(p), e)) return p;
  }
  return std::nullopt;
}

/// Re-checks a witness from scratch: primality by trial division, the count
/// by inclusion-exclusion rather than the recurrence, and valuations by
/// Legendre's sum rather than the digit formula.
inline bool revalidate(const WitnessPrime& w) {
  const std::uint64_t p = w.prime;
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;

  // n! * sum_{i<=n} (-1)^i / i! = sum_i (-1)^i n!/i!
  BigInt dn = 0, falling = 1;
  for (unsigned i = w.n + 1; i-- > 0;) {
    dn += (i % 2 == 0 ? 1 : -1) * falling;
    falling *= (i == 0 ? 1u : i);
  }
  BigInt count = dn;
  if (w.variant == Variant::Alternating) count += ((w.n - 1) % 2 == 0 ? 1 : -1) * BigInt(w.n - 1);
  if (w.halved) count /= 2;
  if (count % big(p) == 0) return false;

  auto legendre = [p](std::uint64_t x) {
    std::uint64_t s = 0;
    for (std::uint64_t q = p; q <= x; q *= p) s += x / q;
    return s;
  };
  std::uint64_t lhs = 0;
  if (w.blocks) lhs = w.blocks->second * legendre(w.blocks->first) + legendre(w.blocks->second);
  else if (w.split) lhs = legendre(w.split->first) + legendre(w.split->second);
  else return false;
  const std::uint64_t rhs = legendre(w.n) - (w.halved ? 1 : 0);
  return lhs == w.lhs && rhs == w.rhs && lhs < rhs;
}

// ---------------------------------------------------------------------------
// Bounded exponential Diophantine scans
// ---------------------------------------------------------------------------

enum class DiophantineKind {
  ThreePowEqTwoPowMinus1 = 1,   // 3^u = 2^v - 1
  ThreePowMinusFivePowEq2 = 2,  // 3^a - 5^b = 2
  ThreePowMinus1EqTwoPow = 3,   // 3^u - 1 = 2^v
};

/// All positive exponent pairs up to `bound` solving the equation.
inline std::vector<std::pair<unsigned, unsigned>> diophantine_scan(DiophantineKind kind, unsigned bound) {
  std::vector<std::pair<unsigned, unsigned>> solutions;
  auto pw = [](unsigned base, unsigned e) { return power(BigInt(base), e); };
  for (unsigned x = 1; x <= bound; ++x) {
    for (unsigned y = 1; y <= bound; ++y) {
      bool hit = false;
      switch (kind) {
        case DiophantineKind::ThreePowEqTwoPowMinus1: hit = pw(3, x) == pw(2, y) - 1; break;
        case DiophantineKind::ThreePowMinusFivePowEq2: hit = pw(3, x) - pw(5, y) == 2; break;
        case DiophantineKind::ThreePowMinus1EqTwoPow: hit = pw(3, x) - 1 == pw(2, y); break;
      }
      if (hit) solutions.emplace_back(x, y);
    }
  }
  return solutions;
}

}  // namespace derange
