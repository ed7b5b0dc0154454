#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "approximation.hpp"
#include "derangements.hpp"
#include "interval.hpp"
#include "report.hpp"

namespace derange {

enum class Verdict { InequalityHolds, InequalityFails, Indeterminate };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::InequalityHolds: return "holds";
    case Verdict::InequalityFails: return "fails";
    case Verdict::Indeterminate: return "indeterminate";
  }
  return "?";
}

struct CutoffOptions {
  unsigned max_n = 100;
  unsigned initial_terms = 8;
  unsigned max_terms = 16384;
};

struct CutoffResult {
  Variant variant = Variant::Symmetric;
  unsigned cutoff = 0;  // largest n with InequalityHolds, 0 if none
  std::map<unsigned, Verdict> per_n_verdicts;
  std::map<unsigned, unsigned> decided_at_terms;  // first series length that decided n
  bool stable = true;       // verdicts unchanged at twice the deciding precision
  bool tail_certified = false;  // every n > max_n provably fails too

  bool has_indeterminate() const {
    for (const auto& [n, v] : per_n_verdicts)
      if (v == Verdict::Indeterminate) return true;
    return false;
  }
};

/// Left side of the order inequality: 1/(n+1)! or n^2/(n+1)!.
inline ExactRational cutoff_lhs(unsigned n, Variant variant) {
  const BigInt num = variant == Variant::Symmetric ? BigInt(1) : BigInt(n) * n;
  return ExactRational(num, factorial(n + 1));
}

/// Enclosure of ln(ln 4^n) / (3 e 16^n ln 4^n), with every series cut at `terms`.
inline RationalInterval cutoff_rhs(unsigned n, unsigned terms) {
  const unsigned bits = 4 * terms + 32;
  const RationalInterval ln4n = (ExactRational(2L * n) * ln2_enclosure(terms)).rounded_outward(bits);
  const RationalInterval lnln4n = ln_enclosure(ln4n, terms).rounded_outward(bits);
  const RationalInterval denom = ExactRational(power(BigInt(16), n) * 3) * (e_enclosure(terms) * ln4n);
  return lnln4n / denom;
}

inline Verdict cutoff_verdict(unsigned n, Variant variant, unsigned terms) {
  switch (compare(cutoff_lhs(n, variant), cutoff_rhs(n, terms))) {
    case Ordering::Greater: return Verdict::InequalityHolds;
    case Ordering::Less: return Verdict::InequalityFails;
    case Ordering::Indeterminate: return Verdict::Indeterminate;
  }
  return Verdict::Indeterminate;
}

/// Upper bound on ratio(n+1)/ratio(n), where ratio = lhs/rhs.
///
/// ln ln 4^n is increasing, so the log-log factor contributes at most 1 and
/// the bound is 16 (n+1) / (n (n+2)), times ((n+1)/n)^2 in the alternating
/// case. It decreases in n, so once it is below 1 the ratio keeps falling.
inline ExactRational cutoff_tail_ratio_bound(unsigned n, Variant variant) {
  ExactRational r(BigInt(16) * (n + 1), BigInt(n) * (n + 2));
  if (variant == Variant::Alternating) {
    const ExactRational g(BigInt(n + 1), BigInt(n));
    r *= g * g;
  }
  return r;
}

/// Largest n for which the order bound from the irrationality measure of e
/// still permits a primitive group, decided per n by certified intervals.
///
/// Each n starts at `initial_terms` and doubles until decided. The verdict is
/// then recomputed at twice that precision to check stability. Beyond max_n
/// the tail bound above certifies that the inequality keeps failing.
inline CutoffResult primitive_cutoff(Variant variant, CutoffOptions opt = {}) {
  CutoffResult res;
  res.variant = variant;
  for (unsigned n = 1; n <= opt.max_n; ++n) {
    Verdict v = Verdict::Indeterminate;
    unsigned terms = opt.initial_terms;
    for (; terms <= opt.max_terms; terms *= 2) {
      v = cutoff_verdict(n, variant, terms);
      if (v != Verdict::Indeterminate) break;
    }
    res.per_n_verdicts[n] = v;
    if (v == Verdict::Indeterminate) continue;
    res.decided_at_terms[n] = terms;
    if (cutoff_verdict(n, variant, 2 * terms) != v) res.stable = false;
    if (v == Verdict::InequalityHolds) res.cutoff = n;
  }
  res.tail_certified = res.per_n_verdicts.count(opt.max_n) &&
                       res.per_n_verdicts[opt.max_n] == Verdict::InequalityFails &&
                       cutoff_tail_ratio_bound(opt.max_n, variant) < ExactRational(1);
  return res;
}

inline unsigned expected_cutoff(Variant variant) { return variant == Variant::Symmetric ? 41 : 49; }

inline VerificationReport cutoff_report(const CutoffResult& r) {
  VerificationReport rep;
  rep.claim_id = "cutoff";
  rep.parameters = {{"variant", to_string(r.variant)}, {"max_n", r.per_n_verdicts.empty() ? 0 : r.per_n_verdicts.rbegin()->first}};
  Json verdicts = Json::object();
  for (const auto& [n, v] : r.per_n_verdicts) verdicts[std::to_string(n)] = to_string(v);
  rep.witnesses.push_back({{"cutoff", r.cutoff},
                           {"expected", expected_cutoff(r.variant)},
                           {"stable_under_doubling", r.stable},
                           {"tail_certified", r.tail_certified},
                           {"verdicts", verdicts}});
  if (r.has_indeterminate()) {
    rep.status = Status::Indeterminate;
    rep.notes.push_back("precision cap reached before every n was decided");
  } else if (r.cutoff != expected_cutoff(r.variant) || !r.stable || !r.tail_certified) {
    rep.refute({{"cutoff", r.cutoff}, {"stable", r.stable}, {"tail_certified", r.tail_certified}});
  }
  return rep;
}

/// Scan ranges on which the reduced denominator must reach 4^n.
inline std::pair<unsigned, unsigned> denominator_bound_range(Variant variant) {
  return variant == Variant::Symmetric ? std::pair{12u, 41u} : std::pair{14u, 49u};
}

/// Exact check that d_n >= 4^n (or e_n >= 4^n) over the asserted range.
/// Values of n in `informational` are reported in the witnesses but do not
/// affect the status.
inline VerificationReport denominator_vs_power_bound(Variant variant, std::optional<std::pair<unsigned, unsigned>> informational = std::nullopt) {
  const auto [lo, hi] = denominator_bound_range(variant);
  VerificationReport rep;
  rep.claim_id = "den-bound";
  rep.parameters = {{"variant", to_string(variant)}, {"from", lo}, {"to", hi}};
  auto row = [&](unsigned n) {
    const BigInt den = reduced_denominator(n, variant);
    const BigInt bound = power(BigInt(4), n);
    return Json{{"n", n}, {"denominator", to_string(den)}, {"four_pow_n", to_string(bound)}, {"at_least", den >= bound}};
  };
  for (unsigned n = lo; n <= hi; ++n) {
    Json r = row(n);
    if (!r["at_least"].get<bool>()) rep.refute(r);
    rep.witnesses.push_back(std::move(r));
  }
  if (informational) {
    rep.parameters["informational"] = {informational->first, informational->second};
    for (unsigned n = std::max(1u, informational->first); n <= informational->second; ++n) {
      if (n >= lo && n <= hi) continue;
      Json r = row(n);
      r["informational"] = true;
      rep.witnesses.push_back(std::move(r));
    }
  }
  return rep;
}

/// Distance from 1/e that fractions with small numerators cannot undercut.
inline ExactRational numerator_floor_threshold(Variant variant) {
  return variant == Variant::Symmetric ? ExactRational(BigInt(1), factorial(6))
                                       : ExactRational(BigInt(225), factorial(16));
}

/// Certifies that every a/b with a <= cap stays farther than the threshold
/// from 1/e. The enclosure of 1/e is tightened until the nearest fraction is
/// certified.
inline VerificationReport numerator_floor_check(Variant variant, unsigned cap = 4, unsigned max_terms = 4096) {
  VerificationReport rep;
  rep.claim_id = "numerator-floor";
  const ExactRational threshold = numerator_floor_threshold(variant);
  rep.parameters = {{"variant", to_string(variant)}, {"numerator_cap", cap}, {"threshold", threshold.str()}};
  if (cap == 0) {
    rep.notes.push_back("no numerators to check");
    return rep;
  }
  for (unsigned terms = 16; terms <= max_terms; terms *= 2) {
    const RationalInterval inv_e = e_enclosure(terms).reciprocal();
    try {
      const NearestFraction nf = min_distance_bounded_numerator(cap, inv_e);
      Json w{{"closest", nf.fraction.str()},
             {"distance_lower", nf.distance_lower_bound.str()},
             {"distance_upper", nf.distance_upper_bound.str()},
             {"distance_approx", nf.distance_lower_bound.approx()},
             {"terms", terms}};
      if (!(nf.distance_lower_bound > threshold)) rep.refute(w);
      rep.witnesses.push_back(std::move(w));
      return rep;
    } catch (const IndeterminateError&) {
    }
  }
  rep.status = Status::Indeterminate;
  rep.notes.push_back("nearest fraction not certified within the precision cap");
  return rep;
}

}  // namespace derange
