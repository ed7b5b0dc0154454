#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "blocks.hpp"
#include "derangements.hpp"
#include "group.hpp"
#include "lattice.hpp"
#include "parallel.hpp"
#include "report.hpp"

namespace derange {

/// One conjugacy class of subgroups of S_n.
struct ExceptionalClass {
  std::size_t order = 0;
  std::vector<std::string> generator_strings;
};

/// Subgroups G != A_n of S_n having a coset whose derangement proportion
/// equals that of A_n, one representative per conjugacy class.
struct ExceptionalList {
  unsigned degree = 0;
  std::vector<ExceptionalClass> classes;

  std::vector<std::size_t> orders() const {
    std::vector<std::size_t> out;
    for (const auto& c : classes) out.push_back(c.order);
    std::sort(out.begin(), out.end());
    return out;
  }

  Json to_json() const {
    Json cls = Json::array();
    for (const auto& c : classes) cls.push_back({{"order", c.order}, {"generators", c.generator_strings}});
    return {{"degree", degree}, {"classes", cls}};
  }
};

/// The published exceptional classes for n <= 6, as generator sets.
inline std::vector<std::vector<std::string>> known_exceptional_generators(unsigned n) {
  switch (n) {
    case 4: return {{"(1423)", "(12)(34)"}, {"(34)", "(12)(34)"}, {"(1234)", "(13)"}};
    case 5: return {{"(12345)"}, {"(12345)", "(25)(34)"}, {"(12345)", "(2354)"}};
    case 6:
      return {{"(1623)(45)", "(12)(36)", "(124)(365)", "(142)(365)"},
              {"(13)(25)(46)", "(14)(36)", "(154)(236)", "(145)(236)"}};
    default: return {};
  }
}

inline std::vector<std::string> generator_strings(const PermutationGroup& g) {
  std::vector<std::string> out;
  for (const auto& p : g.generators()) out.push_back(format_cycles(p));
  return out;
}

namespace detail {

struct CosetHits {
  std::size_t cosets = 0;
  std::vector<Permutation> attaining;  // coset representatives reaching the target
};

inline CosetHits cosets_attaining(const PermutationGroup& g, const ExactRational& target) {
  CosetHits hits;
  for_each_right_coset(g, [&](const Permutation& sigma) {
    ++hits.cosets;
    if (coset_derangement_proportion(Coset{&g, sigma}) == target) hits.attaining.push_back(sigma);
  });
  return hits;
}

inline Json subgroup_json(const PermutationGroup& g) {
  return {{"order", g.order()}, {"generators", generator_strings(g)}};
}

}  // namespace detail

/// Exhaustive check over every conjugacy class of subgroups of S_n and every
/// right coset of its representative: only S_n itself reaches D_n/n!.
/// Conjugation maps cosets to cosets and preserves fixed points, so class
/// representatives suffice.
inline VerificationReport verify_symmetric_characterization(unsigned n, unsigned workers = 1) {
  VerificationReport rep;
  rep.claim_id = "verify-sym";
  rep.parameters = {{"n", n}};
  const SubgroupLattice lattice = all_subgroups(n);
  const ExactRational target = derangement_proportion(n, Variant::Symmetric);

  const auto hits = parallel_map<detail::CosetHits>(lattice.class_count(), workers, [&](std::size_t c) {
    return detail::cosets_attaining(lattice.representative(c), target);
  });

  std::size_t cosets = 0;
  for (std::size_t c = 0; c < lattice.class_count(); ++c) {
    const auto& g = lattice.representative(c);
    cosets += hits[c].cosets;
    for (const auto& sigma : hits[c].attaining) {
      Json entry = detail::subgroup_json(g);
      entry["coset_representative"] = format_cycles(sigma);
      if (g.is_symmetric_group()) {
        rep.witnesses.push_back(entry);
      } else {
        entry["proportion"] = target.str();
        rep.refute(entry);
      }
    }
  }
  rep.parameters["subgroup_classes"] = lattice.class_count();
  rep.parameters["subgroups"] = lattice.subgroups.size();
  rep.parameters["cosets_checked"] = cosets;
  rep.parameters["target"] = target.str();
  if (n >= 2) {
    const ExactRational gap = (derangement_proportion(n, Variant::Alternating) - target).abs();
    rep.witnesses.push_back({{"alternating_gap", gap.str()}, {"expected_gap", ExactRational(BigInt(n - 1), factorial(n)).str()}});
  }
  return rep;
}

struct AlternatingCharacterization {
  VerificationReport report;
  ExceptionalList exceptional;
};

/// Finds every subgroup class other than A_n with a coset at E_n/n!. For
/// n <= 6 the result must match the published list up to conjugacy; for
/// larger n it must be empty.
inline AlternatingCharacterization verify_alternating_characterization(unsigned n, unsigned workers = 1) {
  AlternatingCharacterization out;
  auto& rep = out.report;
  rep.claim_id = "verify-alt";
  rep.parameters = {{"n", n}, {"search", "full-lattice"}};
  out.exceptional.degree = n;

  const SubgroupLattice lattice = all_subgroups(n);
  const ExactRational target = derangement_proportion(n, Variant::Alternating);
  const auto hits = parallel_map<detail::CosetHits>(lattice.class_count(), workers, [&](std::size_t c) {
    const auto& g = lattice.representative(c);
    if (g.is_alternating_group()) return detail::CosetHits{};
    return detail::cosets_attaining(g, target);
  });

  std::vector<PermutationGroup> found;
  for (std::size_t c = 0; c < lattice.class_count(); ++c) {
    if (hits[c].attaining.empty()) continue;
    const auto& g = lattice.representative(c);
    found.push_back(g);
    out.exceptional.classes.push_back({g.order(), generator_strings(g)});
  }
  rep.parameters["subgroup_classes"] = lattice.class_count();
  rep.parameters["target"] = target.str();
  rep.witnesses.push_back(out.exceptional.to_json());

  std::vector<PermutationGroup> expected;
  for (const auto& gens : known_exceptional_generators(n)) {
    std::vector<Permutation> perms;
    for (const auto& s : gens) perms.push_back(parse_cycles(s, n));
    expected.push_back(PermutationGroup::closure(n, std::move(perms)));
  }

  // Match computed classes to the published ones; lattice classes are
  // pairwise non-conjugate, so a perfect matching is a bijection.
  std::vector<bool> used(found.size(), false);
  for (const auto& e : expected) {
    bool matched = false;
    for (std::size_t i = 0; i < found.size() && !matched; ++i) {
      if (!used[i] && are_conjugate_subgroups(found[i], e)) used[i] = matched = true;
    }
    if (!matched) rep.refute({{"missing_class", detail::subgroup_json(e)}});
  }
  for (std::size_t i = 0; i < found.size(); ++i) {
    if (!used[i]) rep.refute({{"unexpected_class", detail::subgroup_json(found[i])}});
  }
  return out;
}

enum class DivisibilityMode { Denominator, AltProportion };

struct DivisibilityOptions {
  DivisibilityMode mode = DivisibilityMode::Denominator;
  unsigned workers = 1;
};

/// Per-group check for groups G <= S_n other than A_n and S_n.
///
/// Denominator mode: the reduced denominator of D_n/n! must not divide |G|.
/// AltProportion mode: no coset of G may reach E_n/n!. When e_n does not
/// divide |G| that is immediate (coset proportions have denominators
/// dividing |G|); otherwise the cosets are enumerated.
inline VerificationReport denominator_divisibility_check(const std::vector<PermutationGroup>& groups,
                                                         const std::vector<std::string>& labels,
                                                         DivisibilityOptions opt = {}) {
  VerificationReport rep;
  rep.claim_id = opt.mode == DivisibilityMode::Denominator ? "ingest-divisibility" : "ingest-alt-proportion";
  rep.parameters = {{"groups", groups.size()},
                    {"check", opt.mode == DivisibilityMode::Denominator ? "divisibility" : "alt-proportion"}};

  const auto rows = parallel_map<Json>(groups.size(), opt.workers, [&](std::size_t i) {
    const auto& g = groups[i];
    const unsigned n = g.degree();
    Json row{{"label", i < labels.size() ? labels[i] : std::to_string(i)}, {"degree", n}, {"order", g.order()}};
    if (g.is_symmetric_group() || g.is_alternating_group()) {
      row["result"] = "skipped";
      return row;
    }
    if (opt.mode == DivisibilityMode::Denominator) {
      const BigInt d = reduced_denominator(n, Variant::Symmetric);
      row["denominator"] = to_string(d);
      row["result"] = divides(d, big(g.order())) ? "divides" : "ok";
      return row;
    }
    const BigInt e = reduced_denominator(n, Variant::Alternating);
    row["denominator"] = to_string(e);
    if (!divides(e, big(g.order()))) {
      row["result"] = "ok";
      row["by"] = "divisibility";
      return row;
    }
    if (n > 11) {
      row["result"] = "undecided";
      return row;
    }
    const auto hits = detail::cosets_attaining(g, derangement_proportion(n, Variant::Alternating));
    row["cosets_checked"] = hits.cosets;
    row["by"] = "coset-enumeration";
    if (hits.attaining.empty()) {
      row["result"] = "ok";
    } else {
      row["result"] = "attains";
      row["coset_representative"] = format_cycles(hits.attaining.front());
    }
    return row;
  });

  std::size_t skipped = 0, undecided = 0;
  for (const auto& row : rows) {
    const auto result = row["result"].get<std::string>();
    if (result == "skipped") ++skipped;
    if (result == "undecided") ++undecided;
    if (result == "divides" || result == "attains") rep.refute(row);
    rep.witnesses.push_back(row);
  }
  if (rep.status != Status::Refuted) {
    if (undecided > 0) {
      rep.status = Status::Indeterminate;
      rep.notes.push_back("coset enumeration needed beyond degree 11");
    } else if (!groups.empty() && skipped == groups.size()) {
      rep.status = Status::Skipped;
      rep.notes.push_back("every group is A_n or S_n");
    }
  }
  return rep;
}

}  // namespace derange
