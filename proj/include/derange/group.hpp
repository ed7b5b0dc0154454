#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "permutation.hpp"
#include "rational.hpp"

namespace derange {

inline constexpr std::size_t kDefaultOrderCap = 10'000'000;

class ClosureCapExceeded : public std::runtime_error {
 public:
  explicit ClosureCapExceeded(std::size_t cap)
      : std::runtime_error("group closure exceeded order cap " + std::to_string(cap)) {}
};

/// A finite permutation group with its full element set materialized.
///
/// Elements are kept sorted (lexicographic by images), which gives a
/// deterministic enumeration order and O(log |G|) membership.
class PermutationGroup {
 public:
  PermutationGroup() : PermutationGroup(trivial(0)) {}

  /// Breadth-first closure of `generators` under composition.
  static PermutationGroup closure(unsigned degree, std::vector<Permutation> generators,
                                  std::size_t order_cap = kDefaultOrderCap) {
    for (const auto& g : generators) {
      if (g.degree() != degree) throw std::invalid_argument("closure: generator degree mismatch");
    }
    const Permutation id(degree);
    std::unordered_set<Permutation, PermutationHash> seen{id};
    std::vector<Permutation> order{id};
    for (std::size_t head = 0; head < order.size(); ++head) {
      for (const auto& g : generators) {
        Permutation next = order[head] * g;
        if (seen.insert(next).second) {
          if (seen.size() > order_cap) throw ClosureCapExceeded(order_cap);
          order.push_back(next);
        }
      }
    }
    std::sort(order.begin(), order.end());
    return PermutationGroup(degree, std::move(generators), std::move(order));
  }

  /// Adopts an element set already known to be a group (used by the lattice,
  /// which produces subgroups through its own certified closure).
  static PermutationGroup from_elements(unsigned degree, std::vector<Permutation> generators,
                                        std::vector<Permutation> elements) {
    std::sort(elements.begin(), elements.end());
    return PermutationGroup(degree, std::move(generators), std::move(elements));
  }

  static PermutationGroup trivial(unsigned degree) {
    return PermutationGroup(degree, {}, {Permutation(degree)});
  }

  static PermutationGroup symmetric(unsigned degree) {
    std::vector<Permutation> gens;
    if (degree >= 2) gens.push_back(transposition(degree, 1, 2));
    if (degree >= 3) gens.push_back(long_cycle(degree, degree));
    return closure(degree, gens);
  }

  /// A_n generated by the 3-cycles (1 2 i).
  static PermutationGroup alternating(unsigned degree) {
    std::vector<Permutation> gens;
    for (unsigned i = 3; i <= degree; ++i) {
      gens.push_back(parse_cycles("(1,2," + std::to_string(i) + ")", degree));
    }
    return closure(degree, gens);
  }

  unsigned degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return generators_; }
  const std::vector<Permutation>& elements() const { return elements_; }
  std::size_t order() const { return elements_.size(); }

  bool contains(const Permutation& p) const {
    return std::binary_search(elements_.begin(), elements_.end(), p);
  }

  bool is_subgroup_of(const PermutationGroup& other) const {
    return std::includes(other.elements_.begin(), other.elements_.end(), elements_.begin(),
                         elements_.end());
  }

  bool is_symmetric_group() const { return order() == factorial_u64(degree_); }

  bool is_alternating_group() const {
    if (degree_ < 2) return is_symmetric_group();
    if (order() != factorial_u64(degree_) / 2) return false;
    return std::all_of(elements_.begin(), elements_.end(), [](const Permutation& p) { return p.sign() == 1; });
  }

  /// tau G tau^-1
  PermutationGroup conjugated_by(const Permutation& tau) const {
    std::vector<Permutation> gens, elts;
    gens.reserve(generators_.size());
    elts.reserve(elements_.size());
    for (const auto& g : generators_) gens.push_back(g.conjugated_by(tau));
    for (const auto& g : elements_) elts.push_back(g.conjugated_by(tau));
    return from_elements(degree_, std::move(gens), std::move(elts));
  }

  /// Multiset of element cycle types: cycle type -> count.
  std::map<std::vector<unsigned>, std::size_t> cycle_type_census() const {
    std::map<std::vector<unsigned>, std::size_t> census;
    for (const auto& g : elements_) ++census[g.cycle_type()];
    return census;
  }

  friend bool operator==(const PermutationGroup& a, const PermutationGroup& b) {
    return a.degree_ == b.degree_ && a.elements_ == b.elements_;
  }

 private:
  PermutationGroup(unsigned degree, std::vector<Permutation> generators, std::vector<Permutation> elements)
      : degree_(degree), generators_(std::move(generators)), elements_(std::move(elements)) {}

  unsigned degree_;
  std::vector<Permutation> generators_;
  std::vector<Permutation> elements_;
};

/// Orbits of the group on {1..n}, each sorted, ordered by least point.
inline std::vector<std::vector<unsigned>> orbits(const PermutationGroup& g) {
  const unsigned n = g.degree();
  std::vector<int> orbit_of(n + 1, -1);
  std::vector<std::vector<unsigned>> out;
  for (unsigned start = 1; start <= n; ++start) {
    if (orbit_of[start] >= 0) continue;
    const int id = static_cast<int>(out.size());
    std::vector<unsigned> orbit{start};
    orbit_of[start] = id;
    for (std::size_t head = 0; head < orbit.size(); ++head) {
      for (const auto& gen : g.generators()) {
        const unsigned y = gen(orbit[head]);
        if (orbit_of[y] < 0) {
          orbit_of[y] = id;
          orbit.push_back(y);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    out.push_back(std::move(orbit));
  }
  return out;
}

inline bool is_transitive(const PermutationGroup& g) { return orbits(g).size() <= 1; }

/// The right coset G * representative = { g * representative : g in G }.
struct Coset {
  const PermutationGroup* group;
  Permutation representative;

  std::size_t size() const { return group->order(); }

  std::vector<Permutation> elements() const {
    std::vector<Permutation> out;
    out.reserve(size());
    for (const auto& g : group->elements()) out.push_back(g * representative);
    return out;
  }
};

/// Number of derangements in G * sigma. g * sigma fixes x iff g(sigma(x)) = x,
/// i.e. iff g and sigma^-1 agree at sigma(x); so count g that agree nowhere
/// with sigma^-1.
inline std::size_t coset_derangement_count(const PermutationGroup& group, const Permutation& rep) {
  const Permutation inv = rep.inverse();
  std::size_t count = 0;
  for (const auto& g : group.elements()) count += g.agrees_nowhere(inv);
  return count;
}

inline ExactRational coset_derangement_proportion(const Coset& c) {
  return ExactRational(BigInt(static_cast<unsigned long>(coset_derangement_count(*c.group, c.representative))),
                       BigInt(static_cast<unsigned long>(c.size())));
}

/// Calls visit(representative) once for every right coset of G in S_n.
/// Representatives are the lexicographically least element of each coset.
template <typename Visit>
void for_each_right_coset(const PermutationGroup& group, Visit&& visit) {
  const unsigned n = group.degree();
  if (n > 11) throw std::invalid_argument("for_each_right_coset: degree too large to enumerate S_n");
  const std::uint64_t total = factorial_u64(n);
  std::vector<bool> covered(total, false);
  for (std::uint64_t r = 0; r < total; ++r) {
    if (covered[r]) continue;
    const Permutation sigma = unrank(n, r);
    for (const auto& g : group.elements()) covered[rank(g * sigma)] = true;
    visit(sigma);
  }
}

}  // namespace derange
