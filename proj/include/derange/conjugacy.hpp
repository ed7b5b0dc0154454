#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "group.hpp"

namespace derange {

namespace detail {

/// Per-point invariant preserved by conjugation: for point x, the histogram of
/// the length of the cycle through x, taken over all group elements.
inline std::vector<std::vector<std::size_t>> point_profiles(const PermutationGroup& g) {
  const unsigned n = g.degree();
  std::vector<std::vector<std::size_t>> prof(n, std::vector<std::size_t>(n + 1, 0));
  for (const auto& e : g.elements()) {
    std::array<bool, kMaxDegree> seen{};
    for (unsigned i = 0; i < n; ++i) {
      if (seen[i]) continue;
      std::vector<unsigned> members;
      for (unsigned j = i; !seen[j]; j = e.image0(j)) {
        seen[j] = true;
        members.push_back(j);
      }
      for (unsigned j : members) ++prof[j][members.size()];
    }
  }
  return prof;
}

inline std::vector<std::size_t> orbit_sizes(const PermutationGroup& g) {
  std::vector<std::size_t> sizes;
  for (const auto& o : orbits(g)) sizes.push_back(o.size());
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

}  // namespace detail

/// Searches for tau in S_n with tau G tau^-1 = H.
///
/// Cheap invariants (order, orbit sizes, cycle-type census) only reject; a
/// positive answer always comes with an explicit tau found by backtracking.
/// tau is built point by point; a point may only be sent to a point with the
/// same cycle-length profile, and each complete tau is checked generator by
/// generator (with |G| = |H| that proves equality).
inline std::optional<Permutation> find_conjugator(const PermutationGroup& g, const PermutationGroup& h) {
  if (g.degree() != h.degree()) throw std::invalid_argument("find_conjugator: degree mismatch");
  if (g.order() != h.order()) return std::nullopt;
  if (detail::orbit_sizes(g) != detail::orbit_sizes(h)) return std::nullopt;
  if (g.cycle_type_census() != h.cycle_type_census()) return std::nullopt;

  const unsigned n = g.degree();
  const auto pg = detail::point_profiles(g);
  const auto ph = detail::point_profiles(h);

  // Assign points in orbit-BFS order so that generator images become
  // checkable early.
  std::vector<unsigned> order;
  for (const auto& o : orbits(g))
    for (unsigned x : o) order.push_back(x - 1);

  std::array<int, kMaxDegree> tau{};
  tau.fill(-1);
  std::array<bool, kMaxDegree> taken{};

  // Partial check: for each generator s and each assigned x with s(x)
  // assigned, some element of H must send tau(x) to tau(s(x)).
  std::vector<std::vector<bool>> reachable(n, std::vector<bool>(n, false));
  for (const auto& e : h.elements())
    for (unsigned i = 0; i < n; ++i) reachable[i][e.image0(i)] = true;

  std::vector<Permutation> inverses;
  for (const auto& s : g.generators()) inverses.push_back(s.inverse());

  auto consistent = [&](unsigned x) {
    for (std::size_t k = 0; k < inverses.size(); ++k) {
      const unsigned sx = g.generators()[k].image0(x);
      if (tau[sx] >= 0 && !reachable[tau[x]][tau[sx]]) return false;
      // x as the image of some assigned point
      const unsigned pre = inverses[k].image0(x);
      if (tau[pre] >= 0 && !reachable[tau[pre]][tau[x]]) return false;
    }
    return true;
  };

  auto complete = [&]() -> std::optional<Permutation> {
    std::array<std::uint8_t, kMaxDegree> img{};
    for (unsigned i = 0; i < n; ++i) img[i] = static_cast<std::uint8_t>(tau[i]);
    const Permutation t = Permutation::from_images0({img.data(), n});
    for (const auto& s : g.generators())
      if (!h.contains(s.conjugated_by(t))) return std::nullopt;
    return t;
  };

  std::optional<Permutation> found;
  auto search = [&](auto&& self, unsigned depth) -> bool {
    if (depth == n) {
      found = complete();
      return found.has_value();
    }
    const unsigned x = order[depth];
    for (unsigned y = 0; y < n; ++y) {
      if (taken[y] || pg[x] != ph[y]) continue;
      tau[x] = static_cast<int>(y);
      taken[y] = true;
      if (consistent(x) && self(self, depth + 1)) return true;
      taken[y] = false;
      tau[x] = -1;
    }
    return false;
  };
  search(search, 0);
  return found;
}

inline bool are_conjugate_subgroups(const PermutationGroup& g, const PermutationGroup& h) {
  return find_conjugator(g, h).has_value();
}

}  // namespace derange
