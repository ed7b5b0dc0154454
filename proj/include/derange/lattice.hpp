#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "conjugacy.hpp"
#include "group.hpp"

namespace derange {

inline constexpr unsigned kMaxLatticeDegree = 7;

/// Every subgroup of S_n, each exactly once, grouped into conjugacy classes.
///
/// Subgroups are in canonical order: by order, then by the lexicographically
/// least sorted element list. The representative of a class is its first
/// member in that order.
struct SubgroupLattice {
  unsigned degree = 0;
  std::vector<PermutationGroup> subgroups;
  std::vector<std::size_t> class_representatives;  // indices into subgroups
  std::vector<std::size_t> class_of;               // subgroup index -> class index

  std::size_t class_count() const { return class_representatives.size(); }
  const PermutationGroup& representative(std::size_t cls) const {
    return subgroups[class_representatives[cls]];
  }
  std::size_t class_size(std::size_t cls) const {
    return static_cast<std::size_t>(std::count(class_of.begin(), class_of.end(), cls));
  }
};

namespace detail {

/// S_n with elements identified by Lehmer rank (fits in 16 bits for n <= 8).
class RankedSymmetricGroup {
 public:
  using Code = std::uint16_t;

  explicit RankedSymmetricGroup(unsigned n) : n_(n), size_(factorial_u64(n)) {
    perms_.reserve(size_);
    for (std::uint64_t r = 0; r < size_; ++r) perms_.push_back(unrank(n, r));
  }

  unsigned degree() const { return n_; }
  std::size_t size() const { return size_; }
  const Permutation& perm(Code c) const { return perms_[c]; }
  Code code(const Permutation& p) const { return static_cast<Code>(rank(p)); }
  Code multiply(Code a, Code b) const { return code(perms_[a] * perms_[b]); }
  Code conjugate(Code x, Code tau) const { return code(perms_[x].conjugated_by(perms_[tau])); }
  Code identity() const { return 0; }

 private:
  unsigned n_;
  std::size_t size_;
  std::vector<Permutation> perms_;
};

using CodeSet = std::vector<RankedSymmetricGroup::Code>;  // sorted

struct CodeSetHash {
  std::size_t operator()(const CodeSet& s) const {
    std::uint64_t h = 0xcbf29ce484222325ULL ^ s.size();
    for (auto c : s) h = (h ^ c) * 0x100000001b3ULL;
    return static_cast<std::size_t>(h);
  }
};

struct WorkingSubgroup {
  CodeSet elements;
  std::vector<RankedSymmetricGroup::Code> generators;
  std::size_t class_id;
};

/// Extends the group with element set `base` (closed, generated by
/// `base_gens`) by `extra`, by adjoining right cosets of the base group until
/// the union is closed under right multiplication by every generator.
inline CodeSet extend_by(const RankedSymmetricGroup& sn, const CodeSet& base,
                         const std::vector<RankedSymmetricGroup::Code>& gens, std::vector<bool>& member) {
  CodeSet out = base;
  for (auto c : base) member[c] = true;
  std::vector<RankedSymmetricGroup::Code> reps{sn.identity()};
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (auto s : gens) {
      const auto x = sn.multiply(reps[i], s);
      if (member[x]) continue;
      reps.push_back(x);
      for (auto h : base) {
        const auto y = sn.multiply(h, x);
        member[y] = true;
        out.push_back(y);
      }
    }
  }
  for (auto c : out) member[c] = false;
  std::sort(out.begin(), out.end());
  return out;
}

/// Elements tau of S_n with tau K tau^-1 = K.
inline std::vector<RankedSymmetricGroup::Code> normalizer(const RankedSymmetricGroup& sn, const WorkingSubgroup& k,
                                                         std::vector<bool>& member) {
  for (auto c : k.elements) member[c] = true;
  std::vector<RankedSymmetricGroup::Code> out;
  for (std::size_t t = 0; t < sn.size(); ++t) {
    const auto tau = static_cast<RankedSymmetricGroup::Code>(t);
    bool normalizes = true;
    for (auto g : k.generators) {
      if (!member[sn.conjugate(g, tau)]) {
        normalizes = false;
        break;
      }
    }
    if (normalizes) out.push_back(tau);
  }
  for (auto c : k.elements) member[c] = false;
  return out;
}

}  // namespace detail

/// All subgroups of S_n for n <= 7.
///
/// Cyclic extension over conjugacy classes: starting from the trivial group,
/// each class representative H is extended by one cyclic subgroup Z from each
/// orbit of N(H) on the cyclic subgroups of S_n not contained in H. Any
/// subgroup K != 1 equals <M, g> for a maximal subgroup M < K and g in K \ M;
/// some conjugate of M is a representative, so a conjugate of K is reached.
/// Each newly found class is materialized in full by conjugating over a
/// transversal of its normalizer.
inline SubgroupLattice all_subgroups(unsigned n) {
  using detail::CodeSet;
  using Code = detail::RankedSymmetricGroup::Code;
  if (n < 1 || n > kMaxLatticeDegree) {
    throw std::invalid_argument("all_subgroups: degree must be in 1.." + std::to_string(kMaxLatticeDegree));
  }
  const detail::RankedSymmetricGroup sn(n);
  std::vector<bool> member(sn.size(), false);

  // Cyclic subgroups of S_n, and for each element the id of the one it generates.
  std::vector<CodeSet> cyclic;
  std::vector<Code> cyclic_generator;
  std::vector<std::size_t> cyclic_of(sn.size());
  {
    std::unordered_map<CodeSet, std::size_t, detail::CodeSetHash> index;
    for (std::size_t r = 0; r < sn.size(); ++r) {
      const auto g = static_cast<Code>(r);
      CodeSet powers{sn.identity()};
      for (Code x = g; x != sn.identity(); x = sn.multiply(x, g)) powers.push_back(x);
      std::sort(powers.begin(), powers.end());
      auto [it, inserted] = index.try_emplace(powers, cyclic.size());
      if (inserted) {
        cyclic.push_back(std::move(powers));
        cyclic_generator.push_back(g);
      }
      cyclic_of[r] = it->second;
    }
  }

  std::vector<detail::WorkingSubgroup> all;
  std::unordered_map<CodeSet, std::size_t, detail::CodeSetHash> seen;
  std::vector<std::size_t> reps;  // index into `all` of the discovered representative per class

  auto add_class = [&](const CodeSet& elements, const std::vector<Code>& gens) {
    const std::size_t class_id = reps.size();
    reps.push_back(all.size());
    detail::WorkingSubgroup rep{elements, gens, class_id};
    const auto norm = detail::normalizer(sn, rep, member);
    // Left transversal of N(K): tau and tau*m (m in N(K)) give the same conjugate.
    std::vector<bool> covered(sn.size(), false);
    for (std::size_t t = 0; t < sn.size(); ++t) {
      if (covered[t]) continue;
      const auto tau = static_cast<Code>(t);
      for (auto m : norm) covered[sn.multiply(tau, m)] = true;
      detail::WorkingSubgroup conj{{}, {}, class_id};
      conj.elements.reserve(elements.size());
      for (auto x : elements) conj.elements.push_back(sn.conjugate(x, tau));
      for (auto g : gens) conj.generators.push_back(sn.conjugate(g, tau));
      std::sort(conj.elements.begin(), conj.elements.end());
      if (seen.try_emplace(conj.elements, all.size()).second) all.push_back(std::move(conj));
    }
  };

  add_class(CodeSet{sn.identity()}, {});
  for (std::size_t cls = 0; cls < reps.size(); ++cls) {
    const detail::WorkingSubgroup h = all[reps[cls]];
    const auto norm = detail::normalizer(sn, h, member);
    for (auto c : h.elements) member[c] = true;
    std::vector<bool> visited(cyclic.size(), false);
    std::vector<std::size_t> orbit_reps;
    for (std::size_t z = 0; z < cyclic.size(); ++z) {
      if (visited[z]) continue;
      for (auto tau : norm) visited[cyclic_of[sn.conjugate(cyclic_generator[z], tau)]] = true;
      if (!member[cyclic_generator[z]]) orbit_reps.push_back(z);
    }
    for (auto c : h.elements) member[c] = false;

    for (auto z : orbit_reps) {
      std::vector<Code> gens = h.generators;
      gens.push_back(cyclic_generator[z]);
      CodeSet k = detail::extend_by(sn, h.elements, gens, member);
      if (seen.count(k)) continue;
      add_class(k, gens);
    }
  }

  // Canonical order.
  std::vector<std::size_t> order(all.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (all[a].elements.size() != all[b].elements.size()) return all[a].elements.size() < all[b].elements.size();
    return all[a].elements < all[b].elements;
  });

  SubgroupLattice lattice;
  lattice.degree = n;
  lattice.subgroups.reserve(all.size());
  lattice.class_of.reserve(all.size());
  std::vector<std::size_t> renumber(reps.size(), SIZE_MAX);
  for (std::size_t idx : order) {
    const auto& w = all[idx];
    std::vector<Permutation> gens, elts;
    for (auto g : w.generators) gens.push_back(sn.perm(g));
    elts.reserve(w.elements.size());
    for (auto e : w.elements) elts.push_back(sn.perm(e));
    if (renumber[w.class_id] == SIZE_MAX) {
      renumber[w.class_id] = lattice.class_representatives.size();
      lattice.class_representatives.push_back(lattice.subgroups.size());
    }
    lattice.class_of.push_back(renumber[w.class_id]);
    lattice.subgroups.push_back(PermutationGroup::from_elements(n, std::move(gens), std::move(elts)));
  }
  return lattice;
}

/// Partition of a subgroup list into conjugacy classes, computed greedily
/// with `are_conjugate_subgroups` inside buckets keyed by order and
/// cycle-type census.
struct ConjugacyClasses {
  std::vector<std::vector<std::size_t>> members;  // indices into the input list
  std::vector<PermutationGroup> representatives;  // first member of each class
};

inline ConjugacyClasses classes_up_to_conjugacy(const std::vector<PermutationGroup>& groups) {
  using Key = std::pair<std::size_t, std::map<std::vector<unsigned>, std::size_t>>;
  std::map<Key, std::vector<std::size_t>> buckets;  // key -> class ids
  ConjugacyClasses out;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    Key key{groups[i].order(), groups[i].cycle_type_census()};
    auto& bucket = buckets[key];
    bool placed = false;
    for (std::size_t cls : bucket) {
      if (are_conjugate_subgroups(out.representatives[cls], groups[i])) {
        out.members[cls].push_back(i);
        placed = true;
        break;
      }
    }
    if (!placed) {
      bucket.push_back(out.representatives.size());
      out.representatives.push_back(groups[i]);
      out.members.push_back({i});
    }
  }
  return out;
}

inline ConjugacyClasses classes_up_to_conjugacy(const SubgroupLattice& lattice) {
  return classes_up_to_conjugacy(lattice.subgroups);
}

}  // namespace derange
