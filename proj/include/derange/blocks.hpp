#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "group.hpp"

namespace derange {

/// A partition of {1..n} into blocks of equal size.
struct BlockSystem {
  unsigned degree = 0;
  std::vector<std::vector<unsigned>> blocks;  // each sorted, ordered by least point

  std::size_t block_size() const { return blocks.empty() ? 0 : blocks.front().size(); }
  std::size_t block_count() const { return blocks.size(); }
};

/// True iff every generator maps each block onto a block.
inline bool is_invariant(const BlockSystem& bs, const PermutationGroup& g) {
  std::vector<std::size_t> block_of(bs.degree + 1);
  for (std::size_t b = 0; b < bs.blocks.size(); ++b)
    for (unsigned x : bs.blocks[b]) block_of[x] = b;
  for (const auto& gen : g.generators()) {
    for (const auto& block : bs.blocks) {
      const std::size_t target = block_of[gen(block.front())];
      for (unsigned x : block)
        if (block_of[gen(x)] != target) return false;
    }
  }
  return true;
}

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(unsigned n) : parent_(n + 1) { std::iota(parent_.begin(), parent_.end(), 0u); }
  unsigned find(unsigned x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(unsigned a, unsigned b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<unsigned> parent_;
};

}  // namespace detail

/// Finest G-invariant partition in which `a` and `b` share a block, found by
/// union-find refinement under the generators. Returns nullopt when that
/// partition is the single block {1..n}.
inline std::optional<BlockSystem> minimal_block_system(const PermutationGroup& g, unsigned a, unsigned b) {
  const unsigned n = g.degree();
  if (!is_transitive(g)) throw std::invalid_argument("minimal_block_system: group is not transitive");
  if (a < 1 || b < 1 || a > n || b > n || a == b) {
    throw std::invalid_argument("minimal_block_system: seed must be two distinct points");
  }

  detail::UnionFind uf(n);
  std::vector<std::pair<unsigned, unsigned>> pending{{a, b}};
  uf.unite(a, b);
  while (!pending.empty()) {
    const auto [x, y] = pending.back();
    pending.pop_back();
    for (const auto& gen : g.generators()) {
      const unsigned gx = gen(x), gy = gen(y);
      if (uf.unite(gx, gy)) pending.emplace_back(gx, gy);
    }
  }

  std::vector<std::vector<unsigned>> by_root(n + 1);
  for (unsigned x = 1; x <= n; ++x) by_root[uf.find(x)].push_back(x);
  BlockSystem bs{n, {}};
  for (auto& block : by_root)
    if (!block.empty()) bs.blocks.push_back(std::move(block));
  if (bs.blocks.size() == 1) return std::nullopt;

  for (const auto& block : bs.blocks) {
    if (block.size() != bs.blocks.front().size()) throw std::logic_error("minimal_block_system: unequal blocks");
  }
  if (!is_invariant(bs, g)) throw std::logic_error("minimal_block_system: partition is not invariant");
  return bs;
}

/// Transitive and no nontrivial block system. Degree <= 1 counts as primitive.
inline bool is_primitive(const PermutationGroup& g) {
  if (!is_transitive(g)) return false;
  for (unsigned j = 2; j <= g.degree(); ++j) {
    if (minimal_block_system(g, 1, j)) return false;
  }
  return true;
}

}  // namespace derange
