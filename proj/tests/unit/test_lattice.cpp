#include <set>

#include <gtest/gtest.h>

#include <derange/lattice.hpp>

using namespace derange;

namespace {

// Oracle for n <= 5, where every subgroup of S_n is generated by two
// elements: close every pair and collect the distinct element sets.
std::set<std::vector<Permutation>> two_generated_subgroups(unsigned n) {
  std::set<std::vector<Permutation>> out;
  const auto total = factorial_u64(n);
  for (std::uint64_t a = 0; a < total; ++a)
    for (std::uint64_t b = a; b < total; ++b)
      out.insert(PermutationGroup::closure(n, {unrank(n, a), unrank(n, b)}).elements());
  return out;
}

}  // namespace

TEST(Lattice, MatchesTwoGeneratorOracle) {
  for (unsigned n = 1; n <= 5; ++n) {
    const auto lat = all_subgroups(n);
    std::set<std::vector<Permutation>> got;
    for (const auto& g : lat.subgroups) {
      EXPECT_TRUE(got.insert(g.elements()).second) << "duplicate subgroup at n=" << n;
    }
    EXPECT_EQ(got, two_generated_subgroups(n)) << n;
  }
}

TEST(Lattice, KnownCounts) {
  // Subgroups of S_n and their conjugacy classes, n = 1..6.
  const std::size_t subgroups[] = {0, 1, 2, 6, 30, 156, 1455};
  const std::size_t classes[] = {0, 1, 2, 4, 11, 19, 56};
  for (unsigned n = 1; n <= 6; ++n) {
    const auto lat = all_subgroups(n);
    EXPECT_EQ(lat.subgroups.size(), subgroups[n]) << n;
    EXPECT_EQ(lat.class_count(), classes[n]) << n;
  }
}

TEST(Lattice, DegreeSevenCounts) {
  const auto lat = all_subgroups(7);
  EXPECT_EQ(lat.subgroups.size(), 11300u);
  EXPECT_EQ(lat.class_count(), 96u);
}

TEST(Lattice, EveryMemberIsClosedAndConjugateToItsRepresentative) {
  for (unsigned n = 2; n <= 5; ++n) {
    const auto lat = all_subgroups(n);
    for (std::size_t i = 0; i < lat.subgroups.size(); ++i) {
      const auto& g = lat.subgroups[i];
      for (const auto& a : g.elements())
        for (const auto& b : g.generators()) ASSERT_TRUE(g.contains(a * b));
      EXPECT_TRUE(are_conjugate_subgroups(g, lat.representative(lat.class_of[i])));
    }
    // Class sizes sum to the subgroup count; representatives are the first member.
    std::size_t total = 0;
    for (std::size_t c = 0; c < lat.class_count(); ++c) {
      total += lat.class_size(c);
      EXPECT_EQ(lat.class_of[lat.class_representatives[c]], c);
      for (std::size_t i = 0; i < lat.class_representatives[c]; ++i) EXPECT_NE(lat.class_of[i], c);
    }
    EXPECT_EQ(total, lat.subgroups.size());
  }
}

TEST(Lattice, CanonicalOrderAndDeterminism) {
  const auto a = all_subgroups(5), b = all_subgroups(5);
  ASSERT_EQ(a.subgroups.size(), b.subgroups.size());
  for (std::size_t i = 0; i < a.subgroups.size(); ++i) EXPECT_EQ(a.subgroups[i], b.subgroups[i]);
  for (std::size_t i = 1; i < a.subgroups.size(); ++i) {
    const auto& x = a.subgroups[i - 1];
    const auto& y = a.subgroups[i];
    EXPECT_TRUE(x.order() < y.order() || (x.order() == y.order() && x.elements() < y.elements()));
  }
  EXPECT_EQ(a.subgroups.front().order(), 1u);
  EXPECT_TRUE(a.subgroups.back().is_symmetric_group());
}

TEST(Lattice, GreedyClassificationAgrees) {
  for (unsigned n = 3; n <= 5; ++n) {
    const auto lat = all_subgroups(n);
    const auto cc = classes_up_to_conjugacy(lat);
    EXPECT_EQ(cc.representatives.size(), lat.class_count());
    for (const auto& members : cc.members)
      for (auto i : members) EXPECT_EQ(lat.class_of[i], lat.class_of[members.front()]);
  }
}

TEST(Lattice, RejectsDegree) {
  EXPECT_THROW(all_subgroups(0), std::invalid_argument);
  EXPECT_THROW(all_subgroups(8), std::invalid_argument);
}
