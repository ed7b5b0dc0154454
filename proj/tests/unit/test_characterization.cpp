#include <gtest/gtest.h>

#include <derange/characterization.hpp>
#include <derange/dataset.hpp>

using namespace derange;

namespace {

PermutationGroup gen(unsigned n, std::initializer_list<const char*> gens) {
  std::vector<Permutation> ps;
  for (auto s : gens) ps.push_back(parse_cycles(s, n));
  return PermutationGroup::closure(n, ps);
}

// Oracle: proportion over every element of S_n in coset G*sigma, computed by
// materializing the coset and testing each permutation directly.
ExactRational direct_proportion(const PermutationGroup& g, const Permutation& sigma) {
  std::size_t der = 0;
  for (const auto& h : g.elements()) der += (h * sigma).fixed_point_count() == 0;
  return ExactRational(BigInt(static_cast<unsigned long>(der)), BigInt(static_cast<unsigned long>(g.order())));
}

}  // namespace

TEST(VerifySymmetric, SmallDegrees) {
  for (unsigned n = 1; n <= 6; ++n) {
    const auto rep = verify_symmetric_characterization(n);
    EXPECT_EQ(rep.status, Status::Verified) << n;
    EXPECT_FALSE(rep.counterexample.has_value());
    // Exactly one attaining pair: S_n with its single coset.
    std::size_t attaining = 0;
    for (const auto& w : rep.witnesses) attaining += w.contains("coset_representative");
    EXPECT_EQ(attaining, 1u) << n;
  }
}

TEST(VerifySymmetric, AlternatingGap) {
  for (unsigned n : {5u, 6u}) {
    const auto rep = verify_symmetric_characterization(n);
    const auto& gap = rep.witnesses.back();
    EXPECT_EQ(gap["alternating_gap"], gap["expected_gap"]);
  }
}

TEST(VerifySymmetric, CrossCheckAgainstDirectCosetEnumeration) {
  // Every subgroup (not just class representatives) of S_4 and S_5.
  for (unsigned n = 4; n <= 5; ++n) {
    const auto lat = all_subgroups(n);
    const auto target = derangement_proportion(n, Variant::Symmetric);
    for (const auto& g : lat.subgroups) {
      for_each_right_coset(g, [&](const Permutation& sigma) {
        const auto p = direct_proportion(g, sigma);
        EXPECT_EQ(p, coset_derangement_proportion(Coset{&g, sigma}));
        if (p == target) EXPECT_TRUE(g.is_symmetric_group());
      });
    }
  }
}

TEST(VerifyAlternating, ExceptionalOrders) {
  using V = std::vector<std::size_t>;
  EXPECT_EQ(verify_alternating_characterization(1).exceptional.orders(), V{});
  EXPECT_EQ(verify_alternating_characterization(2).exceptional.orders(), V{});
  EXPECT_EQ(verify_alternating_characterization(3).exceptional.orders(), V{});
  const auto r4 = verify_alternating_characterization(4);
  EXPECT_EQ(r4.exceptional.orders(), (V{4, 4, 8}));
  EXPECT_EQ(r4.report.status, Status::Verified);
  const auto r5 = verify_alternating_characterization(5);
  EXPECT_EQ(r5.exceptional.orders(), (V{5, 10, 20}));
  EXPECT_EQ(r5.report.status, Status::Verified);
  const auto r6 = verify_alternating_characterization(6);
  EXPECT_EQ(r6.exceptional.orders(), (V{36, 36}));
  EXPECT_EQ(r6.report.status, Status::Verified);
}

TEST(VerifyAlternating, MissingExpectedClassRefutes) {
  // Degree 6 has two order-36 classes; the check must also confirm they are the listed ones.
  const auto r6 = verify_alternating_characterization(6);
  ASSERT_EQ(r6.exceptional.classes.size(), 2u);
  std::vector<PermutationGroup> found;
  for (const auto& c : r6.exceptional.classes) {
    std::vector<Permutation> ps;
    for (const auto& s : c.generator_strings) ps.push_back(parse_cycles(s, 6));
    found.push_back(PermutationGroup::closure(6, ps));
  }
  EXPECT_FALSE(are_conjugate_subgroups(found[0], found[1]));
  const auto listed = gen(6, {"(1623)(45)", "(12)(36)", "(124)(365)", "(142)(365)"});
  EXPECT_TRUE(are_conjugate_subgroups(found[0], listed) || are_conjugate_subgroups(found[1], listed));
}

TEST(DivisibilityCheck, SubgroupsOfS5) {
  const auto lat = all_subgroups(5);
  std::vector<PermutationGroup> reps;
  std::vector<std::string> labels;
  for (std::size_t c = 0; c < lat.class_count(); ++c) {
    reps.push_back(lat.representative(c));
    labels.push_back("class" + std::to_string(c));
  }
  const auto rep = denominator_divisibility_check(reps, labels);
  EXPECT_EQ(rep.status, Status::Verified);
  std::size_t skipped = 0;
  for (const auto& w : rep.witnesses) skipped += w["result"] == "skipped";
  EXPECT_EQ(skipped, 2u);
}

TEST(DivisibilityCheck, SkipsAndRefutes) {
  const auto a5 = PermutationGroup::alternating(5);
  EXPECT_EQ(denominator_divisibility_check({a5}, {"A5"}).status, Status::Skipped);
  const auto d8 = gen(4, {"(1234)", "(13)"});
  const auto rep = denominator_divisibility_check({d8}, {"D8"});
  EXPECT_EQ(rep.status, Status::Refuted);
  ASSERT_TRUE(rep.counterexample.has_value());
  EXPECT_EQ((*rep.counterexample)["label"], "D8");
}

TEST(DivisibilityCheck, AltProportionModeEnumeratesWhenNeeded) {
  DivisibilityOptions opt;
  opt.mode = DivisibilityMode::AltProportion;
  // D_10 in S_5: e_5 = 5 divides 10, and the identity coset attains 2/5.
  const auto d10 = gen(5, {"(12345)", "(25)(34)"});
  const auto rep = denominator_divisibility_check({d10}, {"D10"}, opt);
  EXPECT_EQ(rep.status, Status::Refuted);
  EXPECT_EQ(rep.witnesses[0]["by"], "coset-enumeration");
  // S_4 x S_1 style intransitive subgroup of S_5 of order 24: 5 does not divide 24.
  const auto s4 = gen(5, {"(12)", "(1234)"});
  const auto ok = denominator_divisibility_check({s4}, {"S4"}, opt);
  EXPECT_EQ(ok.status, Status::Verified);
  EXPECT_EQ(ok.witnesses[0]["by"], "divisibility");
}

TEST(DivisibilityCheck, PrimitiveFixture) {
  const auto gs = ingest_group_file(std::string(DERANGE_TEST_DATA) + "/primitive_8_11.grp");
  std::vector<PermutationGroup> groups;
  std::vector<std::string> labels;
  for (const auto& g : gs) groups.push_back(g.group), labels.push_back(g.entry.label);
  EXPECT_EQ(denominator_divisibility_check(groups, labels).status, Status::Verified);
  DivisibilityOptions opt;
  opt.mode = DivisibilityMode::AltProportion;
  opt.workers = 4;
  EXPECT_EQ(denominator_divisibility_check(groups, labels, opt).status, Status::Verified);
}

TEST(DivisibilityCheck, ParallelMatchesSerial) {
  const auto lat = all_subgroups(5);
  std::vector<std::string> labels;
  DivisibilityOptions serial, parallel;
  serial.mode = parallel.mode = DivisibilityMode::AltProportion;
  parallel.workers = 8;
  const auto a = denominator_divisibility_check(lat.subgroups, labels, serial);
  const auto b = denominator_divisibility_check(lat.subgroups, labels, parallel);
  EXPECT_EQ(a.to_record().dump(), b.to_record().dump());
}
