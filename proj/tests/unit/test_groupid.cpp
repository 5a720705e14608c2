#include <gtest/gtest.h>

#include "markoff/groupid.hpp"
#include "support/oracles.hpp"

using namespace markoff;

namespace {

std::vector<std::vector<std::uint32_t>> images(const std::vector<Permutation>& gens) {
  std::vector<std::vector<std::uint32_t>> out;
  for (const auto& g : gens) out.push_back(g.image());
  return out;
}

Permutation from_cycles(std::size_t n, const std::vector<std::vector<std::uint32_t>>& cycles) {
  std::vector<std::uint32_t> img(n);
  std::iota(img.begin(), img.end(), 0u);
  for (const auto& c : cycles)
    for (std::size_t i = 0; i < c.size(); ++i) img[c[i]] = c[(i + 1) % c.size()];
  return Permutation(img);
}

}  // namespace

TEST(Transitivity, Examples) {
  EXPECT_TRUE(transitivity(5));
  EXPECT_TRUE(transitivity(7));
  EXPECT_TRUE(transitivity(47));
  EXPECT_THROW(transitivity(3), std::invalid_argument);
}

TEST(Blocks, AgreeWithBruteForceOnMarkoffGroups) {
  for (u64 p : {5, 7, 11}) {
    const PointTable t = enumerate(PrimeModulus(p), -2, Space::NOrbitQuotient);
    std::vector<Permutation> gens;
    for (Generator g : kQuotientGenerators) gens.push_back(compile({g}, t));
    ASSERT_LE(t.size(), 24u);
    EXPECT_EQ(is_primitive(gens, t.size()), !oracle::brute_force_imprimitive(images(gens), t.size())) << p;
  }
}

TEST(Blocks, AgreeWithBruteForceOnSyntheticGroups) {
  // imprimitive: the dihedral group on a hexagon preserves {0,3},{1,4},{2,5}
  std::vector<Permutation> hexagon{from_cycles(6, {{0, 1, 2, 3, 4, 5}}), from_cycles(6, {{1, 5}, {2, 4}})};
  EXPECT_FALSE(is_primitive(hexagon, 6));
  EXPECT_TRUE(oracle::brute_force_imprimitive(images(hexagon), 6));
  auto block = minimal_block(hexagon, 6, 0, 3);
  EXPECT_EQ(block, (std::vector<std::uint32_t>{0, 3}));
  EXPECT_EQ(minimal_block(hexagon, 6, 0, 1).size(), 6u);

  // wreath product S_3 wr S_4 acting on 12 points in blocks of three
  std::vector<Permutation> wreath{from_cycles(12, {{0, 1, 2}}), from_cycles(12, {{0, 1}}),
                                  from_cycles(12, {{0, 3, 6, 9}, {1, 4, 7, 10}, {2, 5, 8, 11}}),
                                  from_cycles(12, {{0, 3}, {1, 4}, {2, 5}})};
  EXPECT_FALSE(is_primitive(wreath, 12));
  EXPECT_TRUE(oracle::brute_force_imprimitive(images(wreath), 12));

  // primitive: the full cyclic group of prime order, and S_8
  std::vector<Permutation> cyclic{from_cycles(7, {{0, 1, 2, 3, 4, 5, 6}})};
  EXPECT_TRUE(is_primitive(cyclic, 7));
  EXPECT_FALSE(oracle::brute_force_imprimitive(images(cyclic), 7));
  std::vector<Permutation> sym{from_cycles(8, {{0, 1, 2, 3, 4, 5, 6, 7}}), from_cycles(8, {{0, 1}})};
  EXPECT_TRUE(is_primitive(sym, 8));
  EXPECT_FALSE(oracle::brute_force_imprimitive(images(sym), 8));

  // cyclic group of composite order 9 with blocks of size 3
  std::vector<Permutation> c9{from_cycles(9, {{0, 1, 2, 3, 4, 5, 6, 7, 8}})};
  EXPECT_FALSE(is_primitive(c9, 9));
  EXPECT_EQ(minimal_block(c9, 9, 0, 3), (std::vector<std::uint32_t>{0, 3, 6}));
}

TEST(JordanPrime, CycleTypes) {
  auto summary = [](std::size_t n, std::map<std::uint64_t, std::uint64_t> h) {
    CycleSummary cs;
    cs.n = n;
    cs.histogram = std::move(h);
    return cs;
  };
  // a 5-cycle and 5 fixed points
  EXPECT_EQ(jordan_prime(summary(10, {{1, 5}, {5, 1}})), 5u);
  // 7-cycle with n = 9: 7 > n - 3 and 7 is the only candidate
  EXPECT_FALSE(jordan_prime(summary(9, {{1, 2}, {7, 1}})));
  // two 3-cycles: no unique cycle
  EXPECT_FALSE(jordan_prime(summary(10, {{1, 4}, {3, 2}})));
  // a 6-cycle and a 4-cycle: every power splits the 6-cycle evenly
  EXPECT_FALSE(jordan_prime(summary(10, {{4, 1}, {6, 1}})));
  // a 3-cycle and a 4-cycle: the fourth power is a 3-cycle
  EXPECT_EQ(jordan_prime(summary(10, {{1, 3}, {3, 1}, {4, 1}})), 3u);
  // 2 divides both 2 and 4
  EXPECT_FALSE(jordan_prime(summary(10, {{1, 4}, {2, 1}, {4, 1}})));
  // a 9-cycle: 3 divides it twice
  EXPECT_FALSE(jordan_prime(summary(20, {{1, 11}, {9, 1}})));
}

TEST(CertifyAlternating, Examples) {
  EXPECT_EQ(certify_alternating(7), Certification::ContainsAlternating);
  EXPECT_EQ(certify_alternating(19), Certification::ContainsAlternating);
  EXPECT_EQ(certify_alternating(5), Certification::ContainsAlternating);
  EXPECT_EQ(certify_alternating(19, 0), Certification::Unknown);
}

TEST(Classify, Examples) {
  const GroupReport r11 = classify(11);
  EXPECT_EQ(r11.n, 22u);
  EXPECT_EQ(r11.classification, GroupClass::S_n);
  const GroupReport r19 = classify(19);
  EXPECT_EQ(r19.n, 76u);
  EXPECT_EQ(r19.classification, GroupClass::A_n);
  EXPECT_TRUE(r19.all_generators_even);
  EXPECT_EQ(classify(5).classification, GroupClass::S_n);
  EXPECT_THROW(classify(3), std::invalid_argument);
}

TEST(Classify, ReportInvariantsAndCongruenceRuleUpTo47) {
  for (u64 p = 5; p <= 47; p += 2) {
    if (!is_prime(p)) continue;
    const GroupReport r = classify(p);
    EXPECT_TRUE(r.transitive) << p;
    EXPECT_EQ(r.certified, Certification::ContainsAlternating) << p;
    EXPECT_EQ(r.all_generators_even, p % 16 == 3) << p;
    EXPECT_EQ(r.classification, p % 16 == 3 ? GroupClass::A_n : GroupClass::S_n) << p;
    EXPECT_LE(r.jordan_prime + 3, r.n);
    // the witness really has a prime-cycle power
    const PointTable t = enumerate(PrimeModulus(p), -2, Space::NOrbitQuotient);
    EXPECT_EQ(jordan_prime(decompose(compile(parse_word(r.jordan_word), t))), r.jordan_prime);
  }
}

TEST(Classify, DeterministicAcrossThreadCounts) {
  const GroupReport a = classify(43, 5000, 1), b = classify(43, 5000, 4);
  EXPECT_EQ(a.jordan_word, b.jordan_word);
  EXPECT_EQ(a.words_examined, b.words_examined);
}
