#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "markoff/cycles.hpp"
#include "support/oracles.hpp"

using namespace markoff;

TEST(Decompose, Identity) {
  const CycleSummary cs = decompose(Permutation::identity(10));
  EXPECT_EQ(cs.histogram, (std::map<std::uint64_t, std::uint64_t>{{1, 10}}));
  EXPECT_EQ(cs.longest, 1u);
  EXPECT_EQ(cs.fixed_count, 10u);
  EXPECT_EQ(cs.sign, 1);
}

TEST(Decompose, EmptyPermutation) {
  const CycleSummary cs = decompose(Permutation::identity(0));
  EXPECT_EQ(cs.longest, 0u);
  EXPECT_EQ(cs.cycle_count, 0u);
}

TEST(Decompose, MatchesOrbitWalkOnRandomPermutations) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::uint32_t> img(1 + rng() % 300);
    std::iota(img.begin(), img.end(), 0u);
    std::shuffle(img.begin(), img.end(), rng);
    const CycleSummary cs = decompose(Permutation(img));
    std::uint64_t longest = 0, total = 0;
    for (std::uint32_t i = 0; i < img.size(); ++i) longest = std::max(longest, oracle::orbit_length(img, i));
    for (const auto& [len, count] : cs.histogram) total += len * count;
    EXPECT_EQ(cs.longest, longest);
    EXPECT_EQ(total, img.size());
    // sign from the inversion count
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < img.size(); ++i)
      for (std::size_t j = i + 1; j < img.size(); ++j) inversions += img[i] > img[j];
    EXPECT_EQ(cs.sign, inversions % 2 == 0 ? 1 : -1);
  }
}

TEST(Decompose, InvolutionSignFromFixedPoints) {
  for (u64 p : {7, 11, 13, 29}) {
    const PointTable t = enumerate(PrimeModulus(p), -2, Space::NOrbitQuotient);
    const CycleSummary cs = decompose(compile({Generator::M1}, t));
    EXPECT_LE(cs.longest, 2u);
    const std::uint64_t r = (t.size() - cs.fixed_count) / 2;
    EXPECT_EQ(cs.sign, r % 2 == 0 ? 1 : -1);
  }
}

TEST(LongestOrbit, EmptyWordIsOne) {
  EXPECT_EQ(longest_orbit({}, PrimeModulus(11), -2, Space::NOrbitQuotient), 1u);
  EXPECT_EQ(longest_orbit({}, PrimeModulus(101), -2, Space::NOrbitQuotient), 1u);
}

TEST(LongestOrbit, MatchesIndependentOrbitWalk) {
  for (const char* word : {"U2 V U V", "U2 V2 U V", "U V", "V3 U m1", "s12 U"}) {
    for (u64 p : {5, 7, 11, 13, 23, 37}) {
      const GenWord w = parse_word(word);
      EXPECT_EQ(longest_orbit(w, PrimeModulus(p), -2, Space::NOrbitQuotient), oracle::longest_orbit_by_walking(w, p))
          << word << " p=" << p;
    }
  }
}

TEST(LongestOrbit, InvariantUnderConjugationByRotation) {
  const GenWord w = parse_word("U2 V2 U V3");
  for (u64 p : {101, 211, 307}) {
    const PointTable t = enumerate(PrimeModulus(p), -2, Space::NOrbitQuotient);
    const std::uint64_t base = longest_orbit(w, t);
    GenWord r = w;
    for (std::size_t k = 0; k < w.size(); ++k) {
      std::rotate(r.begin(), r.begin() + 1, r.end());
      EXPECT_EQ(longest_orbit(r, t), base);
    }
  }
}

TEST(FixedPoints, MarkoffMoveExamples) {
  EXPECT_EQ(fixed_points({Generator::M1}, PrimeModulus(13), -2, Space::Punctured).size(), 8u);
  EXPECT_EQ(fixed_points({Generator::M1}, PrimeModulus(7), -2, Space::Punctured).size(), 4u);
  EXPECT_EQ(fixed_points({Generator::M1}, PrimeModulus(5), -2, Space::Punctured).size(), 0u);
}

TEST(FixedPoints, MarkoffMoveClosedFormUpTo500) {
  for (u64 p = 5; p <= 500; p += 2) {
    if (!is_prime(p)) continue;
    const PointTable t = enumerate(PrimeModulus(p), -2, Space::Punctured);
    const std::size_t expected = p % 4 == 1 ? p - 5 : p - 3;
    for (Generator m : {Generator::M1, Generator::M2, Generator::M3})
      EXPECT_EQ(fixed_points({m}, t).size(), expected) << "p=" << p << " " << generator_token(m);
  }
}

TEST(FixedPoints, AreFixedAndSorted) {
  const PrimeModulus m(29);
  const GenWord w = parse_word("U V2");
  const auto pts = fixed_points(w, m, 0, Space::FullSurface);
  EXPECT_TRUE(std::is_sorted(pts.begin(), pts.end()));
  for (const auto& q : pts) EXPECT_EQ(apply_word(m, w, q), q);
}

TEST(ParityProfile, Examples) {
  const ParityProfile p11 = parity_profile(PrimeModulus(11));
  EXPECT_EQ(p11.m_sign, 1);
  EXPECT_EQ(p11.swap_sign, -1);
  EXPECT_FALSE(p11.all_even);
  const ParityProfile p19 = parity_profile(PrimeModulus(19));
  EXPECT_EQ(p19.m_sign, 1);
  EXPECT_EQ(p19.swap_sign, 1);
  EXPECT_TRUE(p19.all_even);
  const ParityProfile p5 = parity_profile(PrimeModulus(5));
  EXPECT_EQ(p5.m_sign, -1);
  EXPECT_FALSE(p5.all_even);
  EXPECT_THROW(parity_profile(PrimeModulus(3)), std::invalid_argument);
}

TEST(ParityProfile, CongruenceRulesUpTo200) {
  for (u64 p = 5; p <= 200; p += 2) {
    if (!is_prime(p)) continue;
    const ParityProfile pp = parity_profile(PrimeModulus(p));
    EXPECT_EQ(pp.m_sign == 1, p % 8 == 3) << p;
    if (p % 8 == 3) {
      EXPECT_EQ(pp.swap_sign == 1, p % 16 == 3) << p;
    }
    EXPECT_EQ(pp.all_even, p % 16 == 3) << p;
  }
}

TEST(Sign, IsMultiplicative) {
  std::mt19937_64 rng(9);
  const std::vector<Generator> alphabet{Generator::U, Generator::V, Generator::Uinv, Generator::M1, Generator::Swap13};
  const PointTable t = enumerate(PrimeModulus(43), -2, Space::NOrbitQuotient);
  for (int i = 0; i < 30; ++i) {
    GenWord a(rng() % 6), b(rng() % 6);
    for (auto& g : a) g = alphabet[rng() % alphabet.size()];
    for (auto& g : b) g = alphabet[rng() % alphabet.size()];
    GenWord ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    EXPECT_EQ(decompose(compile(ab, t)).sign, decompose(compile(a, t)).sign * decompose(compile(b, t)).sign);
  }
}
