#include <gtest/gtest.h>

#include <random>

#include "markoff/fricke.hpp"
#include "support/oracles.hpp"

using namespace markoff;

namespace {

const SparsePoly x = SparsePoly::variable(Var::x);
const SparsePoly y = SparsePoly::variable(Var::y);
const SparsePoly z = SparsePoly::variable(Var::z);
const SparsePoly kappa = SparsePoly::variable(Var::kappa);
const FreeWord X = FreeWord::x(), Y = FreeWord::y();

FreeWord pow(const FreeWord& w, int n) {
  FreeWord out;
  for (int i = 0; i < n; ++i) out = out * w;
  return out;
}

}  // namespace

TEST(SparsePoly, CanonicalFormAndPrinting) {
  EXPECT_EQ((x - x).to_string(), "0");
  EXPECT_TRUE((x * y - y * x).is_zero());
  EXPECT_EQ((-(x * x * y) - y * y * y + 3 * y).to_string(), "-x^2*y - y^3 + 3*y");
  EXPECT_EQ((2 * (x * z) + kappa - 7).to_string(), "2*x*z + kappa - 7");
  EXPECT_EQ(((x + 1) * (x - 1)), x * x - 1);
}

TEST(TracePoly, Examples) {
  EXPECT_EQ(trace_poly(X * Y), z);
  EXPECT_EQ(trace_poly(pow(X, 2)), x * x - 2);
  EXPECT_EQ(trace_poly(pow(X * Y, 3)), z * z * z - 3 * z);
  EXPECT_EQ(trace_poly(FreeWord()), SparsePoly(2));
  EXPECT_EQ(trace_poly(X * Y.inverse()), x * y - z);
}

TEST(TracePoly, CommutatorIdentity) {
  EXPECT_EQ(trace_poly(X * Y * X.inverse() * Y.inverse()), x * x + y * y + z * z - x * y * z - 2);
}

TEST(TracePoly, InvariantUnderInversionAndConjugation) {
  std::mt19937_64 rng(17);
  FrickeTraces traces;
  for (int i = 0; i < 40; ++i) {
    const FreeWord w = oracle::random_word(rng, 6);
    const FreeWord c = oracle::random_word(rng, 3);
    EXPECT_EQ(traces(w), traces(w.inverse()));
    EXPECT_EQ(traces(w), traces(c * w * c.inverse()));
  }
}

TEST(TracePoly, MatchesMatrixTracesOverFiniteFields) {
  std::mt19937_64 rng(2024);
  for (u64 p : {101, 257}) {
    const PrimeModulus m(p);
    FrickeTraces traces;
    for (int i = 0; i < 100; ++i) {
      const FreeWord w = oracle::random_word(rng, 8);
      const SparsePoly poly = traces(w);
      for (int j = 0; j < 5; ++j) {
        const oracle::M2 A = oracle::random_sl2(rng, p), B = oracle::random_sl2(rng, p);
        const u64 at = evaluate(poly, m, {oracle::trace(A, p), oracle::trace(B, p),
                                          oracle::trace(oracle::mul(A, B, p), p), 0});
        ASSERT_EQ(at, oracle::trace(oracle::evaluate_word(w, A, B, p), p)) << w.to_string();
      }
    }
  }
}

TEST(TracePoly, DegreeBoundForMonotoneWords) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 60; ++i) {
    FreeWord w = oracle::random_word(rng, 6);
    std::vector<Syllable> s = w.syllables();
    for (auto& syl : s) syl.exponent = std::llabs(syl.exponent) * (syl.letter == Letter::X ? 1 : (i % 2 ? 1 : -1));
    w = FreeWord(s);
    ASSERT_TRUE(w.is_monotone());
    EXPECT_LE(trace_poly(w).xz_degree(), static_cast<std::uint32_t>(std::llabs(w.exponent_sum(Letter::X))))
        << w.to_string();
  }
  for (int n = 1; n <= 8; ++n) EXPECT_EQ(trace_poly(pow(X * Y, n)).xz_degree(), static_cast<std::uint32_t>(n));
}

TEST(ReduceModI, Examples) {
  const LinearInZ r = reduce_mod_I(z * z);
  EXPECT_EQ(r.u, -(x * x) - y * y + 2 + kappa);
  EXPECT_EQ(r.v, x * y);
  const LinearInZ rx = reduce_mod_I(x);
  EXPECT_EQ(rx.u, x);
  EXPECT_TRUE(rx.v.is_zero());
}

TEST(ReduceModI, AgreesOnSurfacePoints) {
  std::mt19937_64 rng(41);
  std::vector<SparsePoly> polys{z * z * z, trace_poly(pow(X * Y, 5)), trace_poly(oracle::random_word(rng, 6)),
                                x * z * z * z * z + kappa * y * z * z - 5};
  for (int i = 0; i < 4; ++i) {
    SparsePoly f;
    for (int t = 0; t < 6; ++t)
      f.add_term({static_cast<std::uint32_t>(rng() % 3), static_cast<std::uint32_t>(rng() % 3),
                  static_cast<std::uint32_t>(rng() % 6), static_cast<std::uint32_t>(rng() % 2)},
                 BigInt(static_cast<long long>(rng() % 21) - 10));
    polys.push_back(f);
  }
  for (const auto& f : polys) {
    const LinearInZ r = reduce_mod_I(f);
    EXPECT_LE(r.u.degree_in(Var::z), 0u);
    EXPECT_LE(r.v.degree_in(Var::z), 0u);
    for (long long k : {-2LL, 0LL, 2LL}) {
      const PrimeModulus m(103);
      const PointTable t = enumerate(m, k, Space::FullSurface);
      for (int s = 0; s < 100; ++s) {
        const SurfacePoint q = t[rng() % t.size()];
        EXPECT_EQ(evaluate(f, m, q, k), m.add(evaluate(r.u, m, q, k), m.mul(evaluate(r.v, m, q, k), q.z)));
      }
    }
  }
}

TEST(Chebyshev, Examples) {
  const SparsePoly t = SparsePoly::variable(Var::x);
  EXPECT_EQ(chebyshev(ChebyshevKind::first, 0), SparsePoly(1));
  EXPECT_EQ(chebyshev(ChebyshevKind::first, 2), 2 * (t * t) - 1);
  EXPECT_EQ(chebyshev(ChebyshevKind::second, 2), 4 * (t * t) - 1);
  EXPECT_EQ(to_integral(at_half(chebyshev(ChebyshevKind::first, 3), Var::x).scaled(BigRational(2))), t * t * t - 3 * t);
}

TEST(Chebyshev, CosineIdentities) {
  for (unsigned n = 0; n < 12; ++n) {
    const auto T = chebyshev(ChebyshevKind::first, n), U = chebyshev(ChebyshevKind::second, n);
    for (double theta : {0.3, 1.1, 2.5}) {
      double c = std::cos(theta), tv = 0, uv = 0;
      for (const auto& [mono, coeff] : T.terms()) tv += coeff.convert_to<double>() * std::pow(c, mono[0]);
      for (const auto& [mono, coeff] : U.terms()) uv += coeff.convert_to<double>() * std::pow(c, mono[0]);
      EXPECT_NEAR(tv, std::cos(n * theta), 1e-9);
      EXPECT_NEAR(uv, std::sin((n + 1) * theta) / std::sin(theta), 1e-9);
    }
  }
}

TEST(CayleyLinearization, Examples) {
  const CayleyPair c23 = cayley_linearization(2, 3);
  EXPECT_EQ(c23.p, -(x * x * y) - y * y * y + 3 * y);
  EXPECT_EQ(c23.q, x * y * y - x);
  EXPECT_EQ(c23.p.coefficient_of(Var::x, 2), -y);
  EXPECT_EQ(cayley_linearization(3, 2).q, (x * x - 1) * y);
  EXPECT_THROW(cayley_linearization(2, 4), std::invalid_argument);
  EXPECT_THROW(cayley_linearization(1, 3), std::invalid_argument);
}

TEST(CayleyLinearization, LeadingCoefficient) {
  for (unsigned a = 2; a <= 7; ++a)
    for (unsigned c = 2; c <= 7; ++c) {
      if (std::gcd(a, c) != 1) continue;
      const SparsePoly lead = cayley_linearization(a, c).p.coefficient_of(Var::x, a);
      const SparsePoly expected = -to_integral(at_half(chebyshev(ChebyshevKind::second, c - 2, Var::y), Var::y));
      EXPECT_EQ(lead, expected) << a << "," << c;
    }
}

TEST(CayleyLinearization, DeterminantLeadingTerm) {
  // (a b; c d) good with det +-1
  for (auto [a, b, c, d] : std::vector<std::array<unsigned, 4>>{
           {2, 3, 3, 5}, {3, 2, 4, 3}, {2, 5, 3, 7}, {3, 5, 4, 7}, {5, 3, 3, 2}, {4, 3, 5, 4}, {3, 7, 2, 5}}) {
    const SparsePoly D = cayley_determinant(a, b, c, d);
    EXPECT_EQ(D.degree_in(Var::x), a + b - 1);
    const SparsePoly lead = D.coefficient_of(Var::x, a + b - 1);
    const int gap = static_cast<int>(d) - static_cast<int>(c);
    SparsePoly expected =
        to_integral(at_half(chebyshev(ChebyshevKind::second, static_cast<unsigned>(std::abs(gap) - 1), Var::y), Var::y));
    if (gap < 0) expected = -expected;
    EXPECT_EQ(lead, expected) << a << b << c << d;
    EXPECT_EQ(lead.degree_in(Var::y), static_cast<std::uint32_t>(std::abs(gap) - 1));
  }
}

TEST(TorusPoint, Examples) {
  const PrimeModulus m(7);
  EXPECT_EQ(torus_point(m, 2, 3), (SurfacePoint{6, 1, 5}));
  EXPECT_TRUE(on_surface(m, 2, torus_point(m, 2, 3)));
  EXPECT_EQ(torus_point(m, 1, 1), (SurfacePoint{2, 2, 2}));
  auto [d, e] = torus_action(m, generator_matrix(Generator::V), 2, 3);
  EXPECT_EQ(d, 2u);
  EXPECT_EQ(e, 6u);
  EXPECT_EQ(torus_point(m, d, e), (SurfacePoint{6, 5, 1}));
  EXPECT_EQ(apply_generator(m, Generator::V, {6, 1, 5}), (SurfacePoint{6, 5, 1}));
  EXPECT_THROW(torus_point(m, 0, 3), std::invalid_argument);
}

TEST(TorusPoint, EquivariantForEveryGenerator) {
  for (u64 p : {5, 13, 31}) {
    const PrimeModulus m(p);
    for (Generator g : kAllGenerators) {
      if (is_sign_change(g)) continue;
      for (u64 d = 1; d < p; ++d)
        for (u64 e = 1; e < p; ++e) {
          auto [d2, e2] = torus_action(m, generator_matrix(g), d, e);
          ASSERT_EQ(apply_generator(m, g, torus_point(m, d, e)), torus_point(m, d2, e2)) << generator_token(g);
        }
    }
  }
}

TEST(VerifyWordAction, Examples) {
  const PrimeModulus m11(11);
  // V sends y to z, the trace of XY
  EXPECT_TRUE(verify_word_action(X * Y, {Generator::V}, m11, -2, 500, 1));
  EXPECT_TRUE(verify_word_action(X, {}, m11, -2, 50, 0));
  const GenWord w = parse_word("U2 V U V");
  const FreeAutomorphism a = point_map_automorphism(w);
  EXPECT_TRUE(verify_word_action(a.image_x, w, PrimeModulus(23), -2, 200, 0, 5));
  EXPECT_TRUE(verify_word_action(a.image_y, w, PrimeModulus(23), -2, 200, 1, 5));
  EXPECT_FALSE(verify_word_action(Y, w, PrimeModulus(23), -2, 200, 0, 5));
}
