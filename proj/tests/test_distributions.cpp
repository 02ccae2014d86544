#include <gtest/gtest.h>

#include "lcaforms/distributions.hpp"
#include "lcaforms/suites.hpp"

using namespace lcaforms;

namespace {

const std::vector<std::vector<std::int64_t>> kGroups = {{},     {2},    {3},    {4},    {5},
                                                        {6},    {8},    {9},    {12},   {2, 2},
                                                        {2, 3}, {2, 4}, {3, 3}, {2, 2, 2}};

Rational q(std::int64_t n, std::int64_t d) { return make_rational(n, d); }

std::vector<Rational> masses(std::initializer_list<Rational> m) { return m; }

Dist symmetrize(const Dist& mu) { return half_mix(mu, reflect(mu)); }

}  // namespace

TEST(Dist, ValidatesMasses) {
  const FiniteAbelianGroup g({3});
  EXPECT_THROW(Dist(g, masses({q(1, 2), q(1, 2)})), std::invalid_argument);
  EXPECT_THROW(Dist(g, masses({q(1, 2), q(1, 2), q(1, 2)})), std::invalid_argument);
  EXPECT_THROW(Dist(g, masses({q(3, 2), q(-1, 2), 0})), std::invalid_argument);
  EXPECT_NO_THROW(Dist(g, masses({q(1, 2), q(1, 4), q(1, 4)})));
}

TEST(Convolve, PointMassesTranslate) {
  const FiniteAbelianGroup g({2, 3});
  for (std::size_t a = 0; a < g.order(); ++a) {
    for (std::size_t b = 0; b < g.order(); ++b) {
      EXPECT_EQ(convolve(Dist::point(g, a), Dist::point(g, b)), Dist::point(g, g.add(a, b)));
    }
  }
}

TEST(Convolve, HaarIdempotentAndInvariant) {
  const FiniteAbelianGroup z4({4});
  const auto m = haar_on(Subgroup::from_indices(z4, {0, 2}));
  EXPECT_EQ(convolve(m, m), m);
  EXPECT_EQ(m.masses(), masses({q(1, 2), 0, q(1, 2), 0}));
  const FiniteAbelianGroup z3({3});
  EXPECT_EQ(convolve(Dist::uniform(z3), Dist::point(z3, 1)), Dist::uniform(z3));
}

TEST(Convolve, GroupMismatchThrows) {
  EXPECT_THROW(convolve(Dist::uniform(FiniteAbelianGroup({2})), Dist::uniform(FiniteAbelianGroup({3}))),
               std::invalid_argument);
}

TEST(Convolve, CommutativeAndAssociative) {
  Rng rng(11);
  for (const auto& f : kGroups) {
    const FiniteAbelianGroup g(f);
    for (int i = 0; i < 10; ++i) {
      const auto a = random_dist(g, rng);
      const auto b = random_dist(g, rng);
      const auto c = random_dist(g, rng);
      EXPECT_EQ(convolve(a, b), convolve(b, a));
      EXPECT_EQ(convolve(convolve(a, b), c), convolve(a, convolve(b, c)));
    }
  }
}

TEST(PushforwardDouble, Examples) {
  const FiniteAbelianGroup z4({4});
  const auto mu = Dist(z4, masses({q(1, 10), q(2, 10), q(3, 10), q(4, 10)}));
  EXPECT_EQ(pushforward_double(mu).masses(), masses({q(4, 10), 0, q(6, 10), 0}));
  const FiniteAbelianGroup z3({3});
  const auto nu = Dist(z3, masses({q(1, 6), q(2, 6), q(3, 6)}));
  EXPECT_EQ(pushforward_double(nu).masses(), masses({q(1, 6), q(3, 6), q(2, 6)}));
  for (std::size_t x = 0; x < z4.order(); ++x) {
    EXPECT_EQ(pushforward_double(Dist::point(z4, x)), Dist::point(z4, z4.twice(x)));
  }
}

TEST(Fourier, Examples) {
  const FiniteAbelianGroup z4({4});
  const auto f0 = fourier(Dist::point(z4, 0));
  for (std::size_t y = 0; y < 4; ++y) EXPECT_EQ(f0[y], std::complex<double>(1.0, 0.0));

  const FiniteAbelianGroup z2({2});
  const auto fh = fourier(haar_on(Subgroup::whole(z2)));
  EXPECT_NEAR(std::abs(fh[0] - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(fh[1]), 0.0, 1e-15);

  const auto cosf = fourier(half_mix(Dist::point(z4, 1), Dist::point(z4, 3)));
  const double expect[] = {1.0, 0.0, -1.0, 0.0};
  for (std::size_t y = 0; y < 4; ++y) EXPECT_NEAR(std::abs(cosf[y] - expect[y]), 0.0, 1e-15);
}

TEST(HaarOn, ExamplesAndIndicator) {
  const FiniteAbelianGroup z3({3});
  EXPECT_EQ(haar_on(Subgroup::trivial(z3)), Dist::point(z3, 0));
  EXPECT_EQ(haar_on(Subgroup::whole(z3)).masses(), masses({q(1, 3), q(1, 3), q(1, 3)}));
  const FiniteAbelianGroup z4({4});
  const auto f = fourier(haar_on(Subgroup::from_indices(z4, {0, 2})));
  const double expect[] = {1.0, 0.0, 1.0, 0.0};
  for (std::size_t y = 0; y < 4; ++y) EXPECT_NEAR(std::abs(f[y] - expect[y]), 0.0, 1e-15);
  for (const auto& fs : kGroups) {
    const FiniteAbelianGroup g(fs);
    for (const auto& k : all_subgroups(g)) {
      EXPECT_TRUE(same_values(fourier(haar_on(k)), CharFn::indicator(annihilator(k))));
    }
  }
}

TEST(PositiveDefinite, Examples) {
  const FiniteAbelianGroup z4({4});
  EXPECT_TRUE(is_positive_definite(CharFn::from_real(z4, {1, 1, 1, 1})));
  EXPECT_TRUE(is_positive_definite(CharFn::from_real(z4, {1, -1, 1, -1})));
  const FiniteAbelianGroup v4({2, 2});
  const auto bad = CharFn::from_real(v4, {1, -1, -1, -1});
  EXPECT_FALSE(is_positive_definite(bad));
  EXPECT_NEAR(inverse_fourier(bad)[0].real(), -0.5, 1e-15);
}

TEST(PositiveDefinite, NonHermitianThrows) {
  const FiniteAbelianGroup z3({3});
  CharFn f{z3, {{1, 0}, {0, 0.5}, {0, 0.5}}, std::nullopt};
  EXPECT_THROW(is_positive_definite(f), std::invalid_argument);
}

TEST(PositiveDefinite, EveryFourierTransformPasses) {
  Rng rng(5);
  for (const auto& f : kGroups) {
    const FiniteAbelianGroup g(f);
    for (int i = 0; i < 20; ++i) EXPECT_TRUE(is_positive_definite(fourier(random_dist(g, rng))));
  }
}

TEST(Fourier, ConvolutionBecomesProduct) {
  Rng rng(1);
  for (const auto& f : kGroups) {
    const FiniteAbelianGroup g(f);
    for (int i = 0; i < 20; ++i) {
      const auto a = random_dist(g, rng);
      const auto b = random_dist(g, rng);
      EXPECT_TRUE(same_values(fourier(convolve(a, b)), pointwise_product(fourier(a), fourier(b)), 1e-12));
    }
  }
}

TEST(Fourier, SymmetricIffReal) {
  Rng rng(2);
  for (const auto& f : kGroups) {
    const FiniteAbelianGroup g(f);
    for (int i = 0; i < 40; ++i) {
      const auto raw = random_dist(g, rng);
      const auto mu = i % 2 ? symmetrize(raw) : raw;
      EXPECT_EQ(mu.is_symmetric(), fourier(mu).is_real()) << mu.to_string();
    }
  }
}

TEST(Fourier, RoundTrip) {
  Rng rng(3);
  for (const auto& f : kGroups) {
    const FiniteAbelianGroup g(f);
    for (int i = 0; i < 20; ++i) {
      const auto mu = random_dist(g, rng);
      const auto back = inverse_fourier(fourier(mu));
      for (std::size_t x = 0; x < g.order(); ++x) {
        EXPECT_NEAR(std::abs(back[x] - to_double(mu.mass(x))), 0.0, 1e-12);
      }
    }
  }
}

TEST(Fourier, RealCharacteristicFunctionInequality) {
  Rng rng(4);
  for (const auto& f : kGroups) {
    const FiniteAbelianGroup g(f);
    for (int i = 0; i < 20; ++i) {
      const auto cf = fourier(symmetrize(random_dist(g, rng)));
      for (std::size_t y1 = 0; y1 < g.order(); ++y1) {
        for (std::size_t y2 = 0; y2 < g.order(); ++y2) {
          const double lhs = 1.0 - cf[g.add(y1, y2)].real();
          const double rhs = 2.0 * ((1.0 - cf[y1].real()) + (1.0 - cf[y2].real()));
          ASSERT_LE(lhs, rhs + 1e-12);
        }
      }
    }
  }
}

TEST(UnitSet, IsSubgroupAndSupportsMeasure) {
  Rng rng(6);
  for (const auto& f : kGroups) {
    const FiniteAbelianGroup g(f);
    for (int i = 0; i < 20; ++i) {
      const auto mu = random_dist(g, rng);
      const auto e = unit_set(mu);
      const auto cf = fourier(mu);
      for (std::size_t y = 0; y < g.order(); ++y) {
        EXPECT_EQ(e.contains(y), std::abs(cf[y] - 1.0) <= 1e-12);
      }
      const auto support_group = annihilator(e);
      for (const auto x : mu.support()) EXPECT_TRUE(support_group.contains(x));
    }
  }
}

TEST(Dist, DegenerateGroup) {
  const FiniteAbelianGroup g(std::vector<std::int64_t>{});
  const auto e0 = Dist::point(g, 0);
  EXPECT_EQ(Dist::uniform(g), e0);
  EXPECT_EQ(convolve(e0, e0), e0);
  EXPECT_EQ(pushforward_double(e0), e0);
  EXPECT_TRUE(is_positive_definite(fourier(e0)));
}
