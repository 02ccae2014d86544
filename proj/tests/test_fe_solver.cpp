#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "lcaforms/fe_solver.hpp"

using namespace lcaforms;

namespace {

Rational q(std::int64_t n, std::int64_t d) { return make_rational(n, d); }

std::vector<std::vector<Rational>> pd_values(const SolutionSet& set) {
  std::vector<std::vector<Rational>> out;
  for (const auto& s : set.positive_definite()) out.push_back(*s.f.exact);
  return out;
}

}  // namespace

TEST(ForwardValue, Examples) {
  EXPECT_EQ(forward_value(1.0), 1.0);
  EXPECT_EQ(forward_value(0.0), 0.0);
  EXPECT_EQ(forward_value(q(1, 2)), q(1, 7));
  EXPECT_EQ(forward_value(q(1, 7)), q(1, 97));
  EXPECT_EQ(forward_value(q(1, 4)), q(1, 31));
  EXPECT_EQ(forward_value(q(1, 31)), q(1, 1921));
  EXPECT_NEAR(forward_value(0.5), 1.0 / 7.0, 1e-16);
  EXPECT_THROW(forward_value(1.5), std::domain_error);
  EXPECT_THROW(forward_value(q(-3, 2)), std::domain_error);
}

TEST(ForwardValue, RangeMonotoneAndContracting) {
  double prev = -1.0;
  for (int k = 0; k <= 1000; ++k) {
    const double t = -1.0 + 2.0 * k / 1000.0;
    const double v = forward_value(t);
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
    if (t > 0.0 && t < 1.0) {
      EXPECT_LT(v, t);
    }
    if (t >= 0.0) {
      EXPECT_GE(v, prev);
      prev = v;
    }
  }
}

TEST(HalveValue, ExamplesAndRightInverse) {
  EXPECT_EQ(halve_value(1.0), 1.0);
  EXPECT_EQ(halve_value(0.0), 0.0);
  EXPECT_NEAR(halve_value(1.0 / std::cosh(1.0)), 1.0 / std::cosh(0.5), 1e-12);
  EXPECT_THROW(halve_value(-0.1), std::domain_error);
  for (int k = 0; k <= 1000; ++k) {
    const double t = k / 1000.0;
    EXPECT_NEAR(forward_value(halve_value(t)), t, 1e-12);
  }
}

TEST(HalveValue, DescentIncreasesTowardOne) {
  for (const double t0 : {0.01, 0.3, 0.5, 0.9, 0.999}) {
    double t = t0;
    for (int n = 0; n < 30; ++n) {
      const double next = halve_value(t);
      if (t < 1.0 - 1e-15) {
        EXPECT_GT(next, t);
      }
      EXPECT_LE(next, 1.0);
      t = next;
    }
    EXPECT_NEAR(t, 1.0, 1e-6);
  }
}

TEST(ChebyshevCycles, FixedPointsCount) {
  for (std::size_t m = 1; m <= 10; ++m) {
    const auto pts = chebyshev_cycle_points(m);
    EXPECT_EQ(pts.size(), std::size_t{1} << m);
    for (const double t : pts) {
      double v = t;
      for (std::size_t k = 0; k < m; ++k) v = forward_value_b(v);
      EXPECT_LE(std::abs(v - t), 1e-10);
    }
  }
  EXPECT_EQ(chebyshev_cycle_points(1), (std::vector<double>{-0.5, 1.0}));
}

TEST(Family, Examples) {
  const FiniteAbelianGroup z4({4});
  const auto f4 = corwin_family(z4);
  ASSERT_EQ(f4.size(), 2u);
  EXPECT_EQ(f4[0].law, Dist::point(z4, 0));
  EXPECT_EQ(f4[1].law, Dist::point(z4, 2));

  const FiniteAbelianGroup z3({3});
  const auto f3 = corwin_family(z3);
  ASSERT_EQ(f3.size(), 2u);
  EXPECT_EQ(f3[0].law, Dist::point(z3, 0));
  EXPECT_EQ(f3[1].law, Dist::uniform(z3));

  const FiniteAbelianGroup z2({2});
  const auto f2 = corwin_family(z2);
  ASSERT_EQ(f2.size(), 2u);
  EXPECT_EQ(f2[0].law, Dist::point(z2, 0));
  EXPECT_EQ(f2[1].law, Dist::point(z2, 1));
}

TEST(Family, MembersSymmetricWithExactCf) {
  for (const auto& f : std::vector<std::vector<std::int64_t>>{{6}, {12}, {2, 2}, {2, 6}, {3, 3}, {2, 2, 3}}) {
    const FiniteAbelianGroup g(f);
    for (const auto& m : corwin_family(g)) {
      EXPECT_TRUE(m.law.is_symmetric());
      EXPECT_TRUE(same_values(fourier(m.law), m.cf));
      EXPECT_TRUE(compare_klebanov3(m.law).equal);
    }
  }
}

TEST(EnumerateSolutions, Z3ModeA) {
  const auto set = enumerate_solutions(FiniteAbelianGroup({3}), EquationMode::A);
  EXPECT_EQ(pd_values(set), (std::vector<std::vector<Rational>>{{1, 1, 1}, {1, 0, 0}}));
  for (const auto& s : set.positive_definite()) EXPECT_EQ(s.tag, SolutionTag::HaarCorwin);
}

TEST(EnumerateSolutions, Z4ModeA) {
  const auto set = enumerate_solutions(FiniteAbelianGroup({4}), EquationMode::A);
  const auto pd = set.positive_definite();
  ASSERT_EQ(pd.size(), 2u);
  EXPECT_EQ(*pd[0].f.exact, (std::vector<Rational>{1, 1, 1, 1}));
  EXPECT_EQ(pd[0].tag, SolutionTag::HaarCorwin);
  EXPECT_EQ(*pd[1].f.exact, (std::vector<Rational>{1, -1, 1, -1}));
  EXPECT_EQ(pd[1].tag, SolutionTag::HaarTimesOrder2);
}

TEST(EnumerateSolutions, KleinFourModeA) {
  const FiniteAbelianGroup v4({2, 2});
  const auto set = enumerate_solutions(v4, EquationMode::A);
  const auto pd = set.positive_definite();
  ASSERT_EQ(pd.size(), 4u);
  for (const auto& s : pd) {
    bool is_character = false;
    for (std::size_t x = 0; x < 4; ++x) is_character = is_character || same_values(s.f, fourier(Dist::point(v4, x)));
    EXPECT_TRUE(is_character);
  }
  bool rejected = false;
  for (const auto& s : set.candidates) {
    if (*s.f.exact == std::vector<Rational>{1, -1, -1, -1}) {
      rejected = true;
      EXPECT_EQ(s.tag, SolutionTag::NotPositiveDefinite);
    }
  }
  EXPECT_TRUE(rejected);
}

TEST(EnumerateSolutions, OracleEquivalenceModeA) {
  for (const auto& f : std::vector<std::vector<std::int64_t>>{
           {2}, {3}, {4}, {2, 2}, {2, 3}, {8}, {9}, {12}, {6}, {5}, {2, 4}, {3, 3}, {2, 2, 2}}) {
    const FiniteAbelianGroup g(f);
    const auto family = corwin_family(g);
    const auto pd = enumerate_solutions(g, EquationMode::A).positive_definite();
    ASSERT_EQ(pd.size(), family.size()) << g.to_string();
    std::vector<char> used(family.size(), 0);
    for (const auto& s : pd) {
      ASSERT_TRUE(s.match.has_value()) << g.to_string() << " " << s.f.to_string();
      EXPECT_FALSE(used[*s.match]);
      used[*s.match] = 1;
      EXPECT_EQ(*s.f.exact, *family[*s.match].cf.exact);
      EXPECT_EQ(s.tag == SolutionTag::HaarTimesOrder2, family[*s.match].shift.has_value());
    }
  }
}

TEST(EnumerateSolutions, ValuesAreSignsOrIndicator) {
  for (const auto& f : std::vector<std::vector<std::int64_t>>{{8}, {12}, {2, 3}}) {
    for (const auto& s : enumerate_solutions(FiniteAbelianGroup(f), EquationMode::A).candidates) {
      for (const auto& v : *s.f.exact) EXPECT_TRUE(v == 0 || v == 1 || v == -1);
    }
  }
}

TEST(EnumerateSolutions, RootGridValidated) {
  const FiniteAbelianGroup z4({4});
  EXPECT_THROW(enumerate_solutions(z4, EquationMode::A, {0.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(enumerate_solutions(z4, EquationMode::A, {-1.0, 0.0, 1.0, 2.0}), std::invalid_argument);
  EXPECT_NO_THROW(enumerate_solutions(z4, EquationMode::A, {-1.0, 0.0, 1.0}));
}

TEST(EnumerateSolutions, ModeBTwoPointLaws) {
  for (const auto& f : std::vector<std::vector<std::int64_t>>{{3}, {4}, {8}, {9}, {12}, {2, 3}}) {
    const FiniteAbelianGroup g(f);
    const auto pd = enumerate_solutions(g, EquationMode::B).positive_definite();
    ASSERT_FALSE(pd.empty());
    for (const auto& s : pd) {
      EXPECT_TRUE(eq_predicate(s.f, EquationMode::B).empty());
      EXPECT_EQ(s.tag, SolutionTag::TwoPointSymmetric) << g.to_string() << s.f.to_string();
      if (s.match) {
        const auto x = *s.match;
        EXPECT_TRUE(law_klebanov2(half_mix(Dist::point(g, x), Dist::point(g, g.neg(x)))).equal);
      }
    }
  }
}

TEST(EnumerateSolutions, ModeBZ3) {
  const auto pd = enumerate_solutions(FiniteAbelianGroup({3}), EquationMode::B).positive_definite();
  ASSERT_EQ(pd.size(), 2u);
  EXPECT_NEAR(pd[1].f[1].real(), -0.5, 1e-12);
}

TEST(Dalembert, Examples) {
  std::vector<std::pair<double, double>> grid;
  for (int i = 0; i < 50; ++i) {
    for (int j = 0; j < 50; ++j) grid.emplace_back(-5.0 + 0.2 * i, -5.0 + 0.2 * j);
  }
  EXPECT_LE(dalembert_check([](double s) { return std::cos(s); }, grid), 1e-12);
  EXPECT_EQ(dalembert_check([](double) { return 1.0; }, grid), 0.0);
  EXPECT_NEAR(dalembert_check([](double s) { return std::exp(-s * s); }, {{1.0, 1.0}}),
              0.7476450724155088, 1e-12);
}

TEST(Toeplitz, Examples) {
  const auto cosf = [](std::int64_t n) { return std::cos(0.3 * static_cast<double>(n)); };
  EXPECT_GE(toeplitz_pd_sections(cosf, 8), -1e-10);
  EXPECT_NEAR(toeplitz_pd_sections([](std::int64_t) { return 1.0; }, 5), 0.0, 1e-12);
  const auto bumped = [&](std::int64_t n) { return cosf(n) + (std::abs(n) == 3 ? 0.2 : 0.0); };
  EXPECT_NEAR(toeplitz_pd_sections(bumped, 8), -0.2828197094216593, 1e-9);
  EXPECT_THROW(toeplitz_pd_sections(cosf, 0), std::domain_error);
}

TEST(IntegerWindow, CosineSequencesPassAndMatch) {
  for (const double theta : {0.0, 0.3, 1.0, 2.0, std::numbers::pi}) {
    std::vector<double> odd;
    for (int k = 0; k < 6; ++k) odd.push_back(std::cos((2 * k + 1) * theta));
    const auto w = integer_window_check(propagate_mode_b_on_integers(odd, 11), 12);
    EXPECT_TRUE(w.positive_definite);
    EXPECT_LE(w.cos_deviation, 1e-6);
  }
}

TEST(IntegerWindow, PerturbedControlFails) {
  std::vector<double> odd;
  for (int k = 0; k < 6; ++k) odd.push_back(std::cos(0.3 * (2 * k + 1)));
  odd[1] += 0.2;
  const auto f = propagate_mode_b_on_integers(odd, 11);
  for (std::size_t n = 1; 2 * n < f.size(); ++n) EXPECT_NEAR(f[2 * n], 2 * f[n] * f[n] - 1, 1e-15);
  const auto w = integer_window_check(f, 12);
  EXPECT_NEAR(w.min_eigenvalue, -0.6836941976839372, 1e-9);
  EXPECT_FALSE(w.positive_definite);
}
