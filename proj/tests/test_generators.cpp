#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "support.hpp"

namespace w1fl {
namespace {

using testing::q;
using testing::qs;

TEST(Generators, WorstCaseThree) {
  const auto p = worst_case_params<Rational>(3);
  EXPECT_EQ(p.q, qs({"1", "2", "14/3"}));
  const auto d = gen_worst_case<Rational>(3);
  EXPECT_EQ(d.ytilde, qs({"-1", "2", "-14/3", "0"}));
  EXPECT_EQ(d.atilde, qs({"0", "1", "4", "0"}));
  const auto inst = from_dual(d);
  EXPECT_EQ(inst.alpha, qs({"1", "4"}));
  EXPECT_EQ(inst.y, qs({"3", "-20/3", "14/3"}));
}

TEST(Generators, WorstCaseFour) {
  const auto p = worst_case_params<Rational>(4);
  EXPECT_EQ(p.g[3], q("5/3"));
  EXPECT_EQ(p.q[3], q("35/3"));
}

TEST(Generators, WorstCaseRecursionFromScratch) {
  // Recompute the sequences directly from their recurrences.
  const std::size_t n = 12;
  std::vector<Rational> qq{q("1"), q("2")}, gg{q("0"), q("0"), q("1/3")};
  while (gg.size() < n) gg.push_back(Rational(2 * gg.back() + 1));
  while (qq.size() < n) {
    const std::size_t k = qq.size();
    qq.push_back(Rational(2 * qq[k - 1] - qq[k - 2] + 2 * gg[k] + 1));
  }
  const auto d = gen_worst_case<Rational>(n);
  for (std::size_t i = 1; i <= n; ++i) {
    const Rational want = i % 2 == 0 ? qq[i - 1] : Rational(-qq[i - 1]);
    EXPECT_EQ(d.ytilde[i - 1], want) << i;
    EXPECT_EQ(d.atilde[i - 1], Rational(static_cast<long>((i - 1) * (i - 1)))) << i;
  }
}

TEST(Generators, WorstCaseConditionsHold) {
  for (std::size_t n : {3u, 5u, 10u, 25u}) {
    const auto rep = check_worst_case_conditions(gen_worst_case<Rational>(n), worst_case_params<Rational>(n));
    for (const auto& c : rep.conditions) EXPECT_TRUE(c.pass) << n << ": " << c.name;
  }
}

TEST(Generators, WorstCaseConditionsCatchTampering) {
  auto d = gen_worst_case<Rational>(6);
  d.ytilde[3] = -d.ytilde[3];
  EXPECT_FALSE(check_worst_case_conditions(d, worst_case_params<Rational>(6)).all_pass());
}

TEST(Generators, WorstCaseRejectsSmallN) { EXPECT_THROW(gen_worst_case<Rational>(2), InvalidInput); }

TEST(Generators, WorstCaseEpochsStartAlternating) {
  // The first epochs of the construction are visible on the solved path.
  const auto path = testing::solve_checked(gen_worst_case<Rational>(10));
  EXPECT_GE(verify_alternating_epochs(path), 1u);
}

TEST(Generators, WorstCaseCountMatchesBruteForce) {
  // Segment counts from a fixed-gamma sweep, independent of the path solver.
  for (std::size_t n : {5u, 8u}) {
    const auto dual = gen_worst_case<double>(n);
    const auto path = testing::solve_checked(dual);
    const double top = 1.5 * path.events.back().gamma;
    EXPECT_EQ(sweep_segment_count(from_dual(dual), top, 3000), segment_count(path, true)) << n;
  }
}

TEST(Generators, RandomIsDeterministic) {
  EXPECT_EQ(gen_random<double>(50, 7), gen_random<double>(50, 7));
  EXPECT_NE(gen_random<double>(50, 7), gen_random<double>(50, 8));
  const auto a = draw_random(50, 7);
  const auto b = draw_normals(50, 7);
  EXPECT_EQ(a.y, b);
}

TEST(Generators, RandomDistributions) {
  const auto d = draw_random(200000, 1);
  for (double a : d.alpha) {
    ASSERT_GE(a, 0.0);
    ASSERT_LT(a, 1.0);
  }
  const double am = std::accumulate(d.alpha.begin(), d.alpha.end(), 0.0) / d.alpha.size();
  EXPECT_NEAR(am, 0.5, 0.005);
  const double ym = std::accumulate(d.y.begin(), d.y.end(), 0.0) / d.y.size();
  double var = 0;
  for (double v : d.y) var += (v - ym) * (v - ym);
  var /= d.y.size() - 1;
  EXPECT_NEAR(ym, 0.0, 0.03);
  EXPECT_NEAR(var, 10.0, 0.15);
}

TEST(Generators, UnitWeights) {
  const auto inst = gen_1fl(qs({"1", "2", "3", "4"}));
  EXPECT_EQ(inst.alpha, qs({"1", "1", "1"}));
  EXPECT_THROW(gen_1fl(std::vector<double>{}), InvalidInput);
}

TEST(Generators, UnitWeightPathsNeverUnfuse) {
  for (std::size_t n : {10u, 100u, 1000u}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto path = testing::solve_checked(gen_1fl(draw_normals(n, seed)));
      const auto c = event_counts(path);
      EXPECT_EQ(c.unfuse, 0u);
      EXPECT_LE(c.fuse, n - 1);
    }
  }
}

}  // namespace
}  // namespace w1fl
