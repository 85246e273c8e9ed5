#include <gtest/gtest.h>

#include "support.hpp"

namespace w1fl {
namespace {

using testing::q;
using testing::qs;

TEST(Oracle, TwoPointClosedForm) {
  const Instance<Rational> inst{qs({"0", "1"}), qs({"1"})};
  EXPECT_EQ(solve_fixed_gamma_dp(inst, q("1/4")), qs({"1/4", "3/4"}));
  EXPECT_EQ(x_from_w(solve_fixed_gamma_qp(to_dual(inst), q("1/4"))), qs({"1/4", "3/4"}));
  EXPECT_EQ(solve_fixed_gamma_dp(inst, q("3")), qs({"1/2", "1/2"}));
}

TEST(Oracle, ZeroGammaEchoesData) {
  const auto inst = gen_random<Rational>(9, 5);
  EXPECT_EQ(solve_fixed_gamma_dp(inst, Rational(0)), inst.y);
  EXPECT_EQ(x_from_w(solve_fixed_gamma_qp(to_dual(inst), Rational(0))), inst.y);
}

TEST(Oracle, WeightedPairClosedForm) {
  // Pair with weight a: each side moves by g*a until they meet at the mean.
  const Instance<Rational> inst{qs({"-1", "3"}), qs({"2"})};
  EXPECT_EQ(solve_fixed_gamma_dp(inst, q("1/2")), qs({"0", "2"}));
  EXPECT_EQ(solve_fixed_gamma_dp(inst, q("1")), qs({"1", "1"}));
}

TEST(Oracle, DpAndQpAgreeExactly) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = gen_random<Rational>(3 + seed * 2, seed);
    const auto dual = to_dual(inst);
    for (const char* g : {"1/10", "1/2", "1", "3", "20"}) {
      EXPECT_EQ(solve_fixed_gamma_dp(inst, q(g)), x_from_w(solve_fixed_gamma_qp(dual, q(g)))) << seed << " " << g;
    }
  }
}

TEST(Oracle, MatchDescentOracleOnFloats) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto inst = gen_random<double>(7, 100 + seed);
    const auto dual = to_dual(inst);
    for (double g : {0.2, 1.0, 4.0}) {
      const auto ref = testing::descent_solution(inst.y, inst.alpha, g);
      const auto dp = solve_fixed_gamma_dp(inst, g);
      const auto qp = x_from_w(solve_fixed_gamma_qp(dual, g));
      for (std::size_t t = 0; t < ref.size(); ++t) {
        EXPECT_NEAR(dp[t], ref[t], 1e-9);
        EXPECT_NEAR(qp[t], ref[t], 1e-9);
      }
    }
  }
}

TEST(Oracle, HandlesZeroWeights) {
  const Instance<Rational> inst{qs({"4", "0", "2"}), qs({"0", "1"})};
  const auto x = solve_fixed_gamma_dp(inst, q("100"));
  EXPECT_EQ(x, qs({"4", "1", "1"}));
  EXPECT_EQ(x_from_w(solve_fixed_gamma_qp(to_dual(inst), q("100"))), x);
}

TEST(Oracle, RejectsNegativeGamma) {
  const Instance<double> inst{{1.0, 2.0}, {1.0}};
  EXPECT_THROW(solve_fixed_gamma_dp(inst, -1.0), InvalidInput);
  EXPECT_THROW(solve_fixed_gamma_qp(to_dual(inst), -1.0), InvalidInput);
}

TEST(Oracle, SweepCountMatchesPathOnSmallInstance) {
  const auto inst = gen_random<double>(6, 12);
  const auto path = solve_path(to_dual(inst));
  const double top = path.events.back().gamma * 1.5;
  EXPECT_EQ(sweep_segment_count(inst, top, 400), segment_count(path, true));
}

TEST(Oracle, FusedIntervalScanFindsUnfuseInstanceSet) {
  Instance<double> inst{{0.0, -0.5, 0.5, 0.5}, {0.02, 0.5, 0.5}};
  const auto spans = fused_interval_scan(inst, 1, 10.0, 2000);
  ASSERT_EQ(spans.size(), 2u);
  EXPECT_NEAR(spans[0].lo, 25.0 / 27, 1e-6);
  EXPECT_NEAR(spans[0].hi, 25.0 / 23, 1e-6);
  EXPECT_NEAR(spans[1].lo, 25.0 / 4, 1e-6);
  EXPECT_NEAR(spans[1].hi, 10.0, 1e-6);
}

}  // namespace
}  // namespace w1fl
