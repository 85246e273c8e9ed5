#include <gtest/gtest.h>

#include "support.hpp"

namespace w1fl {
namespace {

using testing::unfuse_instance;
using testing::q;
using testing::qs;
using testing::solve_checked;

TEST(Path, SinglePairFusesAtHalf) {
  // y=(0,1), alpha=(1): x = (g, 1-g) until the pair meets at g = 1/2.
  const auto path = solve_checked(to_dual(Instance<Rational>{qs({"0", "1"}), qs({"1"})}));
  ASSERT_EQ(path.events.size(), 1u);
  EXPECT_EQ(path.events[0].gamma, q("1/2"));
  EXPECT_EQ(path.events[0].index, 2u);
  EXPECT_EQ(path.events[0].kind, EventKind::BecameFree);
  for (const char* g : {"0", "1/8", "1/4", "1/2"}) {
    const Rational gg = q(g);
    EXPECT_EQ(eval_x(path, gg), (std::vector<Rational>{gg, Rational(1 - gg)})) << g;
  }
  EXPECT_EQ(eval_x(path, q("7")), qs({"1/2", "1/2"}));
}

TEST(Path, SingleObservationHasNoEvents) {
  const auto path = solve_checked(to_dual(Instance<Rational>{qs({"3/7"}), {}}));
  EXPECT_TRUE(path.events.empty());
  EXPECT_EQ(segment_count(path, true), 1u);
  EXPECT_EQ(eval_x(path, q("5")), qs({"3/7"}));
}

TEST(Path, UnfuseInstanceEventsAreExact) {
  const auto path = solve_checked(to_dual(unfuse_instance()));
  std::vector<PathEvent<Rational>> pair12;
  for (const auto& e : path.events) {
    if (e.index == 2) pair12.push_back(e);
  }
  ASSERT_EQ(pair12.size(), 3u);
  EXPECT_EQ(pair12[0].gamma, q("25/27"));
  EXPECT_EQ(pair12[0].kind, EventKind::BecameFree);
  EXPECT_EQ(pair12[1].gamma, q("25/23"));
  EXPECT_EQ(pair12[1].kind, EventKind::BecameNonFree);
  EXPECT_EQ(pair12[2].gamma, q("25/4"));
  EXPECT_EQ(pair12[2].kind, EventKind::BecameFree);
}

TEST(Path, UnfuseInstanceFusedExactlyOnTheStatedSet) {
  const auto path = solve_checked(to_dual(unfuse_instance()));
  auto fused = [&](const char* g) {
    const auto x = eval_x(path, q(g));
    return x[0] == x[1];
  };
  for (const char* g : {"25/27", "1", "25/23", "25/4", "7", "100"}) EXPECT_TRUE(fused(g)) << g;
  for (const char* g : {"0", "1/2", "9/10", "1099/1000", "2", "6"}) EXPECT_FALSE(fused(g)) << g;
}

TEST(Path, UnfuseInstanceAtOneHasFirstPairEqual) {
  const auto x = solve_fixed_gamma_dp(unfuse_instance(), q("1"));
  EXPECT_EQ(x[0], x[1]);
}

TEST(Path, AgreesWithDescentOracle) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto inst = gen_random<double>(6, seed);
    const auto path = solve_checked(inst);
    for (double g : {0.0, 0.3, 1.0, 2.5, 7.0}) {
      const auto ref = testing::descent_solution(inst.y, inst.alpha, g);
      const auto x = eval_x(path, g);
      for (std::size_t t = 0; t < x.size(); ++t) EXPECT_NEAR(x[t], ref[t], 1e-9) << "seed " << seed << " g " << g;
    }
  }
}

TEST(Path, VerifiesOnBothBackends) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto fd = to_dual(gen_random<double>(30, seed));
    const auto rd = to_dual(gen_random<Rational>(30, seed));
    const auto fp = solve_checked(fd);
    const auto rp = solve_checked(rd);
    EXPECT_TRUE(verify_path(fd, fp, 3).pass);
    EXPECT_TRUE(verify_path(rd, rp, 3).pass);
    EXPECT_EQ(fp.events.size(), rp.events.size());
  }
}

TEST(Path, ContinuousAtEveryEvent) {
  const auto inst = gen_random<Rational>(15, 4);
  const auto path = solve_checked(inst);
  for (std::size_t k = 0; k < path.events.size(); ++k) {
    const auto& g = path.events[k].gamma;
    EXPECT_EQ(eval_w_on_interval(path, k, g), eval_w_on_interval(path, k + 1, g));
  }
}

TEST(Path, EventsAreOrderedAndInterior) {
  const auto path = solve_checked(gen_random<double>(200, 9));
  for (std::size_t k = 0; k < path.events.size(); ++k) {
    EXPECT_GE(path.events[k].index, 2u);
    EXPECT_LE(path.events[k].index, 200u);
    if (k) {
      EXPECT_LE(path.events[k - 1].gamma, path.events[k].gamma);
    }
  }
}

TEST(Path, TerminalSolutionIsTheMean) {
  const auto inst = gen_random<Rational>(12, 2);
  const auto path = solve_checked(inst);
  Rational mean(0);
  for (const auto& v : inst.y) mean += v;
  mean /= 12;
  const auto x = eval_x(path, Rational(path.events.back().gamma * 2));
  for (const auto& v : x) EXPECT_EQ(v, mean);
}

TEST(Path, EqualObservationsStartFused) {
  // The middle pair is equal in y and stays fused from gamma = 0 on.
  const Instance<Rational> inst{qs({"1", "2", "2", "-3"}), qs({"1", "1", "1"})};
  const auto path = solve_checked(inst);
  EXPECT_EQ(path.initial_signs[2], 0);
  for (const auto& e : path.events) EXPECT_FALSE(e.index == 3 && e.kind == EventKind::BecameNonFree);
  EXPECT_TRUE(verify_path(to_dual(inst), path, 3).pass);
}

TEST(Path, ZeroWeightsNeverFuse) {
  const Instance<Rational> inst{qs({"1", "5", "-2", "4"}), qs({"1", "0", "2"})};
  const auto path = solve_checked(inst);
  for (const auto& e : path.events) EXPECT_NE(e.index, 3u);
  EXPECT_TRUE(verify_path(to_dual(inst), path, 3).pass);
}

TEST(Path, CandidateFormulas) {
  // Three points, middle one free between pinned ends at 0 and 0 with
  // ytilde_2 = 1 and width 1: the line is w = 0, reached by the lower edge
  // 1 - g at g = 1 (a release of a non-free point, seen from outside).
  DualInstance<Rational> d{qs({"0", "1", "0"}), qs({"0", "1", "0"})};
  BoundaryState<Rational> st(3);
  st.gamma = 0;
  st.set_sign(1, -1);
  const auto rel = candidate_release_time(st, d, 2);
  ASSERT_TRUE(rel.gamma.finite);
  EXPECT_EQ(rel.gamma.value, q("1"));
  st.remove(1);
  const auto line = interp_coeffs(st, d, 2);
  EXPECT_EQ(line.intercept, q("0"));
  EXPECT_EQ(line.slope, q("0"));
  EXPECT_FALSE(candidate_hit_time(st, d, 2).gamma.finite);
  EXPECT_THROW(interp_coeffs(st, d, 1), std::logic_error);
}

TEST(Path, SegmentCountMergesZeroLengthIntervals) {
  // Mirror-symmetric data: both outer pairs fuse at the same gamma.
  const Instance<Rational> inst{qs({"0", "2", "2", "0"}), qs({"1", "1", "1"})};
  const auto path = solve_checked(inst);
  EXPECT_EQ(segment_count(path, false), path.events.size() + 1);
  EXPECT_LT(segment_count(path, true), segment_count(path, false));
}

TEST(Path, RejectsMalformedDual) {
  DualInstance<double> d{{0.0, 1.0}, {0.0, 0.0}};
  EXPECT_THROW(solve_path(d), InvalidInput);
  d = {{1.0, 0.5}, {0.0, 0.0, 0.0}};
  EXPECT_THROW(solve_path(d), InvalidInput);
}

TEST(Path, CorruptedPathFailsVerification) {
  const auto dual = to_dual(unfuse_instance());
  auto path = solve_checked(dual);
  ASSERT_TRUE(verify_path(dual, path, 3).pass);
  path.pieces[2].back().slope += q("1/1000");
  EXPECT_FALSE(verify_path(dual, path, 3).pass);
}

}  // namespace
}  // namespace w1fl
