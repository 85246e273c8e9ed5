#include <gtest/gtest.h>

#include <limits>

#include "support.hpp"

namespace w1fl {
namespace {

using testing::q;
using testing::qs;

TEST(Scalar, RationalParsing) {
  EXPECT_EQ(q("3"), Rational(3));
  EXPECT_EQ(q("-6/4"), Rational(-3, 2));
  EXPECT_EQ(q("0.02"), Rational(1, 50));
  EXPECT_EQ(q("-1.5e-2"), Rational(-3, 200));
  EXPECT_EQ(q("25E1"), Rational(250));
  for (const char* bad : {"", "1/0", "abc", "1.2.3", "1/2/3", "--1"}) {
    EXPECT_THROW(ScalarTraits<Rational>::parse(bad), InvalidInput) << bad;
  }
}

TEST(Scalar, RationalFormatting) {
  EXPECT_EQ(to_string(Rational(-25, 27)), "-25/27");
  EXPECT_EQ(to_string(Rational(4)), "4");
}

TEST(Scalar, DoubleRoundTrip) {
  for (double v : {0.1, -1e-300, 1.0 / 3.0, 12345.678, std::numeric_limits<double>::max()}) {
    EXPECT_EQ(ScalarTraits<double>::parse(to_string(v)), v);
  }
  EXPECT_EQ(ScalarTraits<double>::parse("1/4"), 0.25);
  EXPECT_THROW(ScalarTraits<double>::parse("x"), InvalidInput);
}

TEST(Io, InstanceJsonMixedScalars) {
  const auto raw = parse_instance_json(R"({"y": [0, "-1/2", 0.5, "1/2"], "alpha": ["1/50", 0.5, 0.5]})");
  EXPECT_TRUE(raw.has_rational_strings);
  const auto inst = to_instance<Rational>(raw);
  EXPECT_EQ(inst.y, qs({"0", "-1/2", "1/2", "1/2"}));
  EXPECT_EQ(inst.alpha, qs({"1/50", "1/2", "1/2"}));
  EXPECT_FALSE(parse_instance_json(R"({"y": [1, 2.5], "alpha": [1]})").has_rational_strings);
}

TEST(Io, InstanceJsonErrors) {
  EXPECT_THROW(parse_instance_json("{"), InvalidInput);
  EXPECT_THROW(parse_instance_json(R"({"alpha": [1]})"), InvalidInput);
  EXPECT_THROW(parse_instance_json(R"({"y": [1, 2]})"), InvalidInput);
  EXPECT_THROW(parse_instance_json(R"({"y": [1, true], "alpha": [1]})"), InvalidInput);
  EXPECT_THROW(parse_instance_json(R"({"y": [1, "1/0"], "alpha": [1]})"), InvalidInput);
  EXPECT_THROW(to_instance<double>(parse_instance_json(R"({"y": [1, 2], "alpha": [1, 2]})")), InvalidInput);
  EXPECT_THROW(to_instance<double>(parse_instance_json(R"({"y": [1, 2], "alpha": [-1]})")), InvalidInput);
}

TEST(Io, InstanceRoundTrip) {
  const auto f = gen_random<double>(25, 3);
  EXPECT_EQ(to_instance<double>(parse_instance_json(instance_json(f))), f);
  const auto r = from_dual(gen_worst_case<Rational>(9));
  EXPECT_EQ(to_instance<Rational>(parse_instance_json(instance_json(r))), r);
}

TEST(Io, EventCsvRoundTrip) {
  const auto path = solve_path(to_dual(testing::unfuse_instance()));
  const auto csv = events_csv(path);
  EXPECT_EQ(csv.rfind("gamma,index,kind,sign\n25/27,2,fuse,", 0), 0u);
  const auto rows = parse_events_csv(csv);
  ASSERT_EQ(rows.size(), path.events.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    EXPECT_EQ(q(rows[k].gamma.c_str()), path.events[k].gamma);
    EXPECT_EQ(rows[k].index, path.events[k].index);
    EXPECT_EQ(rows[k].kind, path.events[k].kind);
    EXPECT_EQ(rows[k].sign, path.events[k].sign);
  }
  EXPECT_THROW(parse_events_csv("g,i\n"), InvalidInput);
  EXPECT_THROW(parse_events_csv("gamma,index,kind,sign\n1,x,fuse,1\n"), InvalidInput);
}

TEST(Io, PathJsonRoundTrip) {
  const auto fd = to_dual(gen_random<double>(40, 2));
  const auto fp = solve_path(fd);
  const auto fb = to_path<double>(parse_path_json(path_json(fp)), fd);
  EXPECT_EQ(fb.events, fp.events);
  EXPECT_EQ(fb.pieces, fp.pieces);
  EXPECT_EQ(fb.initial_signs, fp.initial_signs);

  const auto rd = to_dual(testing::unfuse_instance());
  const auto rp = solve_path(rd);
  const auto rb = to_path<Rational>(parse_path_json(path_json(rp)), rd);
  EXPECT_EQ(rb.events, rp.events);
  EXPECT_EQ(rb.pieces, rp.pieces);
}

TEST(Io, PathJsonStructuralErrors) {
  const auto rd = to_dual(testing::unfuse_instance());
  auto raw = parse_path_json(path_json(solve_path(rd)));
  raw.pieces.pop_back();
  EXPECT_THROW(to_path<Rational>(raw, rd), InvalidInput);
  EXPECT_THROW(parse_path_json(R"({"events": []})"), InvalidInput);
}

}  // namespace
}  // namespace w1fl
