#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "fracdim/error.hpp"
#include "fracdim/pointset.hpp"

using namespace fracdim;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::parameter;
}

}  // namespace

TEST(SetSpec, ParsesFamilies) {
  auto rec = parse_set_spec("reciprocal:p=2");
  ASSERT_TRUE(std::holds_alternative<Reciprocal>(rec.kind));
  EXPECT_DOUBLE_EQ(std::get<Reciprocal>(rec.kind).p, 2.0);

  auto can = parse_set_spec("cantor:m=2,c=1/3");
  ASSERT_TRUE(std::holds_alternative<Cantor>(can.kind));
  EXPECT_EQ(std::get<Cantor>(can.kind).m, 2);
  EXPECT_DOUBLE_EQ(std::get<Cantor>(can.kind).c, 1.0 / 3.0);

  EXPECT_TRUE(std::holds_alternative<UnitInterval>(parse_set_spec("interval").kind));
  EXPECT_TRUE(std::holds_alternative<UnitInterval>(parse_set_spec("unit_interval").kind));
}

TEST(SetSpec, RejectsBadInput) {
  EXPECT_EQ(kind_of([] { parse_set_spec("reciprocal:p=0"); }), ErrorKind::parameter);
  EXPECT_EQ(kind_of([] { parse_set_spec("reciprocal:p=-1"); }), ErrorKind::parameter);
  EXPECT_EQ(kind_of([] { parse_set_spec("cantor:m=1,c=0.3"); }), ErrorKind::parameter);
  EXPECT_EQ(kind_of([] { parse_set_spec("cantor:m=2,c=1.5"); }), ErrorKind::parameter);
  EXPECT_EQ(kind_of([] { parse_set_spec("sierpinski"); }), ErrorKind::parse);
  EXPECT_EQ(kind_of([] { parse_set_spec("reciprocal:q=1"); }), ErrorKind::parse);
}

TEST(Generate, ReciprocalTruncationAtOneHundredth) {
  const auto set = generate(SetSpec::reciprocal(1.0), 0.01);
  EXPECT_EQ(set.size(), 101u);
  EXPECT_EQ(set.front(), 0.0);
  EXPECT_EQ(set.back(), 1.0);
  EXPECT_TRUE(set.includes_accumulation());
  EXPECT_NEAR(min_gap(set), 1.0 / 9900.0, 1e-18);
}

TEST(Generate, PointsAreStrictlyIncreasing) {
  for (const auto& spec : {SetSpec::reciprocal(0.5), SetSpec::reciprocal(2.0), SetSpec::cantor(2, 1.0 / 3.0),
                           SetSpec::cantor(3, 0.2), SetSpec::unit_interval()}) {
    const auto set = generate(spec, 1e-3);
    ASSERT_GT(set.size(), 1u) << spec.describe();
    for (std::size_t i = 1; i < set.size(); ++i) ASSERT_LT(set[i - 1], set[i]) << spec.describe();
    EXPECT_GE(set.front(), 0.0);
    EXPECT_LE(set.back(), 1.0);
  }
}

TEST(Generate, CantorHasPowerOfMPoints) {
  const auto set = generate(SetSpec::cantor(2, 1.0 / 3.0), 1e-3);
  const double n = static_cast<double>(set.size());
  EXPECT_EQ(std::exp2(std::round(std::log2(n))), n);
}

TEST(Generate, BudgetIsEnforced) {
  EXPECT_EQ(kind_of([] { generate(SetSpec::reciprocal(1.0), 1e-9, 1000); }), ErrorKind::resource);
}

TEST(Generate, RejectsNonPositiveScale) {
  EXPECT_EQ(kind_of([] { generate(SetSpec::reciprocal(1.0), 0.0); }), ErrorKind::domain);
}

TEST(PointSet, RejectsUnsortedOrNonFinite) {
  EXPECT_THROW(PointSet({0.2, 0.1}), Error);
  EXPECT_THROW(PointSet({0.1, NAN}), Error);
  const auto set = PointSet::from_unsorted({0.3, 0.1, 0.3, 0.2});
  EXPECT_EQ(set.points(), (std::vector<double>{0.1, 0.2, 0.3}));
}

TEST(PointSet, LoadAndWriteRoundTrip) {
  std::istringstream in("# comment\n0.5\n0.25\n\n1e-3\n");
  const auto set = load_points(in);
  EXPECT_EQ(set.points(), (std::vector<double>{1e-3, 0.25, 0.5}));
  std::ostringstream out;
  write_points(out, set);
  std::istringstream back(out.str());
  EXPECT_EQ(load_points(back).points(), set.points());
}

TEST(PointSet, LoadRejectsGarbage) {
  std::istringstream in("0.5\nabc\n");
  EXPECT_EQ(kind_of([&] { load_points(in); }), ErrorKind::parse);
  std::istringstream empty("# nothing\n");
  EXPECT_EQ(kind_of([&] { load_points(empty); }), ErrorKind::empty_set);
}

TEST(Localize, KeepsClosedBall) {
  const auto set = generate(SetSpec::reciprocal(1.0), 0.01);
  const auto ball = localize(set, 0.0, 0.1);
  EXPECT_EQ(ball.front(), 0.0);
  EXPECT_EQ(ball.back(), 0.1);
  EXPECT_EQ(ball.size(), 92u);
  EXPECT_TRUE(ball.includes_accumulation());
  const auto away = localize(set, 0.5, 0.01);
  EXPECT_EQ(away.points(), (std::vector<double>{0.5}));
  EXPECT_FALSE(away.includes_accumulation());
}

TEST(ReciprocalPoint, MatchesDirectFormula) {
  EXPECT_EQ(reciprocal_point(7, 1.0), 1.0 / 7.0);
  EXPECT_EQ(reciprocal_point(3, 2.0), 1.0 / 9.0);
}
