#include "support.hpp"

#include <gtest/gtest.h>

using namespace trp;
using trp::support::path;
using trp::support::q;

namespace {

QuadraticScalar Q(long n, long d = 1) { return QuadraticScalar(q(n, d)); }

/// First sample time t = k/den >= not_before with position == loc, by scanning.
std::optional<QuadraticScalar> sampled_first_visit(const Trajectory& tr, const QuadraticScalar& loc,
                                                   const QuadraticScalar& not_before, long den, long max_k) {
  for (long k = 0; k <= max_k; ++k) {
    QuadraticScalar t = Q(k, den);
    if (t < not_before) continue;
    if (position_at(tr, t) == loc) return t;
  }
  return std::nullopt;
}

}  // namespace

TEST(Trajectory, PositionInterpolates) {
  EXPECT_EQ(position_at(path({{0, 0}, {2, 2}}), Q(1)), Q(1));
  EXPECT_EQ(position_at(path({{0, 0}, {3, 3}, {6, 0}}), Q(4)), Q(2));
  EXPECT_EQ(position_at(path({{0, 0}, {1, 0}, {2, 1}}), Q(1, 2)), Q(0));
  EXPECT_EQ(position_at(path({{0, 0}, {2, 2}}), Q(10)), Q(2));
}

TEST(Trajectory, FirstServiceTime) {
  Trajectory tr = path({{0, 0}, {2, 2}, {4, 0}});
  EXPECT_EQ(first_service_time(tr, Q(1), Q(0)), Q(1));
  EXPECT_EQ(first_service_time(tr, Q(1), Q(3, 2)), Q(3));
  EXPECT_EQ(first_service_time(path({{0, 0}, {2, 2}}), Q(-1), Q(0)), std::nullopt);
}

TEST(Trajectory, FirstServiceTimeMatchesDenseSampling) {
  Trajectory tr = path({{0, 0}, {2, 2}, {4, 0}});
  EXPECT_EQ(sampled_first_visit(tr, Q(1), Q(3, 2), 1000, 4000), Q(3));
  Trajectory zig = path({{0, 0}, {1, -1}, {4, 2}, {5, 2}, {7, 0}});
  for (long x = -4; x <= 8; ++x) {
    for (long nb = 0; nb <= 14; ++nb) {
      QuadraticScalar loc = Q(x, 4), from = Q(nb, 2);
      auto exact = first_service_time(zig, loc, from);
      auto sampled = sampled_first_visit(zig, loc, from, 4, 40);
      EXPECT_EQ(exact, sampled) << "loc " << loc << " from " << from;
    }
  }
}

TEST(Trajectory, FirstServiceTimeIsMonotoneInNotBefore) {
  Trajectory zig = path({{0, 0}, {1, -1}, {4, 2}, {5, 2}, {7, 0}});
  for (long x = -4; x <= 8; ++x) {
    std::optional<QuadraticScalar> prev = QuadraticScalar(0);
    for (long nb = 0; nb <= 20; ++nb) {
      auto cur = first_service_time(zig, Q(x, 4), Q(nb, 3));
      if (!prev) {
        EXPECT_FALSE(cur.has_value());
      } else if (cur) {
        EXPECT_GE(*cur, *prev);
      }
      prev = cur;
    }
  }
}

TEST(Trajectory, RestsAtFinalPosition) {
  Trajectory tr = path({{0, 0}, {2, 2}});
  EXPECT_EQ(first_service_time(tr, Q(2), Q(5)), Q(5));
}

TEST(Trajectory, ServiceAtArrivalInstant) {
  Trajectory tr = path({{0, 0}, {3, 3}});
  EXPECT_EQ(first_service_time(tr, Q(2), Q(2)), Q(2));
}

TEST(Trajectory, RejectsInvalidBreakpoints) {
  EXPECT_THROW(path({{0, 0}, {1, 2}}), Error);
  EXPECT_THROW(path({{0, 0}, {1, 1}, {1, 1}}), Error);
  EXPECT_THROW(path({{0, 1}, {1, 1}}), Error);
}

TEST(Trajectory, MoveHoldTruncate) {
  Trajectory tr;
  tr.move_to(Q(3));
  tr.hold_until(Q(5));
  tr.move_to(Q(1));
  EXPECT_EQ(tr.end_time(), Q(7));
  EXPECT_TRUE(respects_unit_speed(tr));
  Trajectory cut = tr;
  cut.truncate(Q(6));
  EXPECT_EQ(cut.end_time(), Q(6));
  EXPECT_EQ(cut.end_position(), Q(2));
  EXPECT_EQ(direction_after(tr, Q(0)), 1);
  EXPECT_EQ(direction_after(tr, Q(4)), 0);
  EXPECT_EQ(direction_after(tr, Q(5)), -1);
  EXPECT_EQ(direction_after(tr, Q(9)), 0);
}

TEST(Trajectory, WithinLine) {
  Trajectory tr = path({{0, 0}, {2, -2}});
  EXPECT_TRUE(tr.within(LineSegment(-2, 0)));
  EXPECT_FALSE(tr.within(LineSegment(0, 10)));
}

TEST(Core, LineSegment) {
  LineSegment half(0, 10);
  EXPECT_TRUE(half.is_half_line());
  EXPECT_EQ(half.far_end(), q(10));
  EXPECT_EQ(LineSegment(-4, 0).far_end(), q(-4));
  EXPECT_FALSE(LineSegment(-1, 1).is_half_line());
  EXPECT_THROW(LineSegment(1, 2), Error);
  EXPECT_THROW(LineSegment(0, 0), Error);
  EXPECT_THROW(LineSegment(-1, 1).far_end(), Error);
}

TEST(Core, InstanceErrors) {
  LineSegment line(-5, 5);
  EXPECT_THROW(Instance(line, {}), Error);
  EXPECT_THROW(Instance(line, {{0, q(6), q(1), q(0)}}), Error);
  EXPECT_THROW(Instance(line, {{0, q(1), q(1), q(-1)}}), Error);
  Instance inst(line, {{7, q(2), q(5, 2), q(3)}, {9, q(-1), q(-1), q(0)}});
  EXPECT_EQ(inst.requests()[0].id, 0u);
  EXPECT_EQ(inst.requests()[1].id, 1u);
  EXPECT_EQ(inst.max_error(), q(1, 2));
  EXPECT_EQ(inst.relative_error(), q(1, 20));
  EXPECT_EQ(inst.max_arrival(), q(3));
}
