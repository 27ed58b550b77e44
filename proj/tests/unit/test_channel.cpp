#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "rasim/channel.hpp"

namespace rasim {
namespace {

NoiseStream stream() { return NoiseStream(42, StreamKind::kChannel, 0); }

TEST(ResolveSlot, NoTransmittersIsIdle) {
  auto s = stream();
  const auto out = resolve_slot({}, ChannelConfig{0.3}, s);
  EXPECT_EQ(out.kind, SlotKind::kIdle);
  EXPECT_FALSE(out.collision_feedback());
  EXPECT_EQ(out.delivery_count(), 0);
  EXPECT_EQ(s.cursor(), 0U);
}

TEST(ResolveSlot, TwoTransmittersCollide) {
  auto s = stream();
  const std::vector<std::size_t> tx{3, 7};
  for (double eps : {0.0, 0.5, 0.99}) {
    const auto out = resolve_slot(tx, ChannelConfig{eps}, s);
    EXPECT_EQ(out.kind, SlotKind::kCollision);
    EXPECT_TRUE(out.collision_feedback());
    EXPECT_EQ(out.delivery_count(), 0);
    EXPECT_FALSE(out.delivered(3));
    EXPECT_FALSE(out.delivered(7));
  }
}

TEST(ResolveSlot, SingleTransmitterDeliversOnReliableChannel) {
  auto s = stream();
  const std::vector<std::size_t> tx{5};
  const auto out = resolve_slot(tx, ChannelConfig{0.0}, s);
  EXPECT_EQ(out.kind, SlotKind::kDelivered);
  EXPECT_FALSE(out.collision_feedback());
  EXPECT_TRUE(out.delivered(5));
  EXPECT_FALSE(out.delivered(4));
  EXPECT_EQ(out.delivery_count(), 1);
}

TEST(ResolveSlot, ErasureHasNoFeedbackBits) {
  auto s = stream();
  const std::vector<std::size_t> tx{2};
  SlotOutcome erased;
  for (int t = 0; t < 100 && erased.kind != SlotKind::kErased; ++t) {
    erased = resolve_slot(tx, ChannelConfig{0.9}, s);
  }
  ASSERT_EQ(erased.kind, SlotKind::kErased);
  EXPECT_FALSE(erased.collision_feedback());
  EXPECT_FALSE(erased.delivered(2));
  EXPECT_EQ(erased.delivery_count(), 0);
  EXPECT_EQ(erased.node, 2U);
}

TEST(ResolveSlot, DeliveryFractionNearOneMinusEpsilon) {
  constexpr double delta = 0.01;
  constexpr int trials = 100'000;
  auto s = stream();
  const std::vector<std::size_t> tx{5};
  int delivered = 0;
  for (int t = 0; t < trials; ++t) {
    delivered += resolve_slot(tx, ChannelConfig{1.0 - delta}, s).kind == SlotKind::kDelivered;
  }
  const double frac = static_cast<double>(delivered) / trials;
  const double se = std::sqrt(delta * (1.0 - delta) / trials);
  EXPECT_NEAR(frac, delta, 3.0 * se);
}

TEST(CheckOutcome, AcceptsConsistentOutcomes) {
  EXPECT_NO_THROW(check_outcome({SlotKind::kIdle, std::nullopt}, 0));
  EXPECT_NO_THROW(check_outcome({SlotKind::kCollision, std::nullopt}, 3));
  EXPECT_NO_THROW(check_outcome({SlotKind::kDelivered, 1}, 1));
  EXPECT_NO_THROW(check_outcome({SlotKind::kErased, 1}, 1));
}

TEST(CheckOutcome, RejectsInconsistentOutcomes) {
  EXPECT_THROW(check_outcome({SlotKind::kIdle, std::nullopt}, 1), std::logic_error);
  EXPECT_THROW(check_outcome({SlotKind::kCollision, std::nullopt}, 1), std::logic_error);
  EXPECT_THROW(check_outcome({SlotKind::kDelivered, std::nullopt}, 1), std::logic_error);
  EXPECT_THROW(check_outcome({SlotKind::kDelivered, 1}, 2), std::logic_error);
}

TEST(Channel, RejectsEpsilonOutsideUnitInterval) {
  EXPECT_THROW(Channel(ChannelConfig{1.0}, 1), std::invalid_argument);
  EXPECT_THROW(Channel(ChannelConfig{-0.1}, 1), std::invalid_argument);
}

TEST(Channel, SameSeedSameErasures) {
  Channel a(ChannelConfig{0.5}, 9);
  Channel b(ChannelConfig{0.5}, 9);
  const std::vector<std::size_t> tx{0};
  for (int t = 0; t < 200; ++t) EXPECT_EQ(a.resolve(tx).kind, b.resolve(tx).kind);
}

TEST(SlotKind, Names) {
  EXPECT_EQ(to_string(SlotKind::kIdle), "idle");
  EXPECT_EQ(to_string(SlotKind::kCollision), "collision");
  EXPECT_EQ(to_string(SlotKind::kDelivered), "delivered");
  EXPECT_EQ(to_string(SlotKind::kErased), "erased");
}

}  // namespace
}  // namespace rasim
