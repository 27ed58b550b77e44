#include <gtest/gtest.h>

#include <cmath>

#include "rasim/estimator.hpp"
#include "rasim/process.hpp"

namespace rasim {
namespace {

TEST(ReceiverView, InitialAgesAreOne) {
  const auto v = ReceiverView::initial(4);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(v.age(i), 1);
    EXPECT_EQ(v.estimates[i], 0.0);
    EXPECT_EQ(v.sample_slot(i), 0);
  }
}

TEST(ApplySlot, IdleAgesEveryoneKeepsEstimates) {
  auto v = ReceiverView::initial(3);
  v.estimates = {0.5, -1.0, 2.0};
  apply_slot(v, {SlotKind::kIdle, std::nullopt}, std::nullopt);
  EXPECT_EQ(v.estimates, (std::vector<double>{0.5, -1.0, 2.0}));
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(v.age(i), 2);
}

TEST(ApplySlot, DeliveryStoresValueAndResetsAge) {
  auto v = ReceiverView::initial(3);
  apply_slot(v, {SlotKind::kIdle, std::nullopt}, std::nullopt);
  apply_slot(v, {SlotKind::kDelivered, 2}, 1.25);
  EXPECT_EQ(v.estimates[2], 1.25);
  EXPECT_EQ(v.age(2), 1);
  EXPECT_EQ(v.age(0), 3);
  EXPECT_EQ(v.last_delivery_slot[2], 1);
  EXPECT_EQ(v.sample_slot(2), 1);
}

TEST(ApplySlot, ErasureMatchesIdle) {
  auto a = ReceiverView::initial(3);
  auto b = ReceiverView::initial(3);
  apply_slot(a, {SlotKind::kErased, 2}, std::nullopt);
  apply_slot(b, {SlotKind::kIdle, std::nullopt}, std::nullopt);
  EXPECT_EQ(a.estimates, b.estimates);
  EXPECT_EQ(a.last_delivery_slot, b.last_delivery_slot);
  EXPECT_EQ(a.slot, b.slot);
}

TEST(ApplySlot, CollisionMatchesIdle) {
  auto a = ReceiverView::initial(2);
  apply_slot(a, {SlotKind::kCollision, std::nullopt}, std::nullopt);
  EXPECT_EQ(a.age(0), 2);
  EXPECT_EQ(a.age(1), 2);
}

TEST(ApplySlot, AgeRecursion) {
  auto v = ReceiverView::initial(2);
  std::vector<std::int64_t> h{1, 1};
  const SlotOutcome outcomes[] = {{SlotKind::kIdle, std::nullopt},
                                  {SlotKind::kDelivered, 0},
                                  {SlotKind::kCollision, std::nullopt},
                                  {SlotKind::kDelivered, 1},
                                  {SlotKind::kDelivered, 1},
                                  {SlotKind::kErased, 0}};
  for (const auto& o : outcomes) {
    apply_slot(v, o, o.kind == SlotKind::kDelivered ? std::optional<double>(0.0) : std::nullopt);
    for (std::size_t i = 0; i < 2; ++i) {
      h[i] = o.delivered(i) ? 1 : h[i] + 1;
      EXPECT_EQ(v.age(i), h[i]);
    }
  }
}

TEST(ApplySlot, ValueDeliveryMismatchThrows) {
  auto v = ReceiverView::initial(2);
  EXPECT_THROW(apply_slot(v, {SlotKind::kDelivered, 0}, std::nullopt), std::invalid_argument);
  EXPECT_THROW(apply_slot(v, {SlotKind::kIdle, std::nullopt}, 1.0), std::invalid_argument);
  EXPECT_THROW(apply_slot(v, {SlotKind::kErased, 0}, 1.0), std::invalid_argument);
}

TEST(ErrorVector, SlotMismatchThrows) {
  SourceBank bank(2, 1.0, 1);
  bank.step();
  const auto v = ReceiverView::initial(2);
  EXPECT_THROW(error_vector(bank.state(), v), std::invalid_argument);
}

TEST(ErrorVector, ZeroSigmaGivesZeroError) {
  SourceBank bank(3, 0.0, 1);
  auto v = ReceiverView::initial(3);
  for (int k = 0; k < 10; ++k) {
    for (double p : error_vector(bank.state(), v).psi) EXPECT_EQ(p, 0.0);
    apply_slot(v, {SlotKind::kIdle, std::nullopt}, std::nullopt);
    bank.step();
  }
}

TEST(ErrorVector, RightAfterDeliveryIsOneInnovation) {
  SourceBank bank(2, 1.0, 5, InnovationLog::kUnbounded);
  auto v = ReceiverView::initial(2);
  for (int k = 0; k < 4; ++k) {
    apply_slot(v, {SlotKind::kIdle, std::nullopt}, std::nullopt);
    bank.step();
  }
  apply_slot(v, {SlotKind::kDelivered, 1}, bank.state().values[1]);
  bank.step();
  const auto e = error_vector(bank.state(), v);
  EXPECT_NEAR(e.psi[1], std::abs(bank.log().at(1, 4)), 1e-12);
  EXPECT_EQ(e.slot, 5);
}

TEST(ErrorVector, EqualsWindowSumMagnitude) {
  SourceBank bank(3, 1.7, 21, InnovationLog::kUnbounded);
  auto v = ReceiverView::initial(3);
  for (int k = 0; k < 200; ++k) {
    const auto e = error_vector(bank.state(), v);
    for (std::size_t i = 0; i < 3; ++i) {
      const double w = bank.increment_window_sum(i, v.sample_slot(i), k);
      ASSERT_NEAR(e.psi[i], std::abs(w), 1e-9 * std::max(1.0, e.psi[i]));
    }
    if (k % 7 == 3) {
      const std::size_t i = static_cast<std::size_t>(k) % 3;
      apply_slot(v, {SlotKind::kDelivered, i}, bank.state().values[i]);
    } else {
      apply_slot(v, {SlotKind::kIdle, std::nullopt}, std::nullopt);
    }
    bank.step();
  }
}

TEST(NodeMirror, TracksOwnDeliveriesOnly) {
  NodeMirror m;
  EXPECT_EQ(m.age(0), 1);
  m.observe(0, true, false, 3.0);
  EXPECT_EQ(m.age(1), 2);
  m.observe(1, false, true, 4.0);
  EXPECT_EQ(m.estimate, 4.0);
  EXPECT_EQ(m.age(2), 1);
  m.observe(2, false, false, 5.0);
  EXPECT_EQ(m.estimate, 4.0);
}

}  // namespace
}  // namespace rasim
