#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rasim/channel.hpp"

namespace rasim {

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }
  void merge(const CompensatedSum& other) noexcept {
    add(other.sum_);
    add(other.comp_);
  }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// One closed inter-delivery interval of one node.
///
/// Slots of the interval are numbered j = 1..I from the slot after the
/// previous delivery. J is the activation slot, U counts the slots from
/// activation through the delivery, so I = J - 1 + U.
struct IntervalRecord {
  std::size_t node = 0;
  std::int64_t j = 1;
  std::int64_t u = 1;
  std::int64_t i = 1;
  /// Sum of psi^2 over j = 1..I.
  double sum_sq = 0.0;
  /// Sum of psi^2 over j = 1..J.
  double sum_sq_silence = 0.0;
  /// psi at the activation slot.
  double s_at_activation = 0.0;
  /// Slot of the closing delivery.
  std::int64_t end_slot = 0;
};

/// Mergeable moment sums over a set of interval records.
struct IntervalStats {
  std::uint64_t count = 0;
  std::uint64_t sum_j = 0;
  std::uint64_t sum_j2 = 0;
  std::uint64_t sum_u = 0;
  std::uint64_t sum_u2 = 0;
  std::uint64_t sum_i = 0;
  CompensatedSum sum_sq;
  CompensatedSum sum_sq_silence;
  CompensatedSum sum_sj2;

  void add(const IntervalRecord& r) noexcept;
  void merge(const IntervalStats& other) noexcept;

  double mean_j() const noexcept { return mean(sum_j); }
  double mean_j2() const noexcept { return mean(sum_j2); }
  double mean_u() const noexcept { return mean(sum_u); }
  double mean_u2() const noexcept { return mean(sum_u2); }
  double mean_i() const noexcept { return mean(sum_i); }
  double mean_sum_sq() const noexcept { return mean(sum_sq.value()); }
  double mean_silence_sum_sq() const noexcept { return mean(sum_sq_silence.value()); }
  double mean_sj2() const noexcept { return mean(sum_sj2.value()); }

 private:
  double mean(double total) const noexcept {
    return count == 0 ? 0.0 : total / static_cast<double>(count);
  }
  double mean(std::uint64_t total) const noexcept { return mean(static_cast<double>(total)); }
};

IntervalStats summarize(std::span<const IntervalRecord> records);

struct NaeeDecomposition {
  double l1 = 0.0;
  double l2 = 0.0;
  double l2_closed_form = 0.0;
  /// (sum of interval psi^2) / (M * sum of I); equals l1 + l2.
  double naee_intervals = 0.0;
};

/// Silence and transmission parts of the interval-averaged error, plus the
/// closed form of the transmission part from the empirical J and U moments.
/// Throws std::invalid_argument on an empty set.
NaeeDecomposition decompose_naee(const IntervalStats& stats, std::size_t nodes, double sigma);
NaeeDecomposition decompose_naee(std::span<const IntervalRecord> records, std::size_t nodes,
                                 double sigma);

struct MetricsReport {
  double naee = 0.0;
  double naaoi = 0.0;
  double throughput = 0.0;
  double alpha_hat = 0.0;
  /// Newly active nodes per slot, summed over nodes.
  double activation_rate = 0.0;
  double e_j = 0.0;
  double e_j2 = 0.0;
  double e_u = 0.0;
  double e_u2 = 0.0;
  double e_i = 0.0;
  /// Mean of sum_{j <= J} psi^2 per interval.
  double e_sumsq = 0.0;
  double e_sj2 = 0.0;
  double wald_ratio = 0.0;
  double l1 = 0.0;
  double l2 = 0.0;
  double l2_closed_form = 0.0;
  double naee_intervals = 0.0;
  std::uint64_t intervals = 0;
  std::uint64_t deliveries = 0;
  std::int64_t slots = 0;
  std::size_t nodes = 0;
  double sigma2 = 0.0;
};

/// E[S_J^2] / (sigma^2 E[J]). Throws std::invalid_argument below 1000 records.
double check_wald(const IntervalStats& stats, double sigma);
double check_wald(std::span<const IntervalRecord> records, double sigma);

struct AlphaResiduals {
  /// |alpha_hat - E[U]/E[I]| and the same divided by E[U]/E[I].
  double interval = 0.0;
  double interval_relative = 0.0;
  /// |(1 - alpha_hat) M alpha_hat - activation_rate| and the same divided by
  /// activation_rate.
  double fixed_point = 0.0;
  double fixed_point_relative = 0.0;
};

AlphaResiduals check_alpha_fixed_point(const MetricsReport& report);

/// Per-slot accumulator for one replication.
///
/// Call order within slot k: add_errors, then activate for every node that
/// becomes active, then end_slot. Slot averages cover k = 1..K. Interval
/// moments and activity statistics skip the first `burn_in` slots.
class MetricsAccumulator {
 public:
  MetricsAccumulator(std::size_t nodes, std::int64_t horizon, double sigma,
                     std::int64_t burn_in = 0, bool keep_records = false);

  void add_errors(std::int64_t slot, std::span<const double> psi);
  void activate(std::size_t node, std::int64_t slot, double psi);
  /// Closes the delivering node's interval; throws std::logic_error if the
  /// node was never activated or I != J - 1 + U.
  void end_slot(std::int64_t slot, const SlotOutcome& outcome, std::size_t active_count);

  MetricsReport report() const;
  const IntervalStats& stats() const noexcept { return stats_; }
  const std::vector<IntervalRecord>& records() const noexcept { return records_; }
  std::int64_t anchor(std::size_t node) const noexcept { return anchor_[node]; }

 private:
  bool counted(std::int64_t slot) const noexcept { return slot >= 1 && slot > burn_in_; }

  std::size_t nodes_;
  std::int64_t horizon_;
  double sigma_;
  std::int64_t burn_in_;
  bool keep_records_;
  std::int64_t next_slot_ = 0;
  bool errors_added_ = false;

  std::vector<std::int64_t> anchor_;
  std::vector<std::int64_t> activation_;
  std::vector<double> open_sum_;
  std::vector<double> open_silence_;
  std::vector<double> open_s_;

  CompensatedSum sq_total_;
  std::int64_t anchor_total_ = 0;
  CompensatedSum age_total_;
  std::uint64_t deliveries_ = 0;
  std::uint64_t activity_slots_ = 0;
  std::uint64_t active_total_ = 0;
  std::uint64_t activations_ = 0;

  IntervalStats stats_;
  std::vector<IntervalRecord> records_;
};

}  // namespace rasim
