#include "rasim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rasim {

void IntervalStats::add(const IntervalRecord& r) noexcept {
  const auto j = static_cast<std::uint64_t>(r.j);
  const auto u = static_cast<std::uint64_t>(r.u);
  ++count;
  sum_j += j;
  sum_j2 += j * j;
  sum_u += u;
  sum_u2 += u * u;
  sum_i += static_cast<std::uint64_t>(r.i);
  sum_sq.add(r.sum_sq);
  sum_sq_silence.add(r.sum_sq_silence);
  sum_sj2.add(r.s_at_activation * r.s_at_activation);
}

void IntervalStats::merge(const IntervalStats& other) noexcept {
  count += other.count;
  sum_j += other.sum_j;
  sum_j2 += other.sum_j2;
  sum_u += other.sum_u;
  sum_u2 += other.sum_u2;
  sum_i += other.sum_i;
  sum_sq.merge(other.sum_sq);
  sum_sq_silence.merge(other.sum_sq_silence);
  sum_sj2.merge(other.sum_sj2);
}

IntervalStats summarize(std::span<const IntervalRecord> records) {
  IntervalStats s;
  for (const auto& r : records) s.add(r);
  return s;
}

NaeeDecomposition decompose_naee(const IntervalStats& stats, std::size_t nodes, double sigma) {
  if (stats.count == 0) throw std::invalid_argument("no closed intervals to decompose");
  if (nodes == 0) throw std::invalid_argument("M must be at least 1");
  const double m = static_cast<double>(nodes);
  const double total_i = static_cast<double>(stats.sum_i);
  const double a = stats.sum_sq_silence.value();
  const double all = stats.sum_sq.value();
  NaeeDecomposition d;
  d.l1 = a / (m * total_i);
  d.l2 = (all - a) / (m * total_i);
  d.naee_intervals = all / (m * total_i);
  const double ej = stats.mean_j();
  const double eu = stats.mean_u();
  const double eu2 = stats.mean_u2();
  d.l2_closed_form =
      (2.0 * ej * (eu - 1.0) + eu2 - eu) / (2.0 * stats.mean_i()) * sigma * sigma / m;
  return d;
}

NaeeDecomposition decompose_naee(std::span<const IntervalRecord> records, std::size_t nodes,
                                 double sigma) {
  return decompose_naee(summarize(records), nodes, sigma);
}

double check_wald(const IntervalStats& stats, double sigma) {
  if (stats.count < 1000) {
    throw std::invalid_argument("Wald check needs at least 1000 records, got " +
                                std::to_string(stats.count));
  }
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  return stats.mean_sj2() / (sigma * sigma * stats.mean_j());
}

double check_wald(std::span<const IntervalRecord> records, double sigma) {
  return check_wald(summarize(records), sigma);
}

AlphaResiduals check_alpha_fixed_point(const MetricsReport& report) {
  AlphaResiduals r;
  const double ratio = report.e_i > 0.0 ? report.e_u / report.e_i : 0.0;
  r.interval = std::abs(report.alpha_hat - ratio);
  r.interval_relative = ratio > 0.0 ? r.interval / ratio : r.interval;
  const double m = static_cast<double>(report.nodes);
  const double lhs = (1.0 - report.alpha_hat) * m * report.alpha_hat;
  r.fixed_point = std::abs(lhs - report.activation_rate);
  r.fixed_point_relative =
      report.activation_rate > 0.0 ? r.fixed_point / report.activation_rate : r.fixed_point;
  return r;
}

MetricsAccumulator::MetricsAccumulator(std::size_t nodes, std::int64_t horizon, double sigma,
                                       std::int64_t burn_in, bool keep_records)
    : nodes_(nodes),
      horizon_(horizon),
      sigma_(sigma),
      burn_in_(burn_in),
      keep_records_(keep_records),
      anchor_(nodes, -1),
      activation_(nodes, -1),
      open_sum_(nodes, 0.0),
      open_silence_(nodes, 0.0),
      open_s_(nodes, 0.0) {
  if (nodes == 0) throw std::invalid_argument("M must be at least 1");
  if (horizon < 1) throw std::invalid_argument("K must be at least 1");
  if (burn_in < 0) throw std::invalid_argument("burn_in must be non-negative");
  anchor_total_ = -static_cast<std::int64_t>(nodes);
}

void MetricsAccumulator::add_errors(std::int64_t slot, std::span<const double> psi) {
  if (slot != next_slot_ || errors_added_) {
    throw std::logic_error("metrics slot out of order: got " + std::to_string(slot) +
                           ", expected " + std::to_string(next_slot_));
  }
  if (psi.size() != nodes_) throw std::invalid_argument("error vector size mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i < nodes_; ++i) {
    const double s = psi[i] * psi[i];
    open_sum_[i] += s;
    total += s;
  }
  if (slot >= 1) {
    sq_total_.add(total);
    age_total_.add(static_cast<double>(static_cast<std::int64_t>(nodes_) * slot - anchor_total_));
  }
  errors_added_ = true;
}

void MetricsAccumulator::activate(std::size_t node, std::int64_t slot, double psi) {
  if (!errors_added_ || slot != next_slot_) throw std::logic_error("activation out of order");
  if (activation_[node] >= 0) throw std::logic_error("node activated twice in one interval");
  activation_[node] = slot;
  open_silence_[node] = open_sum_[node];
  open_s_[node] = psi;
  if (counted(slot)) ++activations_;
}

void MetricsAccumulator::end_slot(std::int64_t slot, const SlotOutcome& outcome,
                                  std::size_t active_count) {
  if (!errors_added_ || slot != next_slot_) throw std::logic_error("end_slot out of order");
  if (counted(slot)) {
    ++activity_slots_;
    active_total_ += active_count;
  }
  if (outcome.kind == SlotKind::kDelivered) {
    const std::size_t n = *outcome.node;
    if (activation_[n] < 0) throw std::logic_error("delivery from a node that never activated");
    IntervalRecord r;
    r.node = n;
    r.i = slot - anchor_[n];
    r.j = activation_[n] - anchor_[n];
    r.u = slot - activation_[n] + 1;
    r.sum_sq = open_sum_[n];
    r.sum_sq_silence = open_silence_[n];
    r.s_at_activation = open_s_[n];
    r.end_slot = slot;
    if (r.i != r.j - 1 + r.u || r.j < 1 || r.u < 1) {
      throw std::logic_error("interval identity I = J - 1 + U violated");
    }
    if (slot >= 1) ++deliveries_;
    if (burn_in_ == 0 || anchor_[n] >= burn_in_) {
      stats_.add(r);
      if (keep_records_) records_.push_back(r);
    }
    anchor_total_ += slot - anchor_[n];
    anchor_[n] = slot;
    activation_[n] = -1;
    open_sum_[n] = 0.0;
    open_silence_[n] = 0.0;
    open_s_[n] = 0.0;
  }
  errors_added_ = false;
  ++next_slot_;
}

MetricsReport MetricsAccumulator::report() const {
  MetricsReport r;
  const std::int64_t k = std::min<std::int64_t>(horizon_, next_slot_ - 1);
  const double m = static_cast<double>(nodes_);
  r.nodes = nodes_;
  r.slots = k;
  r.sigma2 = sigma_ * sigma_;
  if (k >= 1) {
    const double denom = m * m * static_cast<double>(k);
    r.naee = sq_total_.value() / denom;
    r.naaoi = age_total_.value() / denom;
    r.throughput = static_cast<double>(deliveries_) / static_cast<double>(k);
  }
  r.deliveries = deliveries_;
  if (activity_slots_ > 0) {
    r.alpha_hat = static_cast<double>(active_total_) / (m * static_cast<double>(activity_slots_));
    r.activation_rate =
        static_cast<double>(activations_) / static_cast<double>(activity_slots_);
  }
  r.intervals = stats_.count;
  if (stats_.count > 0) {
    r.e_j = stats_.mean_j();
    r.e_j2 = stats_.mean_j2();
    r.e_u = stats_.mean_u();
    r.e_u2 = stats_.mean_u2();
    r.e_i = stats_.mean_i();
    r.e_sumsq = stats_.mean_silence_sum_sq();
    r.e_sj2 = stats_.mean_sj2();
    r.wald_ratio = sigma_ > 0.0 ? r.e_sj2 / (r.sigma2 * r.e_j) : 0.0;
    const NaeeDecomposition d = decompose_naee(stats_, nodes_, sigma_);
    r.l1 = d.l1;
    r.l2 = d.l2;
    r.l2_closed_form = d.l2_closed_form;
    r.naee_intervals = d.naee_intervals;
  }
  return r;
}

}  // namespace rasim
