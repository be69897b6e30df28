#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "carbonsched/carbon.hpp"
#include "carbonsched/series.hpp"

namespace carbonsched {

/// When the dataset travels: before training starts (one shipment per
/// distinct region, sent at that region's cheapest moment) or at every
/// region switch while training runs.
enum class TransferMode { upstream, in_training };

TransferMode parse_transfer_mode(std::string_view name);
std::string_view to_string(TransferMode mode);

/// Inputs shared by all scheduling strategies.
///
/// window_extra_steps is the scheduling slack beyond the workload length,
/// in base steps; the window covers workload_steps + window_extra_steps
/// steps from nominal_start. checking_minutes drives the slot partition of
/// the Follow-the-Sun variants and is ignored by FS/PaR.
struct StrategyConfig {
  std::int64_t nominal_start_epoch_s = 0;
  std::int64_t window_extra_steps = 0;
  int checking_minutes = 30;
  std::string reference_region;
  TransferMode transfer_mode = TransferMode::in_training;
  TransferCostModel transfer;

  static std::int64_t extra_steps_from_hours(int hours, int step_minutes);
};

/// Where and when each piece of the workload runs.
struct ExecutionPlan {
  struct Segment {
    std::int64_t grid_begin = 0;  // half-open grid index range
    std::int64_t grid_end = 0;
    std::string region;
    std::int64_t offset_begin = 0;  // half-open workload offset range
    std::int64_t offset_end = 0;
  };
  struct Pause {
    std::int64_t grid_begin = 0;
    std::int64_t grid_end = 0;
  };
  struct Transfer {
    std::int64_t grid_index = 0;
    std::string from_region;
    std::string to_region;
    double emissions_g = 0.0;
  };

  TimeGrid grid;
  std::int64_t chosen_start_index = 0;
  std::vector<Segment> segments;
  std::vector<Pause> pauses;
  std::vector<Transfer> transfers;

  std::int64_t last_executed_index() const;
};

/// Scalar results of executing a plan.
struct EmissionOutcome {
  double operational_g = 0.0;
  double transfer_g = 0.0;
  double total_g = 0.0;
  std::int64_t region_switches = 0;
  std::int64_t dataset_transfers = 0;
  std::int64_t start_delay_steps = 0;
  std::int64_t duration_steps = 0;  // chosen start to completion, pauses included
  std::int64_t completion_epoch_s = 0;
  int step_minutes = 5;

  std::int64_t start_delay_minutes() const { return start_delay_steps * step_minutes; }
  std::int64_t duration_minutes() const { return duration_steps * step_minutes; }
};

struct StrategyResult {
  ExecutionPlan plan;
  EmissionOutcome outcome;
};

/// Prices the plan's dataset movements and rewrites plan.transfers.
///
/// in_training: one event per region change (including the initial move out
/// of the reference region), priced at the destination's intensity at the
/// instant the new segment starts. upstream: one event per distinct
/// non-reference region used, priced at the destination's minimum intensity
/// between the plan start and that region's first use (both ends inclusive).
ExecutionPlan apply_transfer_mode(ExecutionPlan plan, const RegionSet& regions,
                                  const TransferCostModel& model, TransferMode mode,
                                  const std::string& reference_region);

/// Recomputes the outcome scalars of a finalized plan.
EmissionOutcome summarize_outcome(const ExecutionPlan& plan, const EnergySeries& energy,
                                  const RegionSet& regions, std::int64_t nominal_start_index);
EmissionOutcome summarize_outcome(const ExecutionPlan& plan, const EnergySeries& energy,
                                  const IntensitySeries& series, std::int64_t nominal_start_index);

/// Baseline: run contiguously in one region starting at nominal_start.
StrategyResult no_strategy(const EnergySeries& energy, const IntensitySeries& series,
                           std::int64_t nominal_start_epoch_s);

/// Flexible Start: one contiguous run in one region, started at the window
/// offset with minimal emissions (ties: earliest).
StrategyResult flexible_start(const EnergySeries& energy, const IntensitySeries& series,
                              const StrategyConfig& config);

/// Pause & Resume: run on the workload_steps lowest-intensity steps of the
/// window (ties: earliest), pausing in between.
StrategyResult pause_and_resume(const EnergySeries& energy, const IntensitySeries& series,
                                const StrategyConfig& config);

/// Static-Start Follow-the-Sun: start at nominal_start and pick a region per
/// checking-time slot. With in_training transfers the per-slot choice is
/// penalized by the shipment cost of switching; the result is never worse
/// than staying in the reference region for the whole run.
StrategyResult static_start_fts(const EnergySeries& energy, const RegionSet& regions,
                                const StrategyConfig& config);

/// Flexible-Start Follow-the-Sun: static_start_fts evaluated at every
/// candidate start in the window; minimal total emissions wins (ties:
/// earliest start).
StrategyResult flexible_start_fts(const EnergySeries& energy, const RegionSet& regions,
                                  const StrategyConfig& config);

/// Exact minimum-total in_training schedule for a fixed start, via a
/// slot-by-region shortest-path recurrence. Equals static_start_fts when
/// the transfer cost is zero.
StrategyResult dp_optimal_fts(const EnergySeries& energy, const RegionSet& regions,
                              const StrategyConfig& config);

}  // namespace carbonsched
