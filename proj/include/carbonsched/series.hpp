#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "carbonsched/time.hpp"

namespace carbonsched {

/// Workload energy consumption per base step, in kWh.
class EnergySeries {
 public:
  EnergySeries(TimeGrid grid, std::vector<double> kwh_per_step);

  const TimeGrid& grid() const { return grid_; }
  const std::vector<double>& samples() const { return kwh_; }
  std::int64_t steps() const { return static_cast<std::int64_t>(kwh_.size()); }
  double total_kwh() const;

 private:
  TimeGrid grid_;
  std::vector<double> kwh_;
};

/// Marginal carbon intensity of one grid region per base step, in gCO2eq/kWh.
class IntensitySeries {
 public:
  IntensitySeries(std::string region_id, TimeGrid grid, std::vector<double> g_per_kwh);

  const std::string& region_id() const { return region_id_; }
  const TimeGrid& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  double at(std::int64_t index) const { return values_[static_cast<std::size_t>(index)]; }

 private:
  std::string region_id_;
  TimeGrid grid_;
  std::vector<double> values_;
};

/// A set of intensity series on one shared grid, ordered by region id.
class RegionSet {
 public:
  RegionSet() = default;

  /// Inserts a series; rejects duplicate ids and grid mismatches.
  void add(IntensitySeries series);

  std::size_t size() const { return series_.size(); }
  bool empty() const { return series_.empty(); }
  const TimeGrid& grid() const;
  const IntensitySeries& at(const std::string& region_id) const;
  bool contains(const std::string& region_id) const;

  /// Series in ascending region-id order.
  const std::vector<IntensitySeries>& all() const { return series_; }

 private:
  std::vector<IntensitySeries> series_;  // sorted by region_id
};

/// Contiguous partition of a workload's base steps into checking-time slots.
struct SlotPartition {
  int checking_time_minutes = 0;
  /// Half-open [begin, end) offset ranges; the last slot may be shorter.
  std::vector<std::pair<std::int64_t, std::int64_t>> slots;

  std::int64_t k() const { return static_cast<std::int64_t>(slots.size()); }
};

/// Splits workload_steps base steps into k = ceil(steps*step/checking) slots.
SlotPartition slot_partition(std::int64_t workload_steps, int step_minutes,
                             int checking_time_minutes);

/// Mapping of workload offsets onto the regions' grid: offset j runs at grid
/// index start_index + j.
struct AlignedView {
  std::int64_t start_index = 0;
  std::int64_t workload_steps = 0;

  std::int64_t grid_index(std::int64_t offset) const { return start_index + offset; }
};

/// Validates that nominal_start lies on the regions' grid, that the energy
/// series uses the same step, and that the grid covers the whole workload
/// plus extra_steps of trailing window.
AlignedView align(const RegionSet& regions, const EnergySeries& energy,
                  std::int64_t nominal_start_epoch_s, std::int64_t extra_steps = 0);

/// Same check against a single region's series.
AlignedView align(const IntensitySeries& series, const EnergySeries& energy,
                  std::int64_t nominal_start_epoch_s, std::int64_t extra_steps = 0);

}  // namespace carbonsched
