#include "carbonsched/series.hpp"

#include <algorithm>
#include <cmath>

#include "carbonsched/error.hpp"

namespace carbonsched {

namespace {

void check_samples(const std::vector<double>& values, const TimeGrid& grid, const char* what) {
  if (static_cast<std::int64_t>(values.size()) != grid.n_steps)
    fail(Errc::invalid_argument,
         std::string(what) + " length does not match its grid (" +
             std::to_string(values.size()) + " vs " + std::to_string(grid.n_steps) + " steps)");
  for (double v : values) {
    if (!std::isfinite(v) || v < 0.0)
      fail(Errc::data_error, std::string(what) + " contains a negative or non-finite sample");
  }
}

}  // namespace

EnergySeries::EnergySeries(TimeGrid grid, std::vector<double> kwh_per_step)
    : grid_(TimeGrid::make(grid.start_epoch_s, grid.step_minutes, grid.n_steps)),
      kwh_(std::move(kwh_per_step)) {
  check_samples(kwh_, grid_, "energy series");
}

double EnergySeries::total_kwh() const {
  double sum = 0.0;
  for (double v : kwh_) sum += v;
  return sum;
}

IntensitySeries::IntensitySeries(std::string region_id, TimeGrid grid,
                                 std::vector<double> g_per_kwh)
    : region_id_(std::move(region_id)),
      grid_(TimeGrid::make(grid.start_epoch_s, grid.step_minutes, grid.n_steps)),
      values_(std::move(g_per_kwh)) {
  if (region_id_.empty()) fail(Errc::invalid_argument, "region id must be nonempty");
  check_samples(values_, grid_, "intensity series");
}

void RegionSet::add(IntensitySeries series) {
  if (!series_.empty() && !series_.front().grid().same_axis(series.grid()))
    fail(Errc::data_error, "region " + series.region_id() +
                               " is on a different grid than the rest of the set");
  auto pos = std::lower_bound(series_.begin(), series_.end(), series.region_id(),
                              [](const IntensitySeries& s, const std::string& id) {
                                return s.region_id() < id;
                              });
  if (pos != series_.end() && pos->region_id() == series.region_id())
    fail(Errc::invalid_argument, "duplicate region id " + series.region_id());
  series_.insert(pos, std::move(series));
}

const TimeGrid& RegionSet::grid() const {
  if (series_.empty()) fail(Errc::invalid_argument, "region set is empty");
  return series_.front().grid();
}

const IntensitySeries& RegionSet::at(const std::string& region_id) const {
  for (const auto& s : series_)
    if (s.region_id() == region_id) return s;
  fail(Errc::invalid_argument, "unknown region " + region_id);
}

bool RegionSet::contains(const std::string& region_id) const {
  for (const auto& s : series_)
    if (s.region_id() == region_id) return true;
  return false;
}

SlotPartition slot_partition(std::int64_t workload_steps, int step_minutes,
                             int checking_time_minutes) {
  if (workload_steps < 1) fail(Errc::invalid_argument, "workload needs at least one step");
  if (step_minutes < 1) fail(Errc::invalid_argument, "step must be positive");
  if (checking_time_minutes < 1 || checking_time_minutes % step_minutes != 0)
    fail(Errc::invalid_argument,
         "checking time (" + std::to_string(checking_time_minutes) +
             "m) must be a positive multiple of the base step (" + std::to_string(step_minutes) +
             "m)");
  const std::int64_t per_slot = checking_time_minutes / step_minutes;
  SlotPartition out;
  out.checking_time_minutes = checking_time_minutes;
  for (std::int64_t begin = 0; begin < workload_steps; begin += per_slot)
    out.slots.emplace_back(begin, std::min(begin + per_slot, workload_steps));
  return out;
}

namespace {

AlignedView align_on_grid(const TimeGrid& grid, const EnergySeries& energy,
                          std::int64_t nominal_start_epoch_s, std::int64_t extra_steps) {
  if (energy.grid().step_minutes != grid.step_minutes)
    fail(Errc::data_error, "energy step (" + std::to_string(energy.grid().step_minutes) +
                               "m) differs from the region step (" +
                               std::to_string(grid.step_minutes) + "m)");
  if (extra_steps < 0) fail(Errc::invalid_argument, "window extension must be >= 0");
  const std::int64_t start = grid.index_of(nominal_start_epoch_s);
  const std::int64_t needed = start + energy.steps() + extra_steps;
  if (needed > grid.n_steps)
    fail(Errc::coverage_error,
         "window [" + format_iso8601_utc(nominal_start_epoch_s) + " + " +
             std::to_string((energy.steps() + extra_steps) * grid.step_minutes) +
             "m] exceeds the available history ending " + format_iso8601_utc(grid.end_epoch_s()));
  return AlignedView{start, energy.steps()};
}

}  // namespace

AlignedView align(const RegionSet& regions, const EnergySeries& energy,
                  std::int64_t nominal_start_epoch_s, std::int64_t extra_steps) {
  return align_on_grid(regions.grid(), energy, nominal_start_epoch_s, extra_steps);
}

AlignedView align(const IntensitySeries& series, const EnergySeries& energy,
                  std::int64_t nominal_start_epoch_s, std::int64_t extra_steps) {
  return align_on_grid(series.grid(), energy, nominal_start_epoch_s, extra_steps);
}

}  // namespace carbonsched
