#include "carbonsched/oracle.hpp"

#include <algorithm>
#include <limits>

#include "carbonsched/error.hpp"

// Brute-force references. Everything here recomputes emissions and transfer
// prices from first principles; none of the strategy planning code is used.

namespace carbonsched::oracle {

namespace {

double assignment_total(const EnergySeries& energy, const RegionSet& regions,
                        const StrategyConfig& config, std::int64_t abs_start,
                        const std::vector<std::size_t>& assignment,
                        const std::vector<std::pair<std::int64_t, std::int64_t>>& slots,
                        double shipment_kwh, std::size_t ref) {
  const auto& all = regions.all();
  const auto& samples = energy.samples();
  double total = 0.0;
  for (std::size_t g = 0; g < slots.size(); ++g) {
    const auto [b, e] = slots[g];
    const IntensitySeries& series = all[assignment[g]];
    for (std::int64_t j = b; j < e; ++j)
      total += samples[static_cast<std::size_t>(j)] * series.at(abs_start + j);
  }
  if (config.transfer_mode == TransferMode::in_training) {
    std::size_t current = ref;
    for (std::size_t g = 0; g < slots.size(); ++g) {
      if (assignment[g] == current) continue;
      const auto [b, e] = slots[g];
      total += shipment_kwh * all[assignment[g]].at(abs_start + b);
      current = assignment[g];
    }
  } else {
    std::vector<bool> priced(all.size(), false);
    for (std::size_t g = 0; g < slots.size(); ++g) {
      const std::size_t r = assignment[g];
      if (r == ref || priced[r]) continue;
      priced[r] = true;
      const auto [b, e] = slots[g];
      double cheapest = std::numeric_limits<double>::infinity();
      for (std::int64_t i = abs_start; i <= abs_start + b; ++i)
        cheapest = std::min(cheapest, all[r].at(i));
      total += shipment_kwh * cheapest;
    }
  }
  return total;
}

}  // namespace

FtsOracleResult oracle_fts(const EnergySeries& energy, const RegionSet& regions,
                           const StrategyConfig& config, bool flexible_start,
                           const OracleLimits& limits) {
  if (regions.empty()) fail(Errc::invalid_argument, "empty region set");
  if (!regions.contains(config.reference_region))
    fail(Errc::invalid_argument,
         "reference region " + config.reference_region + " is not in the region set");
  const std::int64_t extra = flexible_start ? config.window_extra_steps : 0;
  const AlignedView view = align(regions, energy, config.nominal_start_epoch_s, extra);
  const SlotPartition part =
      slot_partition(energy.steps(), regions.grid().step_minutes, config.checking_minutes);
  const std::size_t k = part.slots.size();
  const std::size_t region_count = regions.size();

  double combos = 1.0;
  for (std::size_t g = 0; g < k; ++g) combos *= static_cast<double>(region_count);
  if (combos > static_cast<double>(limits.max_assignments))
    fail(Errc::limit_exceeded,
         "assignment enumeration would exceed the limit of " +
             std::to_string(limits.max_assignments) + " (" + std::to_string(region_count) + "^" +
             std::to_string(k) + " per start)");

  const auto& all = regions.all();
  std::size_t ref = 0;
  while (all[ref].region_id() != config.reference_region) ++ref;
  const double ship = transfer_energy_kwh(config.transfer);

  FtsOracleResult best;
  best.total_g = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> assignment(k, 0);
  for (std::int64_t offset = 0; offset <= extra; ++offset) {
    const std::int64_t abs_start = view.start_index + offset;
    std::fill(assignment.begin(), assignment.end(), 0);
    for (;;) {
      const double total = assignment_total(energy, regions, config, abs_start, assignment,
                                            part.slots, ship, ref);
      if (total < best.total_g) {
        best.total_g = total;
        best.start_offset = offset;
        best.region_per_slot.clear();
        for (std::size_t r : assignment) best.region_per_slot.push_back(all[r].region_id());
      }
      // next assignment in lexicographic region order
      std::size_t g = k;
      while (g-- > 0) {
        if (++assignment[g] < region_count) break;
        assignment[g] = 0;
        if (g == 0) goto done_start;
      }
      if (k == 0) break;
    }
  done_start:;
  }
  return best;
}

ParOracleResult oracle_par(const EnergySeries& energy, const IntensitySeries& series,
                           const StrategyConfig& config, const OracleLimits& limits) {
  const AlignedView view =
      align(series, energy, config.nominal_start_epoch_s, config.window_extra_steps);
  const std::int64_t m = energy.steps();
  const std::int64_t n = m + config.window_extra_steps;

  double combos = 1.0;
  for (std::int64_t i = 0; i < m; ++i)
    combos = combos * static_cast<double>(n - i) / static_cast<double>(i + 1);
  if (combos > static_cast<double>(limits.max_subsets))
    fail(Errc::limit_exceeded, "subset enumeration would exceed the limit of " +
                                   std::to_string(limits.max_subsets) + " (C(" +
                                   std::to_string(n) + "," + std::to_string(m) + "))");

  const auto& samples = energy.samples();
  std::vector<std::int64_t> subset(static_cast<std::size_t>(m));
  for (std::int64_t j = 0; j < m; ++j) subset[static_cast<std::size_t>(j)] = j;

  ParOracleResult best;
  best.total_g = std::numeric_limits<double>::infinity();
  for (;;) {
    double total = 0.0;
    for (std::int64_t j = 0; j < m; ++j)
      total += samples[static_cast<std::size_t>(j)] *
               series.at(view.start_index + subset[static_cast<std::size_t>(j)]);
    if (total < best.total_g) {
      best.total_g = total;
      best.chosen_offsets = subset;
    }
    // next m-combination of [0, n) in lexicographic order
    std::int64_t j = m - 1;
    while (j >= 0 && subset[static_cast<std::size_t>(j)] == n - m + j) --j;
    if (j < 0) break;
    ++subset[static_cast<std::size_t>(j)];
    for (std::int64_t l = j + 1; l < m; ++l)
      subset[static_cast<std::size_t>(l)] = subset[static_cast<std::size_t>(l - 1)] + 1;
  }
  return best;
}

}  // namespace carbonsched::oracle
