#include "carbonsched/strategy.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "carbonsched/error.hpp"

namespace carbonsched {

TransferMode parse_transfer_mode(std::string_view name) {
  if (name == "upstream") return TransferMode::upstream;
  if (name == "intraining" || name == "in_training") return TransferMode::in_training;
  fail(Errc::invalid_argument, "unknown transfer mode \"" + std::string(name) +
                                   "\" (expected upstream or intraining)");
}

std::string_view to_string(TransferMode mode) {
  return mode == TransferMode::upstream ? "upstream" : "intraining";
}

std::int64_t StrategyConfig::extra_steps_from_hours(int hours, int step_minutes) {
  if (hours < 0) fail(Errc::invalid_argument, "window hours must be >= 0");
  if (step_minutes <= 0 || (hours * 60) % step_minutes != 0)
    fail(Errc::invalid_argument, "window hours must be a whole number of base steps");
  return static_cast<std::int64_t>(hours) * 60 / step_minutes;
}

std::int64_t ExecutionPlan::last_executed_index() const {
  if (segments.empty()) fail(Errc::invalid_argument, "plan has no segments");
  return segments.back().grid_end - 1;
}

namespace {

/// Canonical left-to-right accumulation used for every reported total and
/// every candidate comparison, so that identical plans always yield
/// identical doubles.
template <typename Resolver>
EmissionOutcome summarize_impl(const ExecutionPlan& plan, const EnergySeries& energy,
                               Resolver&& resolve, std::int64_t nominal_start_index) {
  EmissionOutcome out;
  out.step_minutes = plan.grid.step_minutes;
  double operational = 0.0;
  for (const auto& seg : plan.segments) {
    const IntensitySeries& series = resolve(seg.region);
    double seg_sum = 0.0;
    for (std::int64_t j = seg.offset_begin; j < seg.offset_end; ++j)
      seg_sum += energy.samples()[static_cast<std::size_t>(j)] *
                 series.at(seg.grid_begin + (j - seg.offset_begin));
    operational += seg_sum;
  }
  double transfer = 0.0;
  for (const auto& t : plan.transfers) transfer += t.emissions_g;
  out.operational_g = operational;
  out.transfer_g = transfer;
  out.total_g = operational + transfer;
  for (std::size_t i = 1; i < plan.segments.size(); ++i)
    if (plan.segments[i].region != plan.segments[i - 1].region) ++out.region_switches;
  out.dataset_transfers = static_cast<std::int64_t>(plan.transfers.size());
  out.start_delay_steps = plan.chosen_start_index - nominal_start_index;
  const std::int64_t last = plan.last_executed_index();
  out.duration_steps = last + 1 - plan.chosen_start_index;
  out.completion_epoch_s = plan.grid.instant_at(last + 1);
  return out;
}

ExecutionPlan single_segment_plan(const TimeGrid& grid, std::int64_t start_index,
                                  const std::string& region, std::int64_t workload_steps) {
  ExecutionPlan plan;
  plan.grid = grid;
  plan.chosen_start_index = start_index;
  plan.segments.push_back(
      {start_index, start_index + workload_steps, region, 0, workload_steps});
  return plan;
}

void check_fts_config(const RegionSet& regions, const StrategyConfig& config) {
  if (regions.empty()) fail(Errc::invalid_argument, "empty region set");
  if (config.reference_region.empty())
    fail(Errc::invalid_argument, "a reference region is required");
  if (!regions.contains(config.reference_region))
    fail(Errc::invalid_argument,
         "reference region " + config.reference_region + " is not in the region set");
  config.transfer.validate();
  if (config.window_extra_steps < 0)
    fail(Errc::invalid_argument, "window extension must be >= 0");
}

/// Per-candidate scratch shared across the starts of one fsFtS evaluation.
struct FtsScratch {
  std::vector<std::vector<double>> prefix;  // prefix[r][j] = sum of E*I_r over offsets < j
  std::vector<std::size_t> assignment;
};

void build_prefixes(const EnergySeries& energy, const RegionSet& regions,
                    std::int64_t abs_start, FtsScratch& scratch) {
  const auto& all = regions.all();
  const auto& samples = energy.samples();
  const std::int64_t steps = energy.steps();
  scratch.prefix.resize(all.size());
  for (std::size_t r = 0; r < all.size(); ++r) {
    auto& p = scratch.prefix[r];
    p.assign(static_cast<std::size_t>(steps) + 1, 0.0);
    for (std::int64_t j = 0; j < steps; ++j)
      p[static_cast<std::size_t>(j) + 1] =
          p[static_cast<std::size_t>(j)] +
          samples[static_cast<std::size_t>(j)] * all[r].at(abs_start + j);
  }
}

ExecutionPlan build_fts_plan(const TimeGrid& grid, std::int64_t abs_start,
                             const SlotPartition& part, const RegionSet& regions,
                             const std::vector<std::size_t>& assignment) {
  ExecutionPlan plan;
  plan.grid = grid;
  plan.chosen_start_index = abs_start;
  const auto& all = regions.all();
  for (std::size_t g = 0; g < part.slots.size(); ++g) {
    const auto [b, e] = part.slots[g];
    const std::string& region = all[assignment[g]].region_id();
    if (!plan.segments.empty() && plan.segments.back().region == region) {
      plan.segments.back().grid_end = abs_start + e;
      plan.segments.back().offset_end = e;
    } else {
      plan.segments.push_back({abs_start + b, abs_start + e, region, b, e});
    }
  }
  return plan;
}

/// Plans one Follow-the-Sun run starting at grid index abs_start. The result
/// never totals more than staying put in the reference region.
StrategyResult fts_plan_at(const EnergySeries& energy, const RegionSet& regions,
                           const StrategyConfig& config, std::int64_t abs_start,
                           std::int64_t nominal_index, FtsScratch& scratch) {
  const auto& all = regions.all();
  const std::size_t region_count = all.size();
  const std::int64_t steps = energy.steps();
  const SlotPartition part =
      slot_partition(steps, regions.grid().step_minutes, config.checking_minutes);
  const std::size_t k = part.slots.size();
  build_prefixes(energy, regions, abs_start, scratch);
  const auto slot_sum = [&](std::size_t r, std::int64_t b, std::int64_t e) {
    return scratch.prefix[r][static_cast<std::size_t>(e)] -
           scratch.prefix[r][static_cast<std::size_t>(b)];
  };
  std::size_t ref = 0;
  while (all[ref].region_id() != config.reference_region) ++ref;

  const double shipment_kwh = transfer_energy_kwh(config.transfer);
  auto& assignment = scratch.assignment;
  assignment.assign(k, ref);

  if (config.transfer_mode == TransferMode::in_training) {
    std::size_t current = ref;
    for (std::size_t g = 0; g < k; ++g) {
      const auto [b, e] = part.slots[g];
      double best = std::numeric_limits<double>::infinity();
      std::size_t best_r = current;
      for (std::size_t r = 0; r < region_count; ++r) {
        double cost = slot_sum(r, b, e);
        if (r != current) cost += shipment_kwh * all[r].at(abs_start + b);
        if (cost < best) {
          best = cost;
          best_r = r;
        }
      }
      assignment[g] = best_r;
      current = best_r;
    }
  } else {
    // Pure per-slot argmin first; then drop any region whose one-time
    // shipment costs more than the slot savings it brings, least beneficial
    // first, and replan with the remainder.
    std::vector<bool> available(region_count, true);
    for (;;) {
      for (std::size_t g = 0; g < k; ++g) {
        const auto [b, e] = part.slots[g];
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_r = ref;
        for (std::size_t r = 0; r < region_count; ++r) {
          if (!available[r]) continue;
          const double cost = slot_sum(r, b, e);
          if (cost < best) {
            best = cost;
            best_r = r;
          }
        }
        assignment[g] = best_r;
      }
      double worst_net = 0.0;
      std::size_t worst_r = region_count;
      for (std::size_t r = 0; r < region_count; ++r) {
        if (!available[r] || r == ref) continue;
        std::int64_t first_use = -1;
        double savings = 0.0;
        for (std::size_t g = 0; g < k; ++g) {
          if (assignment[g] != r) continue;
          const auto [b, e] = part.slots[g];
          if (first_use < 0) first_use = b;
          double alternative = std::numeric_limits<double>::infinity();
          for (std::size_t other = 0; other < region_count; ++other) {
            if (!available[other] || other == r) continue;
            alternative = std::min(alternative, slot_sum(other, b, e));
          }
          savings += alternative - slot_sum(r, b, e);
        }
        if (first_use < 0) continue;
        double cheapest = std::numeric_limits<double>::infinity();
        for (std::int64_t i = abs_start; i <= abs_start + first_use; ++i)
          cheapest = std::min(cheapest, all[r].at(i));
        const double cost = shipment_kwh * cheapest;
        if (savings < cost && savings - cost < worst_net) {
          worst_net = savings - cost;
          worst_r = r;
        }
      }
      if (worst_r == region_count) break;
      available[worst_r] = false;
    }
  }

  ExecutionPlan plan = build_fts_plan(regions.grid(), abs_start, part, regions, assignment);
  plan = apply_transfer_mode(std::move(plan), regions, config.transfer, config.transfer_mode,
                             config.reference_region);
  EmissionOutcome outcome = summarize_outcome(plan, energy, regions, nominal_index);

  ExecutionPlan stay =
      single_segment_plan(regions.grid(), abs_start, config.reference_region, steps);
  EmissionOutcome stay_outcome = summarize_outcome(stay, energy, regions, nominal_index);
  if (outcome.total_g > stay_outcome.total_g)
    return {std::move(stay), stay_outcome};
  return {std::move(plan), outcome};
}

}  // namespace

ExecutionPlan apply_transfer_mode(ExecutionPlan plan, const RegionSet& regions,
                                  const TransferCostModel& model, TransferMode mode,
                                  const std::string& reference_region) {
  model.validate();
  plan.transfers.clear();
  const double shipment_kwh = transfer_energy_kwh(model);
  if (mode == TransferMode::in_training) {
    std::string current = reference_region;
    for (const auto& seg : plan.segments) {
      if (seg.region == current) continue;
      const IntensitySeries& dest = regions.at(seg.region);
      plan.transfers.push_back(
          {seg.grid_begin, current, seg.region, shipment_kwh * dest.at(seg.grid_begin)});
      current = seg.region;
    }
  } else {
    std::vector<std::string> shipped;
    for (const auto& seg : plan.segments) {
      if (seg.region == reference_region) continue;
      if (std::find(shipped.begin(), shipped.end(), seg.region) != shipped.end()) continue;
      shipped.push_back(seg.region);
      const IntensitySeries& dest = regions.at(seg.region);
      // Ship at the destination's cheapest instant between plan start and
      // first use, earliest such instant on ties.
      std::int64_t best_index = plan.chosen_start_index;
      double best = dest.at(best_index);
      for (std::int64_t i = plan.chosen_start_index + 1; i <= seg.grid_begin; ++i) {
        if (dest.at(i) < best) {
          best = dest.at(i);
          best_index = i;
        }
      }
      plan.transfers.push_back({best_index, reference_region, seg.region, shipment_kwh * best});
    }
    std::sort(plan.transfers.begin(), plan.transfers.end(),
              [](const ExecutionPlan::Transfer& a, const ExecutionPlan::Transfer& b) {
                return a.grid_index != b.grid_index ? a.grid_index < b.grid_index
                                                    : a.to_region < b.to_region;
              });
  }
  return plan;
}

EmissionOutcome summarize_outcome(const ExecutionPlan& plan, const EnergySeries& energy,
                                  const RegionSet& regions, std::int64_t nominal_start_index) {
  return summarize_impl(
      plan, energy, [&](const std::string& id) -> const IntensitySeries& { return regions.at(id); },
      nominal_start_index);
}

EmissionOutcome summarize_outcome(const ExecutionPlan& plan, const EnergySeries& energy,
                                  const IntensitySeries& series,
                                  std::int64_t nominal_start_index) {
  return summarize_impl(
      plan, energy,
      [&](const std::string& id) -> const IntensitySeries& {
        if (id != series.region_id())
          fail(Errc::invalid_argument, "plan references unknown region " + id);
        return series;
      },
      nominal_start_index);
}

StrategyResult no_strategy(const EnergySeries& energy, const IntensitySeries& series,
                           std::int64_t nominal_start_epoch_s) {
  const AlignedView view = align(series, energy, nominal_start_epoch_s);
  ExecutionPlan plan = single_segment_plan(series.grid(), view.start_index, series.region_id(),
                                           energy.steps());
  EmissionOutcome outcome = summarize_outcome(plan, energy, series, view.start_index);
  return {std::move(plan), outcome};
}

StrategyResult flexible_start(const EnergySeries& energy, const IntensitySeries& series,
                              const StrategyConfig& config) {
  if (config.window_extra_steps < 0)
    fail(Errc::invalid_argument, "window extension must be >= 0");
  const AlignedView view =
      align(series, energy, config.nominal_start_epoch_s, config.window_extra_steps);
  const auto& samples = energy.samples();
  const std::int64_t steps = energy.steps();
  double best = std::numeric_limits<double>::infinity();
  std::int64_t best_offset = 0;
  for (std::int64_t offset = 0; offset <= config.window_extra_steps; ++offset) {
    double total = 0.0;
    for (std::int64_t j = 0; j < steps; ++j)
      total += samples[static_cast<std::size_t>(j)] * series.at(view.start_index + offset + j);
    if (total < best) {
      best = total;
      best_offset = offset;
    }
  }
  ExecutionPlan plan = single_segment_plan(series.grid(), view.start_index + best_offset,
                                           series.region_id(), steps);
  EmissionOutcome outcome = summarize_outcome(plan, energy, series, view.start_index);
  return {std::move(plan), outcome};
}

StrategyResult pause_and_resume(const EnergySeries& energy, const IntensitySeries& series,
                                const StrategyConfig& config) {
  if (config.window_extra_steps < 0)
    fail(Errc::invalid_argument, "window extension must be >= 0");
  const AlignedView view =
      align(series, energy, config.nominal_start_epoch_s, config.window_extra_steps);
  const std::int64_t steps = energy.steps();
  const std::int64_t window = steps + config.window_extra_steps;

  std::vector<std::int64_t> order(static_cast<std::size_t>(window));
  std::iota(order.begin(), order.end(), std::int64_t{0});
  std::sort(order.begin(), order.end(), [&](std::int64_t a, std::int64_t b) {
    const double ia = series.at(view.start_index + a);
    const double ib = series.at(view.start_index + b);
    return ia != ib ? ia < ib : a < b;
  });
  std::vector<std::int64_t> chosen(order.begin(), order.begin() + steps);
  std::sort(chosen.begin(), chosen.end());

  ExecutionPlan plan;
  plan.grid = series.grid();
  plan.chosen_start_index = view.start_index + chosen.front();
  std::int64_t done = 0;
  std::size_t i = 0;
  while (i < chosen.size()) {
    std::size_t j = i;
    while (j + 1 < chosen.size() && chosen[j + 1] == chosen[j] + 1) ++j;
    const std::int64_t run = static_cast<std::int64_t>(j - i) + 1;
    if (!plan.segments.empty())
      plan.pauses.push_back(
          {plan.segments.back().grid_end, view.start_index + chosen[i]});
    plan.segments.push_back({view.start_index + chosen[i], view.start_index + chosen[j] + 1,
                             series.region_id(), done, done + run});
    done += run;
    i = j + 1;
  }
  EmissionOutcome outcome = summarize_outcome(plan, energy, series, view.start_index);
  return {std::move(plan), outcome};
}

StrategyResult static_start_fts(const EnergySeries& energy, const RegionSet& regions,
                                const StrategyConfig& config) {
  check_fts_config(regions, config);
  const AlignedView view = align(regions, energy, config.nominal_start_epoch_s);
  FtsScratch scratch;
  return fts_plan_at(energy, regions, config, view.start_index, view.start_index, scratch);
}

StrategyResult flexible_start_fts(const EnergySeries& energy, const RegionSet& regions,
                                  const StrategyConfig& config) {
  check_fts_config(regions, config);
  const AlignedView view =
      align(regions, energy, config.nominal_start_epoch_s, config.window_extra_steps);
  FtsScratch scratch;
  StrategyResult best;
  bool have = false;
  for (std::int64_t offset = 0; offset <= config.window_extra_steps; ++offset) {
    StrategyResult candidate =
        fts_plan_at(energy, regions, config, view.start_index + offset, view.start_index, scratch);
    if (!have || candidate.outcome.total_g < best.outcome.total_g) {
      best = std::move(candidate);
      have = true;
    }
  }
  return best;
}

StrategyResult dp_optimal_fts(const EnergySeries& energy, const RegionSet& regions,
                              const StrategyConfig& config) {
  check_fts_config(regions, config);
  const AlignedView view = align(regions, energy, config.nominal_start_epoch_s);
  const std::int64_t abs_start = view.start_index;
  const auto& all = regions.all();
  const std::size_t region_count = all.size();
  const SlotPartition part =
      slot_partition(energy.steps(), regions.grid().step_minutes, config.checking_minutes);
  const std::size_t k = part.slots.size();
  FtsScratch scratch;
  build_prefixes(energy, regions, abs_start, scratch);
  const double shipment_kwh = transfer_energy_kwh(config.transfer);

  std::size_t ref = 0;
  while (all[ref].region_id() != config.reference_region) ++ref;

  // suffix[cur] = minimal cost of the remaining slots given the data
  // currently resides in `cur`; in-training pricing per switch.
  std::vector<double> suffix(region_count, 0.0);
  std::vector<double> next(region_count, 0.0);
  std::vector<std::vector<std::size_t>> choice(k, std::vector<std::size_t>(region_count, 0));
  for (std::size_t g = k; g-- > 0;) {
    const auto [b, e] = part.slots[g];
    for (std::size_t cur = 0; cur < region_count; ++cur) {
      double best = std::numeric_limits<double>::infinity();
      std::size_t best_r = cur;
      for (std::size_t r = 0; r < region_count; ++r) {
        double cost = scratch.prefix[r][static_cast<std::size_t>(e)] -
                      scratch.prefix[r][static_cast<std::size_t>(b)];
        if (r != cur) cost += shipment_kwh * all[r].at(abs_start + b);
        cost += suffix[r];
        if (cost < best) {
          best = cost;
          best_r = r;
        }
      }
      next[cur] = best;
      choice[g][cur] = best_r;
    }
    suffix.swap(next);
  }

  std::vector<std::size_t> assignment(k);
  std::size_t current = ref;
  for (std::size_t g = 0; g < k; ++g) {
    assignment[g] = choice[g][current];
    current = assignment[g];
  }

  ExecutionPlan plan = build_fts_plan(regions.grid(), abs_start, part, regions, assignment);
  plan = apply_transfer_mode(std::move(plan), regions, config.transfer,
                             TransferMode::in_training, config.reference_region);
  EmissionOutcome outcome = summarize_outcome(plan, energy, regions, abs_start);
  return {std::move(plan), outcome};
}

}  // namespace carbonsched
