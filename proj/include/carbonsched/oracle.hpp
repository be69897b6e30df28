#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "carbonsched/strategy.hpp"

namespace carbonsched::oracle {

/// Enumeration budgets. Exceeding one raises Error(limit_exceeded); the
/// oracle never truncates silently.
struct OracleLimits {
  std::int64_t max_assignments = 2'000'000;  // region-per-slot assignments per start
  std::int64_t max_subsets = 1'000'000;      // index subsets for PaR
};

struct FtsOracleResult {
  double total_g = 0.0;
  std::int64_t start_offset = 0;          // steps after nominal start
  std::vector<std::string> region_per_slot;
};

/// Exhaustive minimum over every region-per-slot assignment (and, when
/// flexible_start is true, every candidate start offset in the window),
/// priced per config.transfer_mode. Ties resolve to the earliest start and
/// then the lexicographically smallest region path. Independent of the
/// strategy implementations by construction.
FtsOracleResult oracle_fts(const EnergySeries& energy, const RegionSet& regions,
                           const StrategyConfig& config, bool flexible_start,
                           const OracleLimits& limits = {});

struct ParOracleResult {
  double total_g = 0.0;
  std::vector<std::int64_t> chosen_offsets;  // window offsets, ascending
};

/// Exhaustive minimum over all order-preserving index subsets of the window,
/// pairing the j-th energy sample with the j-th chosen step.
ParOracleResult oracle_par(const EnergySeries& energy, const IntensitySeries& series,
                           const StrategyConfig& config, const OracleLimits& limits = {});

}  // namespace carbonsched::oracle
