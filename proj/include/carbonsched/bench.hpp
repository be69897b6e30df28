#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "carbonsched/strategy.hpp"

namespace carbonsched {

enum class StrategyKind { none, fs, par, ssfts, fsfts };

StrategyKind parse_strategy_kind(std::string_view name);
std::string_view to_string(StrategyKind kind);

/// Everything needed to rerun a retrospective sweep deterministically.
struct BenchmarkSpec {
  struct SynthSource {
    std::uint64_t seed = 7;
    int days = 365;
    int step_minutes = 5;
    std::int64_t start_epoch_s = 1609459200;  // 2021-01-01T00:00:00Z
  };

  /// Either synthetic presets or a directory of MOER CSVs.
  std::optional<SynthSource> synth;
  std::string region_dir;

  std::vector<std::string> workloads{"IF", "SVM", "AE", "HF-SCA"};
  std::vector<StrategyKind> strategies{StrategyKind::none, StrategyKind::fs, StrategyKind::par,
                                       StrategyKind::ssfts, StrategyKind::fsfts};
  std::vector<int> hours_set{6, 12, 18, 24};
  std::vector<int> checking_set{15, 30, 60, 120};
  int days_per_month = 6;
  int start_hour_utc = 0;
  int start_minute_utc = 0;
  int months = 12;
  std::vector<TransferMode> transfer_modes{TransferMode::upstream, TransferMode::in_training};
  TransferCostModel transfer;

  /// The full grid used throughout: 4 workloads x 5 strategies x both
  /// transfer modes x hours {6,12,18,24} x checking {15,30,60,120},
  /// 6 days per month over 12 months, on the seven synthetic regions.
  static BenchmarkSpec paper_grid(std::uint64_t seed);

  static BenchmarkSpec from_json(std::string_view text);
  std::string to_json() const;

  /// Days sampled in each month: 1, 1+stride, ... with stride = max(1, 30/n).
  std::vector<int> month_days() const;

  void validate() const;
};

/// One aggregated row of the sweep. Non-FtS strategies carry no transfer
/// mode. All means are arithmetic over the (month, day, region) cells;
/// deviations are population standard deviations.
struct ResultRow {
  std::string workload;
  StrategyKind strategy = StrategyKind::none;
  std::optional<TransferMode> mode;
  int hours = 0;
  int checking = 0;

  double mean_reduction = 0.0;  // fraction of the paired baseline, not percent
  double mean_total_g = 0.0;
  double mean_switches = 0.0;
  double mean_transfers = 0.0;
  double mean_duration_min = 0.0;
  double std_duration_min = 0.0;
  double mean_delay_min = 0.0;
  double std_delay_min = 0.0;
  std::int64_t samples = 0;

  bool operator==(const ResultRow&) const = default;
};

struct ResultTable {
  std::vector<ResultRow> rows;

  bool operator==(const ResultTable&) const = default;
};

/// Runs the retrospective protocol: for every configured cell, every
/// selected start and every launch/reference region, evaluates the strategy
/// against the no-strategy baseline with the same start and region, then
/// averages. Cells are evaluated in parallel (CARBON_SCHED_THREADS caps the
/// workers, 0 or unset = auto) and reduced in deterministic order. Any
/// coverage gap aborts the run naming the offending cell.
ResultTable run_retrospective(const BenchmarkSpec& spec, const RegionSet& regions);

/// Builds the region set named by the spec (synth presets or CSV directory).
RegionSet load_benchmark_regions(const BenchmarkSpec& spec);

enum class ReportFormat { csv, markdown, json };

ReportFormat parse_report_format(std::string_view name);

/// Renders the table with a fixed row order (workload, strategy, mode,
/// hours, checking) and percentages to one decimal. The JSON form preserves
/// full precision and round-trips through parse_report_json.
std::string emit_report(const ResultTable& table, ReportFormat format);

ResultTable parse_report_json(std::string_view text);

}  // namespace carbonsched
