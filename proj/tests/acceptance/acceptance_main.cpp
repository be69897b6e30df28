// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "carbonsched/bench.hpp"
#include "carbonsched/error.hpp"
#include "carbonsched/oracle.hpp"
#include "carbonsched/strategy.hpp"
#include "carbonsched/synth.hpp"
#include "carbonsched/traces.hpp"

using namespace carbonsched;
namespace fs = std::filesystem;

namespace {

constexpr std::int64_t kStart = 1609459200;  // 2021-01-01T00:00:00Z

EnergySeries energy_of(std::vector<double> kwh) {
  const auto n = static_cast<std::int64_t>(kwh.size());
  return EnergySeries(TimeGrid::make(kStart, 5, n), std::move(kwh));
}

IntensitySeries series_of(std::string id, std::vector<double> values) {
  const auto n = static_cast<std::int64_t>(values.size());
  return IntensitySeries(std::move(id), TimeGrid::make(kStart, 5, n), std::move(values));
}

struct Instance {
  EnergySeries energy;
  RegionSet regions;
  StrategyConfig config;
};

/// Random instance with an exact k-slot partition and extra_steps of slack.
Instance random_instance(SplitMix64& rng, int max_regions, int max_slots_two_regions,
                         int max_slots_three_regions, bool with_transfer, int extra_steps) {
  const int region_count = 1 + static_cast<int>(rng.next_u64() % max_regions);
  const int max_slots = region_count >= 3 ? max_slots_three_regions : max_slots_two_regions;
  const int slot_len = 1 + static_cast<int>(rng.next_u64() % 3);
  const int k = 1 + static_cast<int>(rng.next_u64() % max_slots);
  const int tail = 1 + static_cast<int>(rng.next_u64() % slot_len);
  const int steps = (k - 1) * slot_len + tail;

  std::vector<double> e(steps);
  for (auto& v : e) v = 0.01 + rng.next_unit() * 0.5;
  Instance inst{energy_of(e), RegionSet{}, StrategyConfig{}};
  static const char* kIds[] = {"A", "B", "C"};
  for (int r = 0; r < region_count; ++r) {
    std::vector<double> values(steps + extra_steps);
    for (auto& v : values) v = 10.0 + rng.next_unit() * 990.0;
    inst.regions.add(series_of(kIds[r], values));
  }
  inst.config.nominal_start_epoch_s = kStart;
  inst.config.checking_minutes = slot_len * 5;
  inst.config.reference_region = "A";
  inst.config.window_extra_steps = extra_steps;
  inst.config.transfer.dataset_gb = with_transfer ? 0.05 + rng.next_unit() * 3.0 : 0.0;
  return inst;
}

bool close(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

// ---- criterion 1 -----------------------------------------------------------

bool criterion_oracle_equivalence(std::string& detail) {
  const auto t0 = std::chrono::steady_clock::now();
  SplitMix64 rng(20210101);
  int checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int extra = static_cast<int>(rng.next_u64() % 7);
    Instance inst = random_instance(rng, 3, 12, 9, false, extra);

    const auto exact_static = oracle::oracle_fts(inst.energy, inst.regions, inst.config, false);
    const auto greedy = static_start_fts(inst.energy, inst.regions, inst.config);
    if (!close(exact_static.total_g, greedy.outcome.total_g, 1e-9)) {
      detail = "ssFtS mismatch on trial " + std::to_string(trial);
      return false;
    }
    const auto exact_flexible =
        oracle::oracle_fts(inst.energy, inst.regions, inst.config, true);
    const auto flexible = flexible_start_fts(inst.energy, inst.regions, inst.config);
    if (!close(exact_flexible.total_g, flexible.outcome.total_g, 1e-9)) {
      detail = "fsFtS mismatch on trial " + std::to_string(trial);
      return false;
    }
    ++checked;
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d instances, static+flexible vs oracle, %.1f s (budget 60)",
                checked, seconds);
  detail = buf;
  return seconds < 60.0;
}

// ---- criterion 2 -----------------------------------------------------------

bool criterion_dp_exactness(std::string& detail) {
  SplitMix64 rng(20210202);
  for (int trial = 0; trial < 500; ++trial) {
    Instance inst = random_instance(rng, 3, 10, 8, true, 0);
    inst.config.transfer_mode = TransferMode::in_training;
    const auto exact = oracle::oracle_fts(inst.energy, inst.regions, inst.config, false);
    const auto dp = dp_optimal_fts(inst.energy, inst.regions, inst.config);
    if (!close(exact.total_g, dp.outcome.total_g, 1e-9)) {
      detail = "dp mismatch on trial " + std::to_string(trial) + ": oracle " +
               std::to_string(exact.total_g) + " vs dp " + std::to_string(dp.outcome.total_g);
      return false;
    }
  }
  detail = "500 instances with nonzero transfer cost, 1e-9 relative";
  return true;
}

// ---- criterion 3 -----------------------------------------------------------

bool criterion_par_optimality(std::string& detail) {
  SplitMix64 rng(20210303);
  for (int trace = 0; trace < 200; ++trace) {
    const int window = 2 + static_cast<int>(rng.next_u64() % 17);  // <= 18 steps
    const int workload = 1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(window));
    std::vector<double> values(window);
    for (auto& v : values) v = 10.0 + rng.next_unit() * 990.0;
    const double per_step = 0.05 + rng.next_unit() * 0.2;
    const auto energy = energy_of(std::vector<double>(workload, per_step));
    const auto series = series_of("X", values);
    StrategyConfig config;
    config.nominal_start_epoch_s = kStart;
    config.window_extra_steps = window - workload;

    const auto exact = oracle::oracle_par(energy, series, config);
    const auto greedy = pause_and_resume(energy, series, config);
    if (!close(exact.total_g, greedy.outcome.total_g, 1e-12)) {
      detail = "PaR total mismatch on trace " + std::to_string(trace);
      return false;
    }
    // the chosen steps must be identical, not just the totals
    std::vector<std::int64_t> greedy_offsets;
    for (const auto& seg : greedy.plan.segments)
      for (std::int64_t i = seg.grid_begin; i < seg.grid_end; ++i) greedy_offsets.push_back(i);
    if (greedy_offsets != exact.chosen_offsets) {
      detail = "PaR chose different steps on trace " + std::to_string(trace);
      return false;
    }
  }
  detail = "200 uniform-energy traces, windows <= 18 steps, sets and totals agree";
  return true;
}

// ---- criteria 4 and 5 ------------------------------------------------------

struct DominanceStats {
  int instances = 0;
  bool ok = true;
  std::string detail;
};

DominanceStats dominance_sweep() {
  DominanceStats stats;
  SplitMix64 rng(20210404);
  const int hour_set[] = {0, 6, 12, 18, 24};
  for (int trial = 0; trial < 250 && stats.ok; ++trial) {
    const int steps = 2 + static_cast<int>(rng.next_u64() % 35);
    const int region_count = 1 + static_cast<int>(rng.next_u64() % 3);
    const int checking = std::vector<int>{15, 30, 60, 120}[rng.next_u64() % 4];
    const std::int64_t max_extra = StrategyConfig::extra_steps_from_hours(24, 5);

    RegionSet regions;
    static const char* kIds[] = {"A", "B", "C"};
    for (int r = 0; r < region_count; ++r) {
      std::vector<double> values(steps + max_extra);
      for (auto& v : values) v = 10.0 + rng.next_unit() * 990.0;
      regions.add(series_of(kIds[r], values));
    }
    std::vector<double> e(steps);
    for (auto& v : e) v = 0.01 + rng.next_unit() * 0.5;
    const auto energy = energy_of(e);

    StrategyConfig config;
    config.nominal_start_epoch_s = kStart;
    config.checking_minutes = checking;
    config.reference_region = "A";

    const StrategyResult base = no_strategy(energy, regions.at("A"), kStart);

    double prev_fs = std::numeric_limits<double>::infinity();
    double prev_fsf_up = std::numeric_limits<double>::infinity();
    double prev_fsf_in = std::numeric_limits<double>::infinity();
    for (int hours : hour_set) {
      config.window_extra_steps = StrategyConfig::extra_steps_from_hours(hours, 5);

      const StrategyResult fs = flexible_start(energy, regions.at("A"), config);
      if (fs.outcome.total_g > base.outcome.total_g) {
        stats.detail = "FS > NoStrategy";
        stats.ok = false;
        break;
      }
      if (fs.outcome.start_delay_minutes() > hours * 60 || fs.outcome.duration_steps != steps) {
        stats.detail = "FS timing contract violated";
        stats.ok = false;
        break;
      }
      if (fs.outcome.total_g > prev_fs) {
        stats.detail = "FS window monotonicity violated";
        stats.ok = false;
        break;
      }
      prev_fs = fs.outcome.total_g;

      StrategyConfig zero = config;
      zero.transfer.dataset_gb = 0.0;
      zero.transfer_mode = TransferMode::in_training;
      const StrategyResult fsf_zero = flexible_start_fts(energy, regions, zero);
      if (fsf_zero.outcome.total_g > fs.outcome.total_g) {
        stats.detail = "fsFtS(zero transfer) > FS";
        stats.ok = false;
        break;
      }

      for (TransferMode mode : {TransferMode::upstream, TransferMode::in_training}) {
        config.transfer_mode = mode;
        const StrategyResult fsf = flexible_start_fts(energy, regions, config);
        double& prev = mode == TransferMode::upstream ? prev_fsf_up : prev_fsf_in;
        if (fsf.outcome.total_g > prev) {
          stats.detail = "fsFtS window monotonicity violated";
          stats.ok = false;
          break;
        }
        prev = fsf.outcome.total_g;
        if (fsf.outcome.duration_steps != steps) {
          stats.detail = "fsFtS duration contract violated";
          stats.ok = false;
          break;
        }
      }
      if (!stats.ok) break;
    }
    if (!stats.ok) break;

    config.window_extra_steps = 0;
    config.transfer_mode = TransferMode::in_training;
    const StrategyResult ss = static_start_fts(energy, regions, config);
    if (ss.outcome.total_g > base.outcome.total_g) {
      stats.detail = "ssFtS(in_training) > NoStrategy";
      stats.ok = false;
      break;
    }
    if (ss.outcome.start_delay_steps != 0 || ss.outcome.duration_steps != steps) {
      stats.detail = "ssFtS timing contract violated";
      stats.ok = false;
      break;
    }
    ++stats.instances;
  }
  return stats;
}

bool criterion_dominance(std::string& detail) {
  const DominanceStats stats = dominance_sweep();
  detail = stats.ok ? std::to_string(stats.instances) +
                          " seeded instances, exact <= comparisons, windows {0,6,12,18,24}h"
                    : stats.detail;
  return stats.ok;
}

bool criterion_timing(std::string& detail) {
  // timing contracts are asserted inside the same sweep; rerun independently
  SplitMix64 rng(20210505);
  for (int trial = 0; trial < 300; ++trial) {
    Instance inst = random_instance(rng, 3, 10, 10, true, 12);
    for (TransferMode mode : {TransferMode::upstream, TransferMode::in_training}) {
      inst.config.transfer_mode = mode;
      const StrategyResult ss = static_start_fts(inst.energy, inst.regions, inst.config);
      if (ss.outcome.start_delay_steps != 0) {
        detail = "ssFtS delayed a start";
        return false;
      }
      if (ss.outcome.duration_steps != inst.energy.steps()) {
        detail = "ssFtS stretched a workload";
        return false;
      }
      if (ss.outcome.completion_epoch_s !=
          kStart + inst.energy.steps() * inst.regions.grid().step_seconds()) {
        detail = "ssFtS completion drifted";
        return false;
      }
    }
    const StrategyResult fs =
        flexible_start(inst.energy, inst.regions.at("A"), inst.config);
    if (fs.outcome.start_delay_steps > inst.config.window_extra_steps) {
      detail = "FS delay exceeded the window";
      return false;
    }
  }
  detail = "300 instances: ssFtS delay 0 and exact duration, FS delay within the window";
  return true;
}

// ---- criterion 6 -----------------------------------------------------------

bool criterion_degeneracy(std::string& detail) {
  SplitMix64 rng(20210606);
  for (int trial = 0; trial < 100; ++trial) {
    // single region: FtS variants must equal their region-free counterparts
    Instance inst = random_instance(rng, 1, 10, 10, true, 8);
    for (TransferMode mode : {TransferMode::upstream, TransferMode::in_training}) {
      inst.config.transfer_mode = mode;
      const StrategyResult ss = static_start_fts(inst.energy, inst.regions, inst.config);
      const StrategyResult base = no_strategy(inst.energy, inst.regions.at("A"), kStart);
      const StrategyResult fsf = flexible_start_fts(inst.energy, inst.regions, inst.config);
      const StrategyResult fs = flexible_start(inst.energy, inst.regions.at("A"), inst.config);
      const auto same = [](const EmissionOutcome& a, const EmissionOutcome& b) {
        return a.operational_g == b.operational_g && a.transfer_g == b.transfer_g &&
               a.total_g == b.total_g && a.region_switches == b.region_switches &&
               a.dataset_transfers == b.dataset_transfers &&
               a.start_delay_steps == b.start_delay_steps &&
               a.duration_steps == b.duration_steps &&
               a.completion_epoch_s == b.completion_epoch_s;
      };
      if (!same(ss.outcome, base.outcome)) {
        detail = "single-region ssFtS differs from NoStrategy";
        return false;
      }
      if (!same(fsf.outcome, fs.outcome)) {
        detail = "single-region fsFtS differs from FS";
        return false;
      }
    }

    // constant intensity: 0.0% reduction for every strategy
    const int region_count = 1 + static_cast<int>(rng.next_u64() % 3);
    const int steps = 2 + static_cast<int>(rng.next_u64() % 12);
    const int extra = static_cast<int>(rng.next_u64() % 8);
    const double level = 50.0 + rng.next_unit() * 500.0;
    RegionSet flat;
    static const char* kIds[] = {"A", "B", "C"};
    for (int r = 0; r < region_count; ++r)
      flat.add(series_of(kIds[r], std::vector<double>(steps + extra, level)));
    std::vector<double> e(steps);
    for (auto& v : e) v = 0.01 + rng.next_unit() * 0.5;
    const auto energy = energy_of(e);
    StrategyConfig config;
    config.nominal_start_epoch_s = kStart;
    config.window_extra_steps = extra;
    config.checking_minutes = 5;
    config.reference_region = "A";

    const double baseline = no_strategy(energy, flat.at("A"), kStart).outcome.total_g;
    const double fs = flexible_start(energy, flat.at("A"), config).outcome.total_g;
    const double par = pause_and_resume(energy, flat.at("A"), config).outcome.total_g;
    if (fs != baseline || par != baseline) {
      detail = "constant intensity: FS or PaR moved the needle";
      return false;
    }
    for (TransferMode mode : {TransferMode::upstream, TransferMode::in_training}) {
      config.transfer_mode = mode;
      if (static_start_fts(energy, flat, config).outcome.total_g != baseline ||
          flexible_start_fts(energy, flat, config).outcome.total_g != baseline) {
        detail = "constant intensity: an FtS variant moved the needle";
        return false;
      }
    }
  }
  detail = "100 single-region and 100 constant-intensity instances, field-exact";
  return true;
}

// ---- criterion 7 -----------------------------------------------------------

bool criterion_directional(std::string& detail) {
  const auto t0 = std::chrono::steady_clock::now();
  const BenchmarkSpec spec = BenchmarkSpec::paper_grid(7);
  const RegionSet regions = load_benchmark_regions(spec);
  const ResultTable table = run_retrospective(spec, regions);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  double sum_fs = 0, sum_par = 0, sum_ss = 0, sum_fsf = 0;
  int n_fs = 0, n_par = 0, n_ss = 0, n_fsf = 0;
  for (const auto& row : table.rows) {
    switch (row.strategy) {
      case StrategyKind::fs: sum_fs += row.mean_reduction; ++n_fs; break;
      case StrategyKind::par: sum_par += row.mean_reduction; ++n_par; break;
      case StrategyKind::ssfts: sum_ss += row.mean_reduction; ++n_ss; break;
      case StrategyKind::fsfts: sum_fsf += row.mean_reduction; ++n_fsf; break;
      default: break;
    }
  }
  const double fs = sum_fs / n_fs, par = sum_par / n_par, ss = sum_ss / n_ss,
               fsf = sum_fsf / n_fsf;
  char buf[240];
  std::snprintf(buf, sizeof buf,
                "mean reductions: fsFtS %.1f%%, PaR %.1f%%, FS %.1f%%, ssFtS %.1f%%; "
                "%zu rows in %.1f s (budget 600)",
                fsf * 100, par * 100, fs * 100, ss * 100, table.rows.size(), seconds);
  detail = buf;
  return fsf > par && fsf > fs && ss > 0.0 && seconds < 600.0 && table.rows.size() == 448;
}

// ---- criterion 8 -----------------------------------------------------------

bool criterion_constants(std::string& detail) {
  const TransferCostModel model;
  if (model.kwh_per_gb != 0.023 || model.dataset_gb != 0.320 || model.checkpoint_gb != 0.0) {
    detail = "transfer model defaults drifted";
    return false;
  }
  const struct {
    const char* name;
    std::int64_t minutes;
    double kwh;
  } expected[] = {
      {"IF", 255, 0.825}, {"SVM", 150, 0.493}, {"AE", 210, 0.615}, {"HF-SCA", 960, 3.310}};
  for (const auto& profile : expected) {
    const WorkloadProfile& p = workload_profile(profile.name);
    if (p.duration_minutes != profile.minutes || p.total_kwh != profile.kwh) {
      detail = std::string("profile ") + profile.name + " drifted";
      return false;
    }
    const EnergySeries bundled = load_energy_csv(
        fs::path(CSCHED_DATA_DIR) / "profiles" / (std::string(profile.name) + ".csv"));
    if (bundled.steps() != profile.minutes / 5 ||
        !close(bundled.total_kwh(), profile.kwh, 1e-9)) {
      detail = std::string("bundled file for ") + profile.name + " drifted";
      return false;
    }
  }
  detail = "0.023 kWh/GB, 0.320 GB, profile totals 0.825/0.493/0.615/3.310 kWh, bit-exact";
  return true;
}

// ---- criterion 9 -----------------------------------------------------------

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

bool criterion_determinism(std::string& detail) {
  const fs::path base = fs::temp_directory_path() / "csched_acceptance_determinism";
  fs::remove_all(base);
  fs::create_directories(base);
  const std::string cli = CSCHED_CLI_PATH;
  for (const char* run : {"r1", "r2"}) {
    const std::string command = cli + " bench --paper-grid --seed 7 --out-dir " +
                                (base / run).string() + " > /dev/null";
    if (std::system(command.c_str()) != 0) {
      detail = "CLI bench run failed";
      return false;
    }
  }
  for (const char* file : {"results.csv", "results.json", "results.md"}) {
    const std::string a = slurp(base / "r1" / file);
    const std::string b = slurp(base / "r2" / file);
    if (a.empty() || a != b) {
      detail = std::string(file) + " differs between reruns";
      return false;
    }
  }
  fs::remove_all(base);
  detail = "two `bench --paper-grid --seed 7` runs, byte-identical reports";
  return true;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<bool(std::string&)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "oracle equivalence at zero transfer cost", criterion_oracle_equivalence},
      {2, "dp exactness with transfer costs", criterion_dp_exactness},
      {3, "PaR greedy optimality under uniform energy", criterion_par_optimality},
      {4, "dominance suite", criterion_dominance},
      {5, "timing contracts", criterion_timing},
      {6, "degeneracy collapses", criterion_degeneracy},
      {7, "directional reproduction of the strategy ranking", criterion_directional},
      {8, "embedded constants", criterion_constants},
      {9, "benchmark determinism", criterion_determinism},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    std::string detail;
    bool ok = false;
    try {
      ok = criterion.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] criterion %d: %s — %s\n", ok ? "PASS" : "FAIL", criterion.id,
                criterion.name, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
