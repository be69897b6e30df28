#include "carbonsched/bench.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include <nlohmann/json.hpp>

#include "carbonsched/error.hpp"
#include "carbonsched/synth.hpp"
#include "carbonsched/traces.hpp"

namespace carbonsched {

using nlohmann::json;

StrategyKind parse_strategy_kind(std::string_view name) {
  if (name == "none") return StrategyKind::none;
  if (name == "fs") return StrategyKind::fs;
  if (name == "par") return StrategyKind::par;
  if (name == "ssfts") return StrategyKind::ssfts;
  if (name == "fsfts") return StrategyKind::fsfts;
  fail(Errc::invalid_argument, "unknown strategy \"" + std::string(name) +
                                   "\" (expected none, fs, par, ssfts or fsfts)");
}

std::string_view to_string(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::none: return "none";
    case StrategyKind::fs: return "fs";
    case StrategyKind::par: return "par";
    case StrategyKind::ssfts: return "ssfts";
    case StrategyKind::fsfts: return "fsfts";
  }
  fail(Errc::invalid_argument, "bad strategy kind");
}

BenchmarkSpec BenchmarkSpec::paper_grid(std::uint64_t seed) {
  BenchmarkSpec spec;
  spec.synth = SynthSource{seed, 365, 5, 1609459200};
  return spec;
}

std::vector<int> BenchmarkSpec::month_days() const {
  const int stride = std::max(1, 30 / days_per_month);
  std::vector<int> days;
  for (int i = 0; i < days_per_month; ++i) days.push_back(1 + i * stride);
  return days;
}

void BenchmarkSpec::validate() const {
  if (!synth && region_dir.empty())
    fail(Errc::invalid_argument, "benchmark spec needs a data source (synth or dir)");
  if (workloads.empty()) fail(Errc::invalid_argument, "benchmark spec lists no workloads");
  if (strategies.empty()) fail(Errc::invalid_argument, "benchmark spec lists no strategies");
  if (hours_set.empty() || checking_set.empty())
    fail(Errc::invalid_argument, "hours-set and checking-set must be nonempty");
  for (int h : hours_set)
    if (h < 0) fail(Errc::invalid_argument, "hours-set values must be >= 0");
  for (int c : checking_set)
    if (c <= 0) fail(Errc::invalid_argument, "checking times must be positive");
  if (days_per_month < 1) fail(Errc::invalid_argument, "days_per_month must be >= 1");
  if (months < 1) fail(Errc::invalid_argument, "months must be >= 1");
  if (start_hour_utc < 0 || start_hour_utc > 23 || start_minute_utc < 0 || start_minute_utc > 59)
    fail(Errc::invalid_argument, "start time of day out of range");
  if (transfer_modes.empty())
    fail(Errc::invalid_argument, "at least one transfer mode is required");
  transfer.validate();
  for (const auto& w : workloads) workload_profile(w);  // throws on unknown names
}

namespace {

const json& require_key(const json& object, const char* key, const char* where) {
  if (!object.contains(key))
    fail(Errc::invalid_argument, std::string("benchmark spec: missing \"") + key + "\" in " +
                                     where);
  return object.at(key);
}

void reject_unknown_keys(const json& object, std::initializer_list<const char*> known,
                         const char* where) {
  for (const auto& [key, value] : object.items()) {
    if (std::find_if(known.begin(), known.end(),
                     [&](const char* k) { return key == k; }) == known.end())
      fail(Errc::invalid_argument,
           "benchmark spec: unknown key \"" + key + "\" in " + where);
  }
}

}  // namespace

BenchmarkSpec BenchmarkSpec::from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail(Errc::parse_error, std::string("benchmark spec is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail(Errc::parse_error, "benchmark spec must be a JSON object");
  reject_unknown_keys(doc,
                      {"source", "workloads", "strategies", "hours_set", "checking_set",
                       "days_per_month", "start_time", "months", "transfer_modes", "transfer"},
                      "the spec");

  BenchmarkSpec spec;
  const json& source = require_key(doc, "source", "the spec");
  reject_unknown_keys(source, {"synth", "dir"}, "\"source\"");
  if (source.contains("synth")) {
    const json& synth = source.at("synth");
    reject_unknown_keys(synth, {"seed", "days", "step_minutes", "start"}, "\"source.synth\"");
    SynthSource s;
    s.seed = synth.value("seed", std::uint64_t{7});
    s.days = synth.value("days", 365);
    s.step_minutes = synth.value("step_minutes", 5);
    if (synth.contains("start")) s.start_epoch_s = parse_iso8601_utc(synth.at("start").get<std::string>());
    spec.synth = s;
  } else if (source.contains("dir")) {
    spec.region_dir = source.at("dir").get<std::string>();
  } else {
    fail(Errc::invalid_argument, "benchmark spec: source must name \"synth\" or \"dir\"");
  }

  if (doc.contains("workloads")) spec.workloads = doc.at("workloads").get<std::vector<std::string>>();
  if (doc.contains("strategies")) {
    spec.strategies.clear();
    for (const auto& name : doc.at("strategies"))
      spec.strategies.push_back(parse_strategy_kind(name.get<std::string>()));
  }
  if (doc.contains("hours_set")) spec.hours_set = doc.at("hours_set").get<std::vector<int>>();
  if (doc.contains("checking_set")) spec.checking_set = doc.at("checking_set").get<std::vector<int>>();
  if (doc.contains("days_per_month")) spec.days_per_month = doc.at("days_per_month").get<int>();
  if (doc.contains("months")) spec.months = doc.at("months").get<int>();
  if (doc.contains("start_time")) {
    const std::string time = doc.at("start_time").get<std::string>();
    int h = 0, m = 0;
    if (std::sscanf(time.c_str(), "%2d:%2d", &h, &m) != 2)
      fail(Errc::parse_error, "benchmark spec: start_time must be HH:MM, got \"" + time + "\"");
    spec.start_hour_utc = h;
    spec.start_minute_utc = m;
  }
  if (doc.contains("transfer_modes")) {
    spec.transfer_modes.clear();
    for (const auto& name : doc.at("transfer_modes"))
      spec.transfer_modes.push_back(parse_transfer_mode(name.get<std::string>()));
  }
  if (doc.contains("transfer")) {
    const json& transfer = doc.at("transfer");
    reject_unknown_keys(transfer, {"kwh_per_gb", "dataset_gb", "checkpoint_gb"}, "\"transfer\"");
    spec.transfer.kwh_per_gb = transfer.value("kwh_per_gb", spec.transfer.kwh_per_gb);
    spec.transfer.dataset_gb = transfer.value("dataset_gb", spec.transfer.dataset_gb);
    spec.transfer.checkpoint_gb = transfer.value("checkpoint_gb", spec.transfer.checkpoint_gb);
  }
  spec.validate();
  return spec;
}

std::string BenchmarkSpec::to_json() const {
  json doc;
  if (synth) {
    doc["source"]["synth"] = {{"seed", synth->seed},
                              {"days", synth->days},
                              {"step_minutes", synth->step_minutes},
                              {"start", format_iso8601_utc(synth->start_epoch_s)}};
  } else {
    doc["source"]["dir"] = region_dir;
  }
  doc["workloads"] = workloads;
  json strategy_names = json::array();
  for (StrategyKind s : strategies) strategy_names.push_back(std::string(to_string(s)));
  doc["strategies"] = strategy_names;
  doc["hours_set"] = hours_set;
  doc["checking_set"] = checking_set;
  doc["days_per_month"] = days_per_month;
  char time_buf[8];
  std::snprintf(time_buf, sizeof time_buf, "%02d:%02d", start_hour_utc, start_minute_utc);
  doc["start_time"] = time_buf;
  doc["months"] = months;
  json mode_names = json::array();
  for (TransferMode m : transfer_modes) mode_names.push_back(std::string(to_string(m)));
  doc["transfer_modes"] = mode_names;
  doc["transfer"] = {{"kwh_per_gb", transfer.kwh_per_gb},
                     {"dataset_gb", transfer.dataset_gb},
                     {"checkpoint_gb", transfer.checkpoint_gb}};
  return doc.dump(2) + "\n";
}

RegionSet load_benchmark_regions(const BenchmarkSpec& spec) {
  if (spec.synth)
    return gen_preset_regions(spec.synth->seed, spec.synth->days, spec.synth->step_minutes,
                              spec.synth->start_epoch_s);
  return load_region_dir(spec.region_dir);
}

namespace {

struct Accum {
  std::int64_t count = 0;
  double reduction = 0.0;
  double total_g = 0.0;
  double switches = 0.0;
  double transfers = 0.0;
  double duration = 0.0;
  double duration_sq = 0.0;
  double delay = 0.0;
  double delay_sq = 0.0;

  void add(double red, const EmissionOutcome& outcome) {
    ++count;
    reduction += red;
    total_g += outcome.total_g;
    switches += static_cast<double>(outcome.region_switches);
    transfers += static_cast<double>(outcome.dataset_transfers);
    const double dur = static_cast<double>(outcome.duration_minutes());
    const double del = static_cast<double>(outcome.start_delay_minutes());
    duration += dur;
    duration_sq += dur * dur;
    delay += del;
    delay_sq += del * del;
  }

  void merge(const Accum& other) {
    count += other.count;
    reduction += other.reduction;
    total_g += other.total_g;
    switches += other.switches;
    transfers += other.transfers;
    duration += other.duration;
    duration_sq += other.duration_sq;
    delay += other.delay;
    delay_sq += other.delay_sq;
  }
};

struct RowKey {
  std::size_t workload;
  StrategyKind strategy;
  std::optional<TransferMode> mode;
  int hours;
  int checking;
};

constexpr std::array<StrategyKind, 5> kStrategyOrder = {
    StrategyKind::none, StrategyKind::fs, StrategyKind::par, StrategyKind::ssfts,
    StrategyKind::fsfts};
constexpr std::array<TransferMode, 2> kModeOrder = {TransferMode::upstream,
                                                    TransferMode::in_training};

int worker_count(std::size_t tasks) {
  unsigned n = 0;
  if (const char* env = std::getenv("CARBON_SCHED_THREADS")) {
    char* end = nullptr;
    const long parsed = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || parsed < 0)
      fail(Errc::invalid_argument, "CARBON_SCHED_THREADS must be a nonnegative integer");
    n = static_cast<unsigned>(parsed);
  }
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<int>(std::min<std::size_t>(n, std::max<std::size_t>(tasks, 1)));
}

struct GridPlan {
  std::vector<RowKey> keys;
  std::vector<int> hours_sorted;
  std::vector<int> checking_sorted;
  std::vector<StrategyKind> strategies;        // canonical order
  std::vector<TransferMode> modes;             // canonical order
  // row index lookup: contiguous blocks per (workload, strategy, mode)
  std::size_t rows_per_workload = 0;

  std::size_t index(std::size_t workload, std::size_t strategy_block, std::size_t hour_i,
                    std::size_t check_i) const {
    return workload * rows_per_workload +
           strategy_block * hours_sorted.size() * checking_sorted.size() +
           hour_i * checking_sorted.size() + check_i;
  }
};

GridPlan build_grid(const BenchmarkSpec& spec) {
  GridPlan grid;
  grid.hours_sorted = spec.hours_set;
  std::sort(grid.hours_sorted.begin(), grid.hours_sorted.end());
  grid.checking_sorted = spec.checking_set;
  std::sort(grid.checking_sorted.begin(), grid.checking_sorted.end());
  for (StrategyKind s : kStrategyOrder)
    if (std::find(spec.strategies.begin(), spec.strategies.end(), s) != spec.strategies.end())
      grid.strategies.push_back(s);
  for (TransferMode m : kModeOrder)
    if (std::find(spec.transfer_modes.begin(), spec.transfer_modes.end(), m) !=
        spec.transfer_modes.end())
      grid.modes.push_back(m);

  for (std::size_t w = 0; w < spec.workloads.size(); ++w) {
    for (StrategyKind s : grid.strategies) {
      const bool fts = s == StrategyKind::ssfts || s == StrategyKind::fsfts;
      const std::size_t mode_count = fts ? grid.modes.size() : 1;
      for (std::size_t mi = 0; mi < mode_count; ++mi) {
        std::optional<TransferMode> mode;
        if (fts) mode = grid.modes[mi];
        for (int h : grid.hours_sorted)
          for (int c : grid.checking_sorted) grid.keys.push_back(RowKey{w, s, mode, h, c});
      }
    }
  }
  grid.rows_per_workload = grid.keys.size() / spec.workloads.size();
  return grid;
}

/// (workload, strategy, mode) block offsets inside one workload's rows.
std::size_t strategy_block_offset(const GridPlan& grid, StrategyKind s,
                                  std::optional<TransferMode> mode) {
  std::size_t block = 0;
  for (StrategyKind kind : grid.strategies) {
    const bool fts = kind == StrategyKind::ssfts || kind == StrategyKind::fsfts;
    const std::size_t mode_count = fts ? grid.modes.size() : 1;
    if (kind == s) {
      if (!fts) return block;
      for (std::size_t mi = 0; mi < grid.modes.size(); ++mi)
        if (grid.modes[mi] == *mode) return block + mi;
      fail(Errc::invalid_argument, "mode not configured");
    }
    block += mode_count;
  }
  fail(Errc::invalid_argument, "strategy not configured");
}

}  // namespace

ResultTable run_retrospective(const BenchmarkSpec& spec, const RegionSet& regions) {
  spec.validate();
  if (regions.empty()) fail(Errc::invalid_argument, "region set is empty");
  const TimeGrid& grid_axis = regions.grid();
  const int step = grid_axis.step_minutes;
  const GridPlan grid = build_grid(spec);
  const std::vector<int> days = spec.month_days();

  // Months count from the calendar month containing the grid start.
  const CivilDate first = civil_from_days(grid_axis.start_epoch_s / 86400);

  struct Task {
    std::size_t workload;
    int month;  // 0-based offset from the first month
    int day;
  };
  std::vector<Task> tasks;
  for (std::size_t w = 0; w < spec.workloads.size(); ++w)
    for (int m = 0; m < spec.months; ++m)
      for (int d : days) tasks.push_back({w, m, d});

  std::vector<EnergySeries> energies;
  energies.reserve(spec.workloads.size());
  for (const auto& name : spec.workloads)
    energies.push_back(gen_energy_profile(name, step, grid_axis.start_epoch_s));

  std::vector<std::vector<Accum>> partials(tasks.size());
  std::vector<std::pair<std::size_t, std::string>> failures;  // task index, message
  std::atomic<std::size_t> cursor{0};
  std::mutex failure_mutex;

  auto run_task = [&](std::size_t task_index) {
    const Task& task = tasks[task_index];
    const EnergySeries& energy = energies[task.workload];
    std::vector<Accum> local(grid.keys.size());

    const int month_linear = (first.month - 1) + task.month;
    const int year = first.year + month_linear / 12;
    const int month = month_linear % 12 + 1;
    if (task.day > days_in_month(year, month))
      fail(Errc::coverage_error, "selected day " + std::to_string(task.day) +
                                     " does not exist in " + std::to_string(year) + "-" +
                                     std::to_string(month));
    const std::int64_t start_epoch = days_from_civil(year, month, task.day) * 86400 +
                                     spec.start_hour_utc * 3600 + spec.start_minute_utc * 60;

    const bool want_none =
        std::find(grid.strategies.begin(), grid.strategies.end(), StrategyKind::none) !=
        grid.strategies.end();
    const bool want_fs = std::find(grid.strategies.begin(), grid.strategies.end(),
                                   StrategyKind::fs) != grid.strategies.end();
    const bool want_par = std::find(grid.strategies.begin(), grid.strategies.end(),
                                    StrategyKind::par) != grid.strategies.end();
    const bool want_ssfts = std::find(grid.strategies.begin(), grid.strategies.end(),
                                      StrategyKind::ssfts) != grid.strategies.end();
    const bool want_fsfts = std::find(grid.strategies.begin(), grid.strategies.end(),
                                      StrategyKind::fsfts) != grid.strategies.end();

    for (const IntensitySeries& region : regions.all()) {
      StrategyConfig config;
      config.nominal_start_epoch_s = start_epoch;
      config.reference_region = region.region_id();
      config.transfer = spec.transfer;

      const StrategyResult baseline = no_strategy(energy, region, start_epoch);
      const double base_total = baseline.outcome.total_g;
      if (!(base_total > 0.0))
        fail(Errc::data_error, "no-strategy baseline is not positive in region " +
                                   region.region_id() + " at " +
                                   format_iso8601_utc(start_epoch));
      const auto reduction = [base_total](const EmissionOutcome& o) {
        return (base_total - o.total_g) / base_total;
      };
      const auto add_all_checking = [&](StrategyKind s, std::optional<TransferMode> mode,
                                        std::size_t hour_i, const EmissionOutcome& o) {
        const std::size_t block = strategy_block_offset(grid, s, mode);
        for (std::size_t ci = 0; ci < grid.checking_sorted.size(); ++ci)
          local[grid.index(task.workload, block, hour_i, ci)].add(reduction(o), o);
      };

      if (want_none) {
        for (std::size_t hi = 0; hi < grid.hours_sorted.size(); ++hi)
          add_all_checking(StrategyKind::none, std::nullopt, hi, baseline.outcome);
      }
      if (want_fs) {
        for (std::size_t hi = 0; hi < grid.hours_sorted.size(); ++hi) {
          config.window_extra_steps =
              StrategyConfig::extra_steps_from_hours(grid.hours_sorted[hi], step);
          const StrategyResult fs = flexible_start(energy, region, config);
          add_all_checking(StrategyKind::fs, std::nullopt, hi, fs.outcome);
        }
      }
      if (want_par) {
        for (std::size_t hi = 0; hi < grid.hours_sorted.size(); ++hi) {
          config.window_extra_steps =
              StrategyConfig::extra_steps_from_hours(grid.hours_sorted[hi], step);
          const StrategyResult par = pause_and_resume(energy, region, config);
          add_all_checking(StrategyKind::par, std::nullopt, hi, par.outcome);
        }
      }
      if (want_ssfts) {
        config.window_extra_steps = 0;
        for (TransferMode mode : grid.modes) {
          config.transfer_mode = mode;
          for (std::size_t ci = 0; ci < grid.checking_sorted.size(); ++ci) {
            config.checking_minutes = grid.checking_sorted[ci];
            const StrategyResult ss = static_start_fts(energy, regions, config);
            const std::size_t block = strategy_block_offset(grid, StrategyKind::ssfts, mode);
            for (std::size_t hi = 0; hi < grid.hours_sorted.size(); ++hi)
              local[grid.index(task.workload, block, hi, ci)].add(reduction(ss.outcome),
                                                                  ss.outcome);
          }
        }
      }
      if (want_fsfts) {
        for (TransferMode mode : grid.modes) {
          config.transfer_mode = mode;
          const std::size_t block = strategy_block_offset(grid, StrategyKind::fsfts, mode);
          for (std::size_t hi = 0; hi < grid.hours_sorted.size(); ++hi) {
            config.window_extra_steps =
                StrategyConfig::extra_steps_from_hours(grid.hours_sorted[hi], step);
            for (std::size_t ci = 0; ci < grid.checking_sorted.size(); ++ci) {
              config.checking_minutes = grid.checking_sorted[ci];
              const StrategyResult fsf = flexible_start_fts(energy, regions, config);
              local[grid.index(task.workload, block, hi, ci)].add(reduction(fsf.outcome),
                                                                  fsf.outcome);
            }
          }
        }
      }
    }
    partials[task_index] = std::move(local);
  };

  const int workers = worker_count(tasks.size());
  auto worker_loop = [&]() {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= tasks.size()) return;
      try {
        run_task(i);
      } catch (const std::exception& e) {
        const Task& task = tasks[i];
        std::lock_guard<std::mutex> lock(failure_mutex);
        failures.emplace_back(
            i, "cell (workload " + spec.workloads[task.workload] + ", month " +
                   std::to_string(task.month + 1) + ", day " + std::to_string(task.day) +
                   "): " + e.what());
      }
    }
  };
  if (workers <= 1) {
    worker_loop();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker_loop);
    for (auto& t : pool) t.join();
  }
  if (!failures.empty()) {
    std::sort(failures.begin(), failures.end());
    fail(Errc::coverage_error, failures.front().second);
  }

  std::vector<Accum> folded(grid.keys.size());
  for (const auto& partial : partials)
    for (std::size_t i = 0; i < partial.size(); ++i) folded[i].merge(partial[i]);

  ResultTable table;
  table.rows.reserve(grid.keys.size());
  for (std::size_t i = 0; i < grid.keys.size(); ++i) {
    const RowKey& key = grid.keys[i];
    const Accum& acc = folded[i];
    ResultRow row;
    row.workload = spec.workloads[key.workload];
    row.strategy = key.strategy;
    row.mode = key.mode;
    row.hours = key.hours;
    row.checking = key.checking;
    row.samples = acc.count;
    if (acc.count > 0) {
      const double n = static_cast<double>(acc.count);
      row.mean_reduction = acc.reduction / n;
      row.mean_total_g = acc.total_g / n;
      row.mean_switches = acc.switches / n;
      row.mean_transfers = acc.transfers / n;
      row.mean_duration_min = acc.duration / n;
      row.mean_delay_min = acc.delay / n;
      const double var_dur = acc.duration_sq / n - row.mean_duration_min * row.mean_duration_min;
      const double var_del = acc.delay_sq / n - row.mean_delay_min * row.mean_delay_min;
      row.std_duration_min = std::sqrt(std::max(0.0, var_dur));
      row.std_delay_min = std::sqrt(std::max(0.0, var_del));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

namespace {

std::string mode_label(const std::optional<TransferMode>& mode) {
  return mode ? std::string(to_string(*mode)) : "-";
}

std::string format_fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

}  // namespace

ReportFormat parse_report_format(std::string_view name) {
  if (name == "csv") return ReportFormat::csv;
  if (name == "markdown" || name == "md") return ReportFormat::markdown;
  if (name == "json") return ReportFormat::json;
  fail(Errc::invalid_argument, "unknown report format \"" + std::string(name) +
                                   "\" (expected csv, markdown or json)");
}

std::string emit_report(const ResultTable& table, ReportFormat format) {
  static constexpr const char* kColumns[] = {
      "workload",       "strategy",         "mode",          "hours",
      "checking",       "reduction_pct",    "mean_total_g",  "mean_switches",
      "mean_transfers", "mean_duration_min", "std_duration_min", "mean_delay_min",
      "std_delay_min",  "samples"};

  const auto fields = [](const ResultRow& row) {
    return std::vector<std::string>{row.workload,
                                    std::string(to_string(row.strategy)),
                                    mode_label(row.mode),
                                    std::to_string(row.hours),
                                    std::to_string(row.checking),
                                    format_fixed(row.mean_reduction * 100.0, 1),
                                    format_fixed(row.mean_total_g, 4),
                                    format_fixed(row.mean_switches, 3),
                                    format_fixed(row.mean_transfers, 3),
                                    format_fixed(row.mean_duration_min, 1),
                                    format_fixed(row.std_duration_min, 1),
                                    format_fixed(row.mean_delay_min, 1),
                                    format_fixed(row.std_delay_min, 1),
                                    std::to_string(row.samples)};
  };

  switch (format) {
    case ReportFormat::csv: {
      std::string out;
      for (std::size_t i = 0; i < std::size(kColumns); ++i) {
        out += kColumns[i];
        out += i + 1 < std::size(kColumns) ? ',' : '\n';
      }
      for (const auto& row : table.rows) {
        const auto values = fields(row);
        for (std::size_t i = 0; i < values.size(); ++i) {
          out += values[i];
          out += i + 1 < values.size() ? ',' : '\n';
        }
      }
      return out;
    }
    case ReportFormat::markdown: {
      std::string out = "|";
      for (const char* column : kColumns) out += std::string(" ") + column + " |";
      out += "\n|";
      for (std::size_t i = 0; i < std::size(kColumns); ++i) out += " --- |";
      out += "\n";
      for (const auto& row : table.rows) {
        out += "|";
        for (const auto& value : fields(row)) out += " " + value + " |";
        out += "\n";
      }
      return out;
    }
    case ReportFormat::json: {
      json rows = json::array();
      for (const auto& row : table.rows) {
        rows.push_back({{"workload", row.workload},
                        {"strategy", std::string(to_string(row.strategy))},
                        {"mode", mode_label(row.mode)},
                        {"hours", row.hours},
                        {"checking", row.checking},
                        {"mean_reduction", row.mean_reduction},
                        {"mean_total_g", row.mean_total_g},
                        {"mean_switches", row.mean_switches},
                        {"mean_transfers", row.mean_transfers},
                        {"mean_duration_min", row.mean_duration_min},
                        {"std_duration_min", row.std_duration_min},
                        {"mean_delay_min", row.mean_delay_min},
                        {"std_delay_min", row.std_delay_min},
                        {"samples", row.samples}});
      }
      return json{{"rows", rows}}.dump(2) + "\n";
    }
  }
  fail(Errc::invalid_argument, "bad report format");
}

ResultTable parse_report_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail(Errc::parse_error, std::string("report is not valid JSON: ") + e.what());
  }
  ResultTable table;
  for (const json& entry : doc.at("rows")) {
    ResultRow row;
    row.workload = entry.at("workload").get<std::string>();
    row.strategy = parse_strategy_kind(entry.at("strategy").get<std::string>());
    const std::string mode_name = entry.at("mode").get<std::string>();
    if (mode_name != "-") row.mode = parse_transfer_mode(mode_name);
    row.hours = entry.at("hours").get<int>();
    row.checking = entry.at("checking").get<int>();
    row.mean_reduction = entry.at("mean_reduction").get<double>();
    row.mean_total_g = entry.at("mean_total_g").get<double>();
    row.mean_switches = entry.at("mean_switches").get<double>();
    row.mean_transfers = entry.at("mean_transfers").get<double>();
    row.mean_duration_min = entry.at("mean_duration_min").get<double>();
    row.std_duration_min = entry.at("std_duration_min").get<double>();
    row.mean_delay_min = entry.at("mean_delay_min").get<double>();
    row.std_delay_min = entry.at("std_delay_min").get<double>();
    row.samples = entry.at("samples").get<std::int64_t>();
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace carbonsched
