#include "carbonsched.h"

#include <cstring>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "carbonsched/bench.hpp"
#include "carbonsched/error.hpp"
#include "carbonsched/oracle.hpp"
#include "carbonsched/strategy.hpp"
#include "carbonsched/synth.hpp"
#include "carbonsched/traces.hpp"

using namespace carbonsched;

struct csched_regions {
  RegionSet set;
};
struct csched_energy {
  EnergySeries series;
};
struct csched_result {
  StrategyResult result;
  std::string strategy;
  std::int64_t nominal_start_epoch_s = 0;
};
struct csched_table {
  ResultTable table;
};

namespace {

thread_local std::string g_last_error;

csched_status set_error(csched_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

csched_status status_from(const Error& e) {
  switch (e.code()) {
    case Errc::invalid_argument:
      return CSCHED_ERR_INVALID;
    case Errc::parse_error:
    case Errc::data_error:
    case Errc::coverage_error:
      return CSCHED_ERR_DATA;
    case Errc::limit_exceeded:
      return CSCHED_ERR_LIMIT;
  }
  return CSCHED_ERR_INTERNAL;
}

template <typename Fn>
csched_status guarded(Fn&& fn) {
  try {
    fn();
    return CSCHED_OK;
  } catch (const Error& e) {
    return set_error(status_from(e), e.what());
  } catch (const std::exception& e) {
    return set_error(CSCHED_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(CSCHED_ERR_INTERNAL, "unknown error");
  }
}

csched_status require(bool condition, const char* message) {
  return condition ? CSCHED_OK : set_error(CSCHED_ERR_INVALID, message);
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string read_text_file(const char* path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::data_error, std::string("cannot open ") + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

extern "C" {

const char* csched_version(void) { return "1.0.0"; }

const char* csched_last_error(void) { return g_last_error.c_str(); }

void csched_string_free(char* s) { delete[] s; }

csched_status csched_regions_load_dir(const char* dir, const char* unit, csched_regions** out) {
  if (csched_status s = require(dir && out, "dir and out must be non-null")) return s;
  return guarded([&] {
    const IntensityUnit u = unit ? parse_intensity_unit(unit) : IntensityUnit::g_per_kwh;
    *out = new csched_regions{load_region_dir(dir, u)};
  });
}

csched_status csched_regions_synth(uint64_t seed, int days, int step_minutes,
                                   const char* start_iso, csched_regions** out) {
  if (csched_status s = require(out != nullptr, "out must be non-null")) return s;
  return guarded([&] {
    const std::int64_t start =
        start_iso ? parse_iso8601_utc(start_iso) : std::int64_t{1609459200};
    *out = new csched_regions{gen_preset_regions(seed, days, step_minutes, start)};
  });
}

void csched_regions_free(csched_regions* r) { delete r; }

int csched_regions_count(const csched_regions* r) {
  return r ? static_cast<int>(r->set.size()) : 0;
}

const char* csched_regions_id(const csched_regions* r, int index) {
  if (!r || index < 0 || static_cast<std::size_t>(index) >= r->set.size()) return nullptr;
  return r->set.all()[static_cast<std::size_t>(index)].region_id().c_str();
}

csched_status csched_energy_load_csv(const char* path, csched_energy** out) {
  if (csched_status s = require(path && out, "path and out must be non-null")) return s;
  return guarded([&] { *out = new csched_energy{load_energy_csv(path)}; });
}

csched_status csched_energy_profile(const char* name, int step_minutes, csched_energy** out) {
  if (csched_status s = require(name && out, "name and out must be non-null")) return s;
  return guarded([&] {
    *out = new csched_energy{gen_energy_profile(name, step_minutes, 1609459200)};
  });
}

void csched_energy_free(csched_energy* e) { delete e; }

double csched_energy_total_kwh(const csched_energy* e) {
  return e ? e->series.total_kwh() : 0.0;
}

int64_t csched_energy_steps(const csched_energy* e) { return e ? e->series.steps() : 0; }

csched_status csched_simulate(const csched_regions* regions, const csched_energy* energy,
                              const csched_sim_params* params, csched_result** out) {
  if (csched_status s =
          require(regions && energy && params && out, "all arguments must be non-null"))
    return s;
  if (csched_status s = require(params->strategy && params->start_iso,
                                "params.strategy and params.start_iso are required"))
    return s;
  return guarded([&] {
    const std::string strategy = params->strategy;
    const RegionSet& set = regions->set;
    if (set.empty()) fail(Errc::invalid_argument, "region set is empty");

    StrategyConfig config;
    config.nominal_start_epoch_s = parse_iso8601_utc(params->start_iso);
    config.window_extra_steps = StrategyConfig::extra_steps_from_hours(
        params->window_extra_hours, set.grid().step_minutes);
    config.checking_minutes = params->checking_minutes > 0 ? params->checking_minutes : 30;
    config.reference_region =
        params->reference_region ? params->reference_region : set.all().front().region_id();
    config.transfer_mode = params->transfer_mode ? parse_transfer_mode(params->transfer_mode)
                                                 : TransferMode::in_training;
    if (params->dataset_gb >= 0) config.transfer.dataset_gb = params->dataset_gb;
    if (params->kwh_per_gb >= 0) config.transfer.kwh_per_gb = params->kwh_per_gb;
    if (params->checkpoint_gb >= 0) config.transfer.checkpoint_gb = params->checkpoint_gb;

    const IntensitySeries& launch = set.at(config.reference_region);
    StrategyResult result;
    if (strategy == "none") {
      result = no_strategy(energy->series, launch, config.nominal_start_epoch_s);
    } else if (strategy == "fs") {
      result = flexible_start(energy->series, launch, config);
    } else if (strategy == "par") {
      result = pause_and_resume(energy->series, launch, config);
    } else if (strategy == "ssfts") {
      result = static_start_fts(energy->series, set, config);
    } else if (strategy == "fsfts") {
      result = flexible_start_fts(energy->series, set, config);
    } else if (strategy == "dpfts") {
      result = dp_optimal_fts(energy->series, set, config);
    } else {
      fail(Errc::invalid_argument,
           "unknown strategy \"" + strategy + "\" (none, fs, par, ssfts, fsfts, dpfts)");
    }
    *out = new csched_result{std::move(result), strategy, config.nominal_start_epoch_s};
  });
}

double csched_result_operational_g(const csched_result* r) {
  return r ? r->result.outcome.operational_g : 0.0;
}
double csched_result_transfer_g(const csched_result* r) {
  return r ? r->result.outcome.transfer_g : 0.0;
}
double csched_result_total_g(const csched_result* r) {
  return r ? r->result.outcome.total_g : 0.0;
}
int64_t csched_result_region_switches(const csched_result* r) {
  return r ? r->result.outcome.region_switches : 0;
}
int64_t csched_result_dataset_transfers(const csched_result* r) {
  return r ? r->result.outcome.dataset_transfers : 0;
}
int64_t csched_result_start_delay_minutes(const csched_result* r) {
  return r ? r->result.outcome.start_delay_minutes() : 0;
}
int64_t csched_result_duration_minutes(const csched_result* r) {
  return r ? r->result.outcome.duration_minutes() : 0;
}
int64_t csched_result_chosen_start_epoch(const csched_result* r) {
  return r ? r->result.plan.grid.instant_at(r->result.plan.chosen_start_index) : 0;
}
int64_t csched_result_completion_epoch(const csched_result* r) {
  return r ? r->result.outcome.completion_epoch_s : 0;
}

int64_t csched_result_segment_count(const csched_result* r) {
  return r ? static_cast<int64_t>(r->result.plan.segments.size()) : 0;
}

csched_status csched_result_segment(const csched_result* r, int64_t index, int64_t* begin_epoch,
                                    int64_t* end_epoch, const char** region,
                                    int64_t* offset_begin, int64_t* offset_end) {
  if (csched_status s = require(r != nullptr, "result must be non-null")) return s;
  if (index < 0 || index >= csched_result_segment_count(r))
    return set_error(CSCHED_ERR_INVALID, "segment index out of range");
  const auto& seg = r->result.plan.segments[static_cast<std::size_t>(index)];
  if (begin_epoch) *begin_epoch = r->result.plan.grid.instant_at(seg.grid_begin);
  if (end_epoch) *end_epoch = r->result.plan.grid.instant_at(seg.grid_end);
  if (region) *region = seg.region.c_str();
  if (offset_begin) *offset_begin = seg.offset_begin;
  if (offset_end) *offset_end = seg.offset_end;
  return CSCHED_OK;
}

int64_t csched_result_transfer_count(const csched_result* r) {
  return r ? static_cast<int64_t>(r->result.plan.transfers.size()) : 0;
}

csched_status csched_result_transfer(const csched_result* r, int64_t index, int64_t* at_epoch,
                                     const char** from_region, const char** to_region,
                                     double* emissions_g) {
  if (csched_status s = require(r != nullptr, "result must be non-null")) return s;
  if (index < 0 || index >= csched_result_transfer_count(r))
    return set_error(CSCHED_ERR_INVALID, "transfer index out of range");
  const auto& t = r->result.plan.transfers[static_cast<std::size_t>(index)];
  if (at_epoch) *at_epoch = r->result.plan.grid.instant_at(t.grid_index);
  if (from_region) *from_region = t.from_region.c_str();
  if (to_region) *to_region = t.to_region.c_str();
  if (emissions_g) *emissions_g = t.emissions_g;
  return CSCHED_OK;
}

csched_status csched_result_to_json(const csched_result* r, char** out) {
  if (csched_status s = require(r && out, "result and out must be non-null")) return s;
  return guarded([&] {
    const auto& plan = r->result.plan;
    const auto& outcome = r->result.outcome;
    nlohmann::json doc;
    doc["strategy"] = r->strategy;
    doc["nominal_start"] = format_iso8601_utc(r->nominal_start_epoch_s);
    doc["chosen_start"] = format_iso8601_utc(plan.grid.instant_at(plan.chosen_start_index));
    doc["outcome"] = {{"operational_g", outcome.operational_g},
                      {"transfer_g", outcome.transfer_g},
                      {"total_g", outcome.total_g},
                      {"region_switches", outcome.region_switches},
                      {"dataset_transfers", outcome.dataset_transfers},
                      {"start_delay_minutes", outcome.start_delay_minutes()},
                      {"duration_minutes", outcome.duration_minutes()},
                      {"completion", format_iso8601_utc(outcome.completion_epoch_s)}};
    nlohmann::json segments = nlohmann::json::array();
    for (const auto& seg : plan.segments)
      segments.push_back({{"start", format_iso8601_utc(plan.grid.instant_at(seg.grid_begin))},
                          {"end", format_iso8601_utc(plan.grid.instant_at(seg.grid_end))},
                          {"region", seg.region},
                          {"offset_begin", seg.offset_begin},
                          {"offset_end", seg.offset_end}});
    doc["segments"] = segments;
    nlohmann::json pauses = nlohmann::json::array();
    for (const auto& pause : plan.pauses)
      pauses.push_back({{"start", format_iso8601_utc(plan.grid.instant_at(pause.grid_begin))},
                        {"end", format_iso8601_utc(plan.grid.instant_at(pause.grid_end))}});
    doc["pauses"] = pauses;
    nlohmann::json transfers = nlohmann::json::array();
    for (const auto& t : plan.transfers)
      transfers.push_back({{"at", format_iso8601_utc(plan.grid.instant_at(t.grid_index))},
                           {"from", t.from_region},
                           {"to", t.to_region},
                           {"emissions_g", t.emissions_g}});
    doc["transfers"] = transfers;
    *out = dup_string(doc.dump(2) + "\n");
  });
}

void csched_result_free(csched_result* r) { delete r; }

csched_status csched_bench_run_json(const char* spec_json, csched_table** out) {
  if (csched_status s = require(spec_json && out, "spec and out must be non-null")) return s;
  return guarded([&] {
    const BenchmarkSpec spec = BenchmarkSpec::from_json(spec_json);
    const RegionSet regions = load_benchmark_regions(spec);
    *out = new csched_table{run_retrospective(spec, regions)};
  });
}

csched_status csched_bench_run_file(const char* spec_path, csched_table** out) {
  if (csched_status s = require(spec_path && out, "path and out must be non-null")) return s;
  return guarded([&] {
    const BenchmarkSpec spec = BenchmarkSpec::from_json(read_text_file(spec_path));
    const RegionSet regions = load_benchmark_regions(spec);
    *out = new csched_table{run_retrospective(spec, regions)};
  });
}

csched_status csched_bench_paper_grid_spec(uint64_t seed, char** out) {
  if (csched_status s = require(out != nullptr, "out must be non-null")) return s;
  return guarded([&] { *out = dup_string(BenchmarkSpec::paper_grid(seed).to_json()); });
}

int64_t csched_table_rows(const csched_table* t) {
  return t ? static_cast<int64_t>(t->table.rows.size()) : 0;
}

csched_status csched_table_emit(const csched_table* t, const char* format, char** out) {
  if (csched_status s = require(t && format && out, "all arguments must be non-null")) return s;
  return guarded([&] { *out = dup_string(emit_report(t->table, parse_report_format(format))); });
}

void csched_table_free(csched_table* t) { delete t; }

csched_status csched_gen_intensity_csv(double base, double amplitude, double phase_hours,
                                       double noise_sigma, uint64_t seed, int days,
                                       int step_minutes, const char* start_iso, char** out) {
  if (csched_status s = require(out != nullptr, "out must be non-null")) return s;
  return guarded([&] {
    const std::int64_t start =
        start_iso ? parse_iso8601_utc(start_iso) : std::int64_t{1609459200};
    const DiurnalModel model{base, amplitude, phase_hours, noise_sigma, seed};
    *out = dup_string(write_moer_csv(gen_intensity(model, "synthetic", days, step_minutes, start)));
  });
}

csched_status csched_gen_preset_csv(const char* preset, uint64_t seed, int days,
                                    int step_minutes, const char* start_iso, char** out) {
  if (csched_status s = require(preset && out, "preset and out must be non-null")) return s;
  return guarded([&] {
    const std::int64_t start =
        start_iso ? parse_iso8601_utc(start_iso) : std::int64_t{1609459200};
    const RegionSet set = gen_preset_regions(seed, days, step_minutes, start);
    *out = dup_string(write_moer_csv(set.at(region_preset(preset).id)));
  });
}

int csched_preset_count(void) { return static_cast<int>(region_presets().size()); }

const char* csched_preset_id(int index) {
  const auto& presets = region_presets();
  if (index < 0 || static_cast<std::size_t>(index) >= presets.size()) return nullptr;
  return presets[static_cast<std::size_t>(index)].id.c_str();
}

csched_status csched_convert_moer(const char* in_path, const char* unit, char** out) {
  if (csched_status s = require(in_path && out, "path and out must be non-null")) return s;
  return guarded([&] {
    const IntensityUnit u = unit ? parse_intensity_unit(unit) : IntensityUnit::g_per_kwh;
    const IntensitySeries series = parse_moer_csv(read_text_file(in_path), u, "converted");
    *out = dup_string(write_moer_csv(series));
  });
}

}  // extern "C"
