// carbonsched CLI: simulate single runs, sweep benchmark grids, generate
// synthetic traces and convert MOER files. Talks to the engine exclusively
// through the shared-library C API.

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "carbonsched.h"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

int exit_code_for(csched_status status) {
  switch (status) {
    case CSCHED_OK:
      return 0;
    case CSCHED_ERR_INVALID:
      return kExitUsage;
    default:
      return kExitData;
  }
}

[[noreturn]] void die(csched_status status) {
  std::cerr << "error: " << csched_last_error() << "\n";
  std::exit(exit_code_for(status));
}

void check(csched_status status) {
  if (status != CSCHED_OK) die(status);
}

std::string iso_utc(int64_t epoch_s) {
  std::time_t t = static_cast<std::time_t>(epoch_s);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[24];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    std::exit(kExitData);
  }
  out << text;
}

struct StringGuard {
  char* value = nullptr;
  ~StringGuard() { csched_string_free(value); }
};

csched_energy* open_energy(const std::string& spec, int step_minutes) {
  csched_energy* energy = nullptr;
  if (spec.rfind("profile:", 0) == 0) {
    check(csched_energy_profile(spec.substr(8).c_str(), step_minutes, &energy));
  } else {
    check(csched_energy_load_csv(spec.c_str(), &energy));
  }
  return energy;
}

struct SimulateOptions {
  std::string strategy;
  std::string energy;
  std::string regions_dir;
  std::string unit = "g_per_kwh";
  std::string start;
  int window_hours = 0;
  int checking_min = 30;
  std::string reference;
  std::string mode = "intraining";
  double dataset_gb = -1.0;
  std::string out = "text";
};

int run_simulate(const SimulateOptions& opt) {
  csched_regions* regions = nullptr;
  check(csched_regions_load_dir(opt.regions_dir.c_str(), opt.unit.c_str(), &regions));
  csched_energy* energy = open_energy(opt.energy, 5);

  csched_sim_params params{};
  params.strategy = opt.strategy.c_str();
  params.start_iso = opt.start.c_str();
  params.window_extra_hours = opt.window_hours;
  params.checking_minutes = opt.checking_min;
  params.reference_region = opt.reference.empty() ? nullptr : opt.reference.c_str();
  params.transfer_mode = opt.mode.c_str();
  params.dataset_gb = opt.dataset_gb;
  params.kwh_per_gb = -1.0;
  params.checkpoint_gb = -1.0;

  csched_result* result = nullptr;
  const csched_status status = csched_simulate(regions, energy, &params, &result);
  if (status != CSCHED_OK) {
    csched_energy_free(energy);
    csched_regions_free(regions);
    die(status);
  }

  if (opt.out == "json") {
    StringGuard json;
    check(csched_result_to_json(result, &json.value));
    std::cout << json.value;
  } else {
    char line[256];
    std::printf("strategy:          %s\n", opt.strategy.c_str());
    std::printf("nominal start:     %s\n", opt.start.c_str());
    std::snprintf(line, sizeof line, "%s (delay %" PRId64 " min)",
                  iso_utc(csched_result_chosen_start_epoch(result)).c_str(),
                  csched_result_start_delay_minutes(result));
    std::printf("chosen start:      %s\n", line);
    std::snprintf(line, sizeof line, "%s (duration %" PRId64 " min)",
                  iso_utc(csched_result_completion_epoch(result)).c_str(),
                  csched_result_duration_minutes(result));
    std::printf("completion:        %s\n", line);
    std::printf("operational:       %.10g gCO2eq\n", csched_result_operational_g(result));
    std::printf("transfer:          %.10g gCO2eq\n", csched_result_transfer_g(result));
    std::printf("total:             %.10g gCO2eq\n", csched_result_total_g(result));
    std::printf("region switches:   %" PRId64 "\n", csched_result_region_switches(result));
    std::printf("dataset transfers: %" PRId64 "\n", csched_result_dataset_transfers(result));
    std::printf("segments:\n");
    for (int64_t i = 0; i < csched_result_segment_count(result); ++i) {
      int64_t begin = 0, end = 0, off_b = 0, off_e = 0;
      const char* region = nullptr;
      check(csched_result_segment(result, i, &begin, &end, &region, &off_b, &off_e));
      std::printf("  %s .. %s  %-8s offsets [%" PRId64 ",%" PRId64 ")\n", iso_utc(begin).c_str(),
                  iso_utc(end).c_str(), region, off_b, off_e);
    }
    if (csched_result_transfer_count(result) > 0) {
      std::printf("transfers:\n");
      for (int64_t i = 0; i < csched_result_transfer_count(result); ++i) {
        int64_t at = 0;
        const char* from = nullptr;
        const char* to = nullptr;
        double grams = 0.0;
        check(csched_result_transfer(result, i, &at, &from, &to, &grams));
        std::printf("  %s  %s -> %s  %.10g g\n", iso_utc(at).c_str(), from, to, grams);
      }
    }
  }

  csched_result_free(result);
  csched_energy_free(energy);
  csched_regions_free(regions);
  return 0;
}

struct BenchOptions {
  std::string spec_path;
  bool paper_grid = false;
  uint64_t seed = 7;
  std::string out_dir = ".";
  std::string traces_dir;
};

void write_example_traces(const nlohmann::json& spec, const std::string& traces_dir) {
  // One representative plan per (workload, strategy[, mode]) at the first
  // configured start, for external plotting of timesheet figures.
  csched_regions* regions = nullptr;
  const auto& source = spec.at("source");
  if (source.contains("synth")) {
    const auto& synth = source.at("synth");
    const std::string start = synth.value("start", "2021-01-01T00:00:00Z");
    check(csched_regions_synth(synth.value("seed", uint64_t{7}), synth.value("days", 365),
                               synth.value("step_minutes", 5), start.c_str(), &regions));
  } else {
    check(csched_regions_load_dir(source.at("dir").get<std::string>().c_str(), "g_per_kwh",
                                  &regions));
  }

  std::filesystem::create_directories(traces_dir);
  const std::vector<std::string> workloads =
      spec.value("workloads", std::vector<std::string>{"IF", "SVM", "AE", "HF-SCA"});
  const std::vector<std::string> strategies =
      spec.value("strategies", std::vector<std::string>{"none", "fs", "par", "ssfts", "fsfts"});
  const std::vector<std::string> modes =
      spec.value("transfer_modes", std::vector<std::string>{"upstream", "intraining"});
  const std::vector<int> hours = spec.value("hours_set", std::vector<int>{6, 12, 18, 24});
  const std::vector<int> checking = spec.value("checking_set", std::vector<int>{15, 30, 60, 120});
  const std::string start_time = spec.value("start_time", std::string("00:00"));
  std::string start_iso = "2021-01-01T00:00:00Z";
  if (source.contains("synth") && source.at("synth").contains("start"))
    start_iso = source.at("synth").at("start").get<std::string>();
  start_iso = start_iso.substr(0, 11) + start_time + ":00Z";

  for (const auto& workload : workloads) {
    csched_energy* energy = nullptr;
    check(csched_energy_profile(workload.c_str(), 5, &energy));
    for (const auto& strategy : strategies) {
      const bool fts = strategy == "ssfts" || strategy == "fsfts";
      for (const auto& mode : fts ? modes : std::vector<std::string>{"-"}) {
        csched_sim_params params{};
        params.strategy = strategy.c_str();
        params.start_iso = start_iso.c_str();
        params.window_extra_hours = strategy == "ssfts" || strategy == "none" ? 0 : hours.front();
        params.checking_minutes = checking.front();
        params.reference_region = nullptr;
        params.transfer_mode = mode == "-" ? "intraining" : mode.c_str();
        params.dataset_gb = -1.0;
        params.kwh_per_gb = -1.0;
        params.checkpoint_gb = -1.0;
        csched_result* result = nullptr;
        check(csched_simulate(regions, energy, &params, &result));

        std::string csv = "start,end,region,offset_begin,offset_end\n";
        for (int64_t i = 0; i < csched_result_segment_count(result); ++i) {
          int64_t begin = 0, end = 0, off_b = 0, off_e = 0;
          const char* region = nullptr;
          check(csched_result_segment(result, i, &begin, &end, &region, &off_b, &off_e));
          csv += iso_utc(begin) + "," + iso_utc(end) + "," + region + "," +
                 std::to_string(off_b) + "," + std::to_string(off_e) + "\n";
        }
        std::string name = workload + "_" + strategy;
        if (mode != "-") name += "_" + mode;
        write_file(std::filesystem::path(traces_dir) / (name + ".csv"), csv);
        csched_result_free(result);
      }
    }
    csched_energy_free(energy);
  }
  csched_regions_free(regions);
}

int run_bench(const BenchOptions& opt) {
  std::string spec_text;
  if (opt.paper_grid) {
    StringGuard spec;
    check(csched_bench_paper_grid_spec(opt.seed, &spec.value));
    spec_text = spec.value;
  } else {
    std::ifstream in(opt.spec_path, std::ios::binary);
    if (!in) {
      std::cerr << "error: cannot open spec " << opt.spec_path << "\n";
      return kExitData;
    }
    spec_text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }

  csched_table* table = nullptr;
  check(csched_bench_run_json(spec_text.c_str(), &table));

  std::filesystem::create_directories(opt.out_dir);
  const std::filesystem::path dir(opt.out_dir);
  const struct {
    const char* format;
    const char* file;
  } outputs[] = {{"csv", "results.csv"}, {"json", "results.json"}, {"markdown", "results.md"}};
  for (const auto& output : outputs) {
    StringGuard text;
    check(csched_table_emit(table, output.format, &text.value));
    write_file(dir / output.file, text.value);
  }
  std::printf("wrote %" PRId64 " rows to %s/{results.csv,results.json,results.md}\n",
              csched_table_rows(table), opt.out_dir.c_str());
  csched_table_free(table);

  if (!opt.traces_dir.empty()) {
    write_example_traces(nlohmann::json::parse(spec_text), opt.traces_dir);
    std::printf("wrote example plan traces to %s\n", opt.traces_dir.c_str());
  }
  return 0;
}

struct GenOptions {
  std::string preset;
  double base = 300.0;
  double amplitude = 0.0;
  double phase = 0.0;
  double noise = 0.0;
  uint64_t seed = 0;
  int days = 1;
  int step_min = 5;
  std::string start = "2021-01-01T00:00:00Z";
  std::string out;
  std::string out_dir;
};

int run_gen(const GenOptions& opt) {
  if (opt.preset == "all") {
    if (opt.out_dir.empty()) {
      std::cerr << "error: --preset all requires --out-dir\n";
      return kExitUsage;
    }
    std::filesystem::create_directories(opt.out_dir);
    for (int i = 0; i < csched_preset_count(); ++i) {
      const char* id = csched_preset_id(i);
      StringGuard csv;
      check(csched_gen_preset_csv(id, opt.seed, opt.days, opt.step_min, opt.start.c_str(),
                                  &csv.value));
      write_file(std::filesystem::path(opt.out_dir) / (std::string(id) + ".csv"), csv.value);
    }
    std::printf("wrote %d preset traces to %s\n", csched_preset_count(), opt.out_dir.c_str());
    return 0;
  }
  if (opt.out.empty()) {
    std::cerr << "error: --out is required\n";
    return kExitUsage;
  }
  StringGuard csv;
  if (!opt.preset.empty()) {
    check(csched_gen_preset_csv(opt.preset.c_str(), opt.seed, opt.days, opt.step_min,
                                opt.start.c_str(), &csv.value));
  } else {
    check(csched_gen_intensity_csv(opt.base, opt.amplitude, opt.phase, opt.noise, opt.seed,
                                   opt.days, opt.step_min, opt.start.c_str(), &csv.value));
  }
  write_file(opt.out, csv.value);
  std::printf("wrote %s\n", opt.out.c_str());
  return 0;
}

struct ConvertOptions {
  std::string in;
  std::string unit = "lbs_per_mwh";
  std::string out;
};

int run_convert(const ConvertOptions& opt) {
  StringGuard csv;
  check(csched_convert_moer(opt.in.c_str(), opt.unit.c_str(), &csv.value));
  write_file(opt.out, csv.value);
  std::printf("wrote %s\n", opt.out.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"carbon-aware workload schedule simulator"};
  app.require_subcommand(1);

  SimulateOptions sim;
  CLI::App* simulate = app.add_subcommand("simulate", "evaluate one strategy on one start");
  simulate->add_option("--strategy", sim.strategy, "none|fs|par|ssfts|fsfts|dpfts")
      ->required()
      ->check(CLI::IsMember({"none", "fs", "par", "ssfts", "fsfts", "dpfts"}));
  simulate->add_option("--energy", sim.energy, "energy CSV path or profile:NAME")->required();
  simulate->add_option("--regions", sim.regions_dir, "directory of MOER CSVs")->required();
  simulate->add_option("--unit", sim.unit, "g_per_kwh|lbs_per_mwh")
      ->check(CLI::IsMember({"g_per_kwh", "lbs_per_mwh"}));
  simulate->add_option("--start", sim.start, "nominal start (ISO-8601 UTC)")->required();
  simulate->add_option("--window-hours", sim.window_hours, "scheduling slack in hours");
  simulate->add_option("--checking-min", sim.checking_min, "checking time in minutes");
  simulate->add_option("--reference", sim.reference, "reference/launch region id");
  simulate->add_option("--mode", sim.mode, "upstream|intraining")
      ->check(CLI::IsMember({"upstream", "intraining"}));
  simulate->add_option("--dataset-gb", sim.dataset_gb, "dataset size in GB (default 0.320)");
  simulate->add_option("--out", sim.out, "text|json")->check(CLI::IsMember({"text", "json"}));

  BenchOptions bench;
  CLI::App* bench_cmd = app.add_subcommand("bench", "run a retrospective benchmark sweep");
  CLI::Option* spec_opt = bench_cmd->add_option("--spec", bench.spec_path, "benchmark spec JSON");
  CLI::Option* grid_opt =
      bench_cmd->add_flag("--paper-grid", bench.paper_grid, "full built-in parameter grid");
  spec_opt->excludes(grid_opt);
  bench_cmd->add_option("--seed", bench.seed, "seed for --paper-grid synthetic regions");
  bench_cmd->add_option("--out-dir", bench.out_dir, "directory for results.{csv,json,md}");
  bench_cmd->add_option("--traces-dir", bench.traces_dir,
                        "also write one example plan trace per cell family");

  GenOptions gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "generate synthetic MOER CSVs");
  gen_cmd->add_option("--preset", gen.preset, "preset region id, or 'all'");
  gen_cmd->add_option("--base", gen.base, "base intensity g/kWh");
  gen_cmd->add_option("--amp", gen.amplitude, "diurnal amplitude g/kWh");
  gen_cmd->add_option("--phase", gen.phase, "phase in hours [0,24)");
  gen_cmd->add_option("--noise", gen.noise, "noise sigma g/kWh");
  gen_cmd->add_option("--seed", gen.seed, "random seed");
  gen_cmd->add_option("--days", gen.days, "number of days");
  gen_cmd->add_option("--step-min", gen.step_min, "base step in minutes");
  gen_cmd->add_option("--start", gen.start, "first timestamp (ISO-8601 UTC)");
  gen_cmd->add_option("--out", gen.out, "output CSV path");
  gen_cmd->add_option("--out-dir", gen.out_dir, "output directory for --preset all");

  ConvertOptions convert;
  CLI::App* convert_cmd = app.add_subcommand("convert", "convert a MOER CSV to g/kWh");
  convert_cmd->add_option("--in", convert.in, "input CSV")->required();
  convert_cmd->add_option("--unit", convert.unit, "input unit")
      ->check(CLI::IsMember({"g_per_kwh", "lbs_per_mwh"}));
  convert_cmd->add_option("--out", convert.out, "output CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help() << std::flush;
    return kExitUsage;
  }

  if (simulate->parsed()) return run_simulate(sim);
  if (bench_cmd->parsed()) {
    if (!bench.paper_grid && bench.spec_path.empty()) {
      std::cerr << "error: bench requires --spec or --paper-grid\n\n" << bench_cmd->help();
      return kExitUsage;
    }
    return run_bench(bench);
  }
  if (gen_cmd->parsed()) return run_gen(gen);
  if (convert_cmd->parsed()) return run_convert(convert);
  return kExitUsage;
}
