#include "carbonsched/synth.hpp"

#include <cmath>

#include "carbonsched/error.hpp"

namespace carbonsched {

std::uint64_t SplitMix64::next_u64() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double SplitMix64::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double SplitMix64::next_gauss() {
  double sum = 0.0;
  for (int i = 0; i < 12; ++i) sum += next_unit();
  return sum - 6.0;
}

void DiurnalModel::validate() const {
  if (!std::isfinite(base_g_per_kwh) || !std::isfinite(amplitude_g_per_kwh) ||
      !std::isfinite(noise_sigma) || !std::isfinite(phase_hours))
    fail(Errc::invalid_argument, "diurnal model fields must be finite");
  if (amplitude_g_per_kwh < 0.0 || noise_sigma < 0.0)
    fail(Errc::invalid_argument, "amplitude and noise must be >= 0");
  if (base_g_per_kwh < amplitude_g_per_kwh)
    fail(Errc::invalid_argument, "base must be >= amplitude to keep the pre-clip mean positive");
  if (phase_hours < 0.0 || phase_hours >= 24.0)
    fail(Errc::invalid_argument, "phase must lie in [0, 24)");
}

IntensitySeries gen_intensity(const DiurnalModel& model, std::string region_id, int days,
                              int step_minutes, std::int64_t start_epoch_s) {
  model.validate();
  if (days < 1) fail(Errc::invalid_argument, "days must be >= 1");
  const std::int64_t per_day = 24 * 60 / step_minutes;
  const TimeGrid grid = TimeGrid::make(start_epoch_s, step_minutes, per_day * days);
  SplitMix64 rng(model.seed);
  std::vector<double> values(static_cast<std::size_t>(grid.n_steps));
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  for (std::int64_t i = 0; i < grid.n_steps; ++i) {
    const std::int64_t sec_of_day = ((grid.instant_at(i) % 86400) + 86400) % 86400;
    const double hour = static_cast<double>(sec_of_day) / 3600.0;
    const double v = model.base_g_per_kwh +
                     model.amplitude_g_per_kwh * std::sin(kTwoPi * (hour - model.phase_hours) / 24.0) +
                     rng.next_gauss() * model.noise_sigma;
    values[static_cast<std::size_t>(i)] = v > 0.0 ? v : 0.0;
  }
  return IntensitySeries(std::move(region_id), grid, std::move(values));
}

const std::vector<WorkloadProfile>& workload_profiles() {
  static const std::vector<WorkloadProfile> profiles = {
      {"IF", 255, 0.825},     // isolation forest, 4.25 h
      {"SVM", 150, 0.493},    // support vector machine, 2.5 h
      {"AE", 210, 0.615},     // autoencoder, 3.5 h
      {"HF-SCA", 960, 3.310}, // U-Net grid search, 16 h
  };
  return profiles;
}

const WorkloadProfile& workload_profile(std::string_view name) {
  for (const auto& p : workload_profiles())
    if (p.name == name) return p;
  std::string known;
  for (const auto& p : workload_profiles()) known += (known.empty() ? "" : ", ") + p.name;
  fail(Errc::invalid_argument,
       "unknown workload profile \"" + std::string(name) + "\" (known: " + known + ")");
}

EnergySeries gen_energy_constant(double total_kwh, std::int64_t duration_minutes,
                                 int step_minutes, std::int64_t start_epoch_s) {
  if (!(total_kwh >= 0.0) || !std::isfinite(total_kwh))
    fail(Errc::invalid_argument, "total kWh must be finite and >= 0");
  if (duration_minutes <= 0 || step_minutes <= 0 || duration_minutes % step_minutes != 0)
    fail(Errc::invalid_argument, "duration must be a positive multiple of the base step");
  const std::int64_t steps = duration_minutes / step_minutes;
  const TimeGrid grid = TimeGrid::make(start_epoch_s, step_minutes, steps);
  std::vector<double> kwh(static_cast<std::size_t>(steps),
                          total_kwh / static_cast<double>(steps));
  return EnergySeries(grid, std::move(kwh));
}

EnergySeries gen_energy_profile(std::string_view name, int step_minutes,
                                std::int64_t start_epoch_s) {
  const WorkloadProfile& p = workload_profile(name);
  return gen_energy_constant(p.total_kwh, p.duration_minutes, step_minutes, start_epoch_s);
}

const std::vector<RegionPreset>& region_presets() {
  // Staggered phases and mixed base levels, loosely evoking a spread of
  // European grids (two hydro/nuclear-heavy, the rest fossil-leaning).
  static const std::vector<RegionPreset> presets = {
      {"DUB", 380.0, 140.0, 17.0, 16.0},
      {"FRA", 480.0, 160.0, 15.0, 20.0},
      {"LON", 300.0, 110.0, 16.0, 12.0},
      {"MIL", 420.0, 130.0, 14.0, 18.0},
      {"PAR", 120.0, 45.0, 13.0, 6.0},
      {"STO", 90.0, 35.0, 11.0, 5.0},
      {"ZAR", 260.0, 120.0, 12.0, 14.0},
  };
  return presets;
}

const RegionPreset& region_preset(std::string_view id) {
  for (const auto& p : region_presets())
    if (p.id == id) return p;
  std::string known;
  for (const auto& p : region_presets()) known += (known.empty() ? "" : ", ") + p.id;
  fail(Errc::invalid_argument,
       "unknown region preset \"" + std::string(id) + "\" (known: " + known + ")");
}

RegionSet gen_preset_regions(std::uint64_t master_seed, int days, int step_minutes,
                             std::int64_t start_epoch_s) {
  RegionSet regions;
  const auto& presets = region_presets();
  for (std::size_t i = 0; i < presets.size(); ++i) {
    const auto& p = presets[i];
    // Each region draws from its own stream so adding or reordering regions
    // cannot shift another region's noise.
    SplitMix64 mixer(master_seed + 0x1000 * (i + 1));
    DiurnalModel model{p.base_g_per_kwh, p.amplitude_g_per_kwh, p.phase_hours, p.noise_sigma,
                       mixer.next_u64()};
    regions.add(gen_intensity(model, p.id, days, step_minutes, start_epoch_s));
  }
  return regions;
}

}  // namespace carbonsched
