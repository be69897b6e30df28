#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "carbonsched/series.hpp"

namespace carbonsched {

/// SplitMix64 stream. Fixed algorithm so that generated traces are
/// reproducible bit-for-bit across platforms.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();
  /// Uniform double in [0, 1).
  double next_unit();
  /// Standard-normal variate via the Irwin-Hall sum of 12 uniforms
  /// (mean 0, variance 1, support [-6, 6]); exact-arithmetic portable.
  double next_gauss();

 private:
  std::uint64_t state_;
};

/// Daily sinusoid with additive noise standing in for a real grid's
/// marginal-intensity profile.
struct DiurnalModel {
  double base_g_per_kwh = 300.0;
  double amplitude_g_per_kwh = 0.0;
  double phase_hours = 0.0;  // hour of day where the sinusoid crosses upward
  double noise_sigma = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
};

/// value(t) = max(0, base + amplitude*sin(2*pi*(hour(t) - phase)/24) + gauss*sigma)
/// where hour(t) is the fractional UTC hour of day at step t.
IntensitySeries gen_intensity(const DiurnalModel& model, std::string region_id, int days,
                              int step_minutes, std::int64_t start_epoch_s);

/// The four bundled constant-rate workload profiles.
struct WorkloadProfile {
  std::string name;
  std::int64_t duration_minutes;
  double total_kwh;
};

const std::vector<WorkloadProfile>& workload_profiles();
const WorkloadProfile& workload_profile(std::string_view name);

/// Spreads total_kwh uniformly over duration_minutes.
EnergySeries gen_energy_constant(double total_kwh, std::int64_t duration_minutes,
                                 int step_minutes, std::int64_t start_epoch_s);

/// Energy series for one of the bundled profiles.
EnergySeries gen_energy_profile(std::string_view name, int step_minutes,
                                std::int64_t start_epoch_s);

/// Seven built-in regions with staggered phases and differing base levels.
struct RegionPreset {
  std::string id;
  double base_g_per_kwh;
  double amplitude_g_per_kwh;
  double phase_hours;
  double noise_sigma;
};

const std::vector<RegionPreset>& region_presets();
const RegionPreset& region_preset(std::string_view id);

/// Generates all seven preset regions on one grid. Each region's stream is
/// seeded with master_seed mixed with the region's position, so the whole
/// set is a pure function of (master_seed, days, step, start).
RegionSet gen_preset_regions(std::uint64_t master_seed, int days, int step_minutes,
                             std::int64_t start_epoch_s);

}  // namespace carbonsched
