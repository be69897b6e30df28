#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "carbonsched/series.hpp"

namespace carbonsched {

enum class IntensityUnit { g_per_kwh, lbs_per_mwh };

/// lbs CO2eq per MWh -> g CO2eq per kWh.
inline constexpr double kLbsPerMwhToGramsPerKwh = 0.453592;

IntensityUnit parse_intensity_unit(std::string_view name);

/// Parses a MOER CSV (`timestamp,value` header, ISO-8601 UTC timestamps,
/// strictly increasing, nominally one row per base step). Values are
/// converted to g/kWh at ingestion. Gaps of up to 3 consecutive missing
/// steps are filled by linear interpolation; larger gaps are an error.
IntensitySeries parse_moer_csv(std::string_view text, IntensityUnit unit, std::string region_id);

/// Parses an energy CSV (`timestamp,kwh` header). The step is inferred from
/// the rows and must be perfectly regular; gaps are an error here.
EnergySeries parse_energy_csv(std::string_view text);

/// Serializes back to the MOER CSV format. Values are printed with
/// shortest-round-trip formatting, so parse(write(s)) == s bitwise.
std::string write_moer_csv(const IntensitySeries& series);
std::string write_energy_csv(const EnergySeries& series);

IntensitySeries load_moer_csv(const std::filesystem::path& path, IntensityUnit unit,
                              std::string region_id);
EnergySeries load_energy_csv(const std::filesystem::path& path);

/// Loads every `*.csv` in a directory as one region per file; the region id
/// is the file stem. All files must share one grid.
RegionSet load_region_dir(const std::filesystem::path& dir,
                          IntensityUnit unit = IntensityUnit::g_per_kwh);

}  // namespace carbonsched
