#include "carbonsched/traces.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "carbonsched/error.hpp"

namespace carbonsched {

namespace {

struct Row {
  std::int64_t epoch_s;
  double value;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t'))
    s.remove_suffix(1);
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  return s;
}

double parse_value(std::string_view field, std::size_t line_no) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size())
    fail(Errc::parse_error,
         "line " + std::to_string(line_no) + ": unparseable value \"" + std::string(field) + "\"");
  return value;
}

/// Reads `timestamp,<value>` rows below a mandatory header.
std::vector<Row> read_rows(std::string_view text, std::string_view expected_header) {
  std::vector<Row> rows;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? eol : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line != expected_header)
        fail(Errc::parse_error, "expected header \"" + std::string(expected_header) +
                                    "\", got \"" + std::string(line) + "\"");
      continue;
    }
    const std::size_t comma = line.find(',');
    if (comma == std::string_view::npos)
      fail(Errc::parse_error, "line " + std::to_string(line_no) + ": missing comma");
    const std::int64_t epoch = parse_iso8601_utc(trim(line.substr(0, comma)));
    const double value = parse_value(trim(line.substr(comma + 1)), line_no);
    if (!rows.empty() && epoch <= rows.back().epoch_s)
      fail(Errc::data_error,
           "line " + std::to_string(line_no) + ": timestamps must be strictly increasing");
    rows.push_back({epoch, value});
  }
  return rows;
}

/// Step inferred as the smallest timestamp delta; every delta must be a
/// multiple of it. Single-row inputs fall back to the 5-minute base step.
int infer_step_minutes(const std::vector<Row>& rows) {
  if (rows.size() < 2) return 5;
  std::int64_t step_s = rows[1].epoch_s - rows[0].epoch_s;
  for (std::size_t i = 2; i < rows.size(); ++i)
    step_s = std::min(step_s, rows[i].epoch_s - rows[i - 1].epoch_s);
  if (step_s % 60 != 0 || step_s <= 0 || 3600 % step_s != 0)
    fail(Errc::data_error, "cannot infer a regular step dividing one hour from the timestamps");
  return static_cast<int>(step_s / 60);
}

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::data_error, "cannot open " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

IntensityUnit parse_intensity_unit(std::string_view name) {
  if (name == "g_per_kwh") return IntensityUnit::g_per_kwh;
  if (name == "lbs_per_mwh") return IntensityUnit::lbs_per_mwh;
  fail(Errc::invalid_argument, "unknown intensity unit \"" + std::string(name) +
                                   "\" (expected g_per_kwh or lbs_per_mwh)");
}

IntensitySeries parse_moer_csv(std::string_view text, IntensityUnit unit, std::string region_id) {
  std::vector<Row> rows = read_rows(text, "timestamp,value");
  if (rows.empty()) fail(Errc::data_error, "empty trace for region " + region_id);
  const double scale = unit == IntensityUnit::lbs_per_mwh ? kLbsPerMwhToGramsPerKwh : 1.0;
  for (auto& row : rows) {
    if (row.value < 0.0 || !std::isfinite(row.value))
      fail(Errc::data_error, "negative or non-finite intensity at " +
                                 format_iso8601_utc(row.epoch_s) + " in region " + region_id);
    row.value *= scale;
  }

  const int step_minutes = infer_step_minutes(rows);
  const std::int64_t step_s = static_cast<std::int64_t>(step_minutes) * 60;
  std::vector<double> values;
  values.reserve(rows.size());
  values.push_back(rows.front().value);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const std::int64_t missing = (rows[i].epoch_s - rows[i - 1].epoch_s) / step_s - 1;
    if (missing > 3)
      fail(Errc::data_error, "gap of " + std::to_string(missing) + " steps (" +
                                 std::to_string(missing * step_minutes) + "m) before " +
                                 format_iso8601_utc(rows[i].epoch_s) + " in region " + region_id +
                                 "; at most 3 consecutive missing steps are interpolated");
    for (std::int64_t j = 1; j <= missing; ++j) {
      const double t = static_cast<double>(j) / static_cast<double>(missing + 1);
      values.push_back(rows[i - 1].value + t * (rows[i].value - rows[i - 1].value));
    }
    values.push_back(rows[i].value);
  }

  const TimeGrid grid = TimeGrid::make(rows.front().epoch_s, step_minutes,
                                       static_cast<std::int64_t>(values.size()));
  return IntensitySeries(std::move(region_id), grid, std::move(values));
}

EnergySeries parse_energy_csv(std::string_view text) {
  std::vector<Row> rows = read_rows(text, "timestamp,kwh");
  if (rows.empty()) fail(Errc::data_error, "empty trace");
  const int step_minutes = infer_step_minutes(rows);
  const std::int64_t step_s = static_cast<std::int64_t>(step_minutes) * 60;
  std::vector<double> kwh;
  kwh.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].value < 0.0 || !std::isfinite(rows[i].value))
      fail(Errc::data_error,
           "negative or non-finite kWh at " + format_iso8601_utc(rows[i].epoch_s));
    if (i > 0 && rows[i].epoch_s - rows[i - 1].epoch_s != step_s)
      fail(Errc::data_error, "irregular step before " + format_iso8601_utc(rows[i].epoch_s) +
                                 "; energy traces must be sampled every " +
                                 std::to_string(step_minutes) + "m");
    kwh.push_back(rows[i].value);
  }
  const TimeGrid grid =
      TimeGrid::make(rows.front().epoch_s, step_minutes, static_cast<std::int64_t>(kwh.size()));
  return EnergySeries(grid, std::move(kwh));
}

std::string write_moer_csv(const IntensitySeries& series) {
  std::string out = "timestamp,value\n";
  for (std::int64_t i = 0; i < series.grid().n_steps; ++i) {
    out += format_iso8601_utc(series.grid().instant_at(i));
    out += ',';
    out += format_double(series.values()[static_cast<std::size_t>(i)]);
    out += '\n';
  }
  return out;
}

std::string write_energy_csv(const EnergySeries& series) {
  std::string out = "timestamp,kwh\n";
  for (std::int64_t i = 0; i < series.grid().n_steps; ++i) {
    out += format_iso8601_utc(series.grid().instant_at(i));
    out += ',';
    out += format_double(series.samples()[static_cast<std::size_t>(i)]);
    out += '\n';
  }
  return out;
}

IntensitySeries load_moer_csv(const std::filesystem::path& path, IntensityUnit unit,
                              std::string region_id) {
  return parse_moer_csv(read_file(path), unit, std::move(region_id));
}

EnergySeries load_energy_csv(const std::filesystem::path& path) {
  return parse_energy_csv(read_file(path));
}

RegionSet load_region_dir(const std::filesystem::path& dir, IntensityUnit unit) {
  if (!std::filesystem::is_directory(dir))
    fail(Errc::data_error, "region directory " + dir.string() + " does not exist");
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".csv")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) fail(Errc::data_error, "no .csv files in " + dir.string());
  RegionSet regions;
  for (const auto& file : files)
    regions.add(load_moer_csv(file, unit, file.stem().string()));
  return regions;
}

}  // namespace carbonsched
