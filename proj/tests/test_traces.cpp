#include "doctest.h"

#include <cmath>
#include <string>

#include "carbonsched/error.hpp"
#include "carbonsched/synth.hpp"
#include "carbonsched/traces.hpp"

using namespace carbonsched;

namespace {

std::string moer(const std::initializer_list<std::pair<const char*, const char*>>& rows) {
  std::string text = "timestamp,value\n";
  for (const auto& [ts, value] : rows) text += std::string(ts) + "," + value + "\n";
  return text;
}

}  // namespace

TEST_CASE("moer unit conversion") {
  const auto series =
      parse_moer_csv(moer({{"2021-01-01T00:00:00Z", "1000"}}), IntensityUnit::lbs_per_mwh, "XX");
  CHECK(series.values()[0] == doctest::Approx(453.592).epsilon(1e-12));

  const auto identity =
      parse_moer_csv(moer({{"2021-01-01T00:00:00Z", "312.5"}}), IntensityUnit::g_per_kwh, "XX");
  CHECK(identity.values()[0] == 312.5);
}

TEST_CASE("moer gap interpolation") {
  const auto series = parse_moer_csv(moer({{"2021-01-01T00:00:00Z", "10"},
                                           {"2021-01-01T00:05:00Z", "20"},
                                           {"2021-01-01T00:15:00Z", "40"},
                                           {"2021-01-01T00:20:00Z", "50"}}),
                                     IntensityUnit::g_per_kwh, "XX");
  REQUIRE(series.grid().n_steps == 5);
  CHECK(series.values()[2] == 30.0);  // 00:10 linearly interpolated
  CHECK(series.grid().step_minutes == 5);

  // two missing steps split the difference in thirds
  const auto two = parse_moer_csv(moer({{"2021-01-01T00:00:00Z", "10"},
                                        {"2021-01-01T00:15:00Z", "40"},
                                        {"2021-01-01T00:20:00Z", "50"}}),
                                  IntensityUnit::g_per_kwh, "XX");
  REQUIRE(two.grid().n_steps == 5);
  CHECK(two.values()[1] == doctest::Approx(20.0));
  CHECK(two.values()[2] == doctest::Approx(30.0));
}

TEST_CASE("moer parse errors") {
  // a 30-minute hole in 5-minute data is past the interpolation allowance
  CHECK_THROWS_WITH_AS(
      parse_moer_csv(moer({{"2021-01-01T00:00:00Z", "10"},
                           {"2021-01-01T00:05:00Z", "12"},
                           {"2021-01-01T00:35:00Z", "20"}}),
                     IntensityUnit::g_per_kwh, "XX"),
      doctest::Contains("gap"), Error);
  CHECK_THROWS_AS(parse_moer_csv("timestamp,value\n2021-01-01T00:00:00Z;10\n",
                                 IntensityUnit::g_per_kwh, "XX"),
                  Error);
  CHECK_THROWS_AS(parse_moer_csv(moer({{"2021-01-01T00:00:00Z", "-1"}}),
                                 IntensityUnit::g_per_kwh, "XX"),
                  Error);
  CHECK_THROWS_AS(parse_moer_csv(moer({{"2021-01-01T00:00:00Z", "nonsense"}}),
                                 IntensityUnit::g_per_kwh, "XX"),
                  Error);
  CHECK_THROWS_AS(parse_moer_csv("timestamp,value\n", IntensityUnit::g_per_kwh, "XX"), Error);
  CHECK_THROWS_AS(parse_moer_csv("wrong,header\n", IntensityUnit::g_per_kwh, "XX"), Error);
  // duplicate timestamp = not strictly increasing
  CHECK_THROWS_AS(
      parse_moer_csv(moer({{"2021-01-01T00:00:00Z", "1"}, {"2021-01-01T00:00:00Z", "2"}}),
                     IntensityUnit::g_per_kwh, "XX"),
      Error);
}

TEST_CASE("moer round trip is bitwise") {
  SplitMix64 rng(41);
  const TimeGrid grid = TimeGrid::make(1609459200, 5, 64);
  std::vector<double> values;
  for (int i = 0; i < 64; ++i) values.push_back(rng.next_unit() * 900.0);
  const IntensitySeries series("RT", grid, values);
  const IntensitySeries back = parse_moer_csv(write_moer_csv(series), IntensityUnit::g_per_kwh,
                                              "RT");
  REQUIRE(back.grid().n_steps == series.grid().n_steps);
  for (int i = 0; i < 64; ++i) REQUIRE(back.values()[i] == series.values()[i]);
}

TEST_CASE("conversion linearity") {
  SplitMix64 rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    std::string lbs_csv = "timestamp,value\n";
    std::string g_csv = "timestamp,value\n";
    const TimeGrid grid = TimeGrid::make(1609459200, 5, 16);
    for (int i = 0; i < 16; ++i) {
      const double lbs = rng.next_unit() * 2000.0;
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", lbs);
      lbs_csv += format_iso8601_utc(grid.instant_at(i)) + "," + buf + "\n";
      std::snprintf(buf, sizeof buf, "%.17g", lbs * kLbsPerMwhToGramsPerKwh);
      g_csv += format_iso8601_utc(grid.instant_at(i)) + "," + buf + "\n";
    }
    const auto from_lbs = parse_moer_csv(lbs_csv, IntensityUnit::lbs_per_mwh, "XX");
    const auto from_g = parse_moer_csv(g_csv, IntensityUnit::g_per_kwh, "XX");
    for (int i = 0; i < 16; ++i)
      REQUIRE(from_lbs.values()[i] ==
              doctest::Approx(from_g.values()[i]).epsilon(1e-12));
  }
}

TEST_CASE("energy csv parsing") {
  const EnergySeries series = parse_energy_csv(
      "timestamp,kwh\n2021-01-01T00:00:00Z,0.1\n2021-01-01T00:05:00Z,0.2\n");
  CHECK(series.steps() == 2);
  CHECK(series.samples()[0] == 0.1);
  CHECK(series.total_kwh() == doctest::Approx(0.3).epsilon(1e-12));

  CHECK_THROWS_WITH_AS(parse_energy_csv("timestamp,kwh\n"), doctest::Contains("empty"), Error);
  CHECK_THROWS_AS(parse_energy_csv("timestamp,kwh\n2021-01-01T00:00:00Z,-0.1\n"), Error);
  // a skipped step is irregular for energy traces, not interpolated
  CHECK_THROWS_AS(parse_energy_csv("timestamp,kwh\n2021-01-01T00:00:00Z,0.1\n"
                                   "2021-01-01T00:05:00Z,0.1\n2021-01-01T00:15:00Z,0.1\n"),
                  Error);
}

TEST_CASE("bundled profile files") {
  const EnergySeries hf = load_energy_csv(std::string(CSCHED_DATA_DIR) + "/profiles/HF-SCA.csv");
  CHECK(hf.steps() == 192);  // 16 h at 5-minute steps
  CHECK(hf.total_kwh() == doctest::Approx(3.310).epsilon(1e-9));

  const EnergySeries isolation =
      load_energy_csv(std::string(CSCHED_DATA_DIR) + "/profiles/IF.csv");
  CHECK(isolation.steps() == 51);
  CHECK(isolation.total_kwh() == doctest::Approx(0.825).epsilon(1e-9));

  const EnergySeries svm = load_energy_csv(std::string(CSCHED_DATA_DIR) + "/profiles/SVM.csv");
  CHECK(svm.total_kwh() == doctest::Approx(0.493).epsilon(1e-9));
  const EnergySeries ae = load_energy_csv(std::string(CSCHED_DATA_DIR) + "/profiles/AE.csv");
  CHECK(ae.total_kwh() == doctest::Approx(0.615).epsilon(1e-9));
}
