#include "doctest.h"

#include <vector>

#include "carbonsched/carbon.hpp"
#include "carbonsched/error.hpp"
#include "carbonsched/synth.hpp"

using namespace carbonsched;

TEST_CASE("operational emissions dot product") {
  const std::vector<double> energy{0.1, 0.2};
  const std::vector<double> intensity{100.0, 50.0};
  CHECK(operational_emissions(energy, intensity) == 20.0);

  const std::vector<double> zeros{0.0, 0.0};
  CHECK(operational_emissions(energy, zeros) == 0.0);
  CHECK(operational_emissions({}, {}) == 0.0);

  const std::vector<double> three{1.0, 1.0, 1.0};
  CHECK_THROWS_AS(operational_emissions(energy, three), Error);
}

TEST_CASE("IF profile against a flat 300 g/kWh grid") {
  const EnergySeries profile = gen_energy_profile("IF", 5, 0);
  const std::vector<double> intensity(profile.samples().size(), 300.0);
  // independent oracle: total energy times the constant intensity
  CHECK(operational_emissions(profile.samples(), intensity) ==
        doctest::Approx(0.825 * 300.0).epsilon(1e-9));
}

TEST_CASE("transfer cost model") {
  SUBCASE("defaults are the published constants") {
    const TransferCostModel model;
    CHECK(model.kwh_per_gb == 0.023);
    CHECK(model.dataset_gb == 0.320);
    CHECK(model.checkpoint_gb == 0.0);
  }
  SUBCASE("transfer energy") {
    CHECK(transfer_energy_kwh({0.023, 2.0, 0.0}) == doctest::Approx(0.046).epsilon(1e-12));
    CHECK(transfer_energy_kwh({0.023, 0.320, 0.0}) == doctest::Approx(0.00736).epsilon(1e-12));
    CHECK(transfer_energy_kwh({0.023, 0.0, 0.0}) == 0.0);
    CHECK(transfer_energy_kwh({0.023, 0.320, 0.1}) ==
          doctest::Approx(0.023 * 0.42).epsilon(1e-12));
  }
  SUBCASE("transfer emissions") {
    CHECK(transfer_emissions_g({0.023, 0.320, 0.0}, 20.0) ==
          doctest::Approx(0.1472).epsilon(1e-12));
    CHECK(transfer_emissions_g({0.023, 5.0, 0.0}, 0.0) == 0.0);
    CHECK(transfer_emissions_g({0.023, 1.0, 0.0}, 1000.0) ==
          doctest::Approx(23.0).epsilon(1e-12));
  }
  SUBCASE("validation") {
    CHECK_THROWS_AS(transfer_energy_kwh({-0.1, 1.0, 0.0}), Error);
    CHECK_THROWS_AS(transfer_emissions_g({0.023, 0.320, 0.0}, -1.0), Error);
  }
}

TEST_CASE("operational emissions is bilinear in the energy") {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng.next_u64() % 20);
    std::vector<double> energy(n), intensity(n), scaled(n);
    const double c = rng.next_unit() * 10.0;
    for (int i = 0; i < n; ++i) {
      energy[i] = rng.next_unit();
      intensity[i] = rng.next_unit() * 1000.0;
      scaled[i] = c * energy[i];
    }
    const double base = operational_emissions(energy, intensity);
    REQUIRE(operational_emissions(scaled, intensity) ==
            doctest::Approx(c * base).epsilon(1e-12));
  }
}

TEST_CASE("operational emissions is additive over concatenation") {
  SplitMix64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_u64() % 30);
    std::vector<double> energy(n), intensity(n);
    for (int i = 0; i < n; ++i) {
      energy[i] = rng.next_unit();
      intensity[i] = rng.next_unit() * 1000.0;
    }
    const int cut = 1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(n - 1));
    const double whole = operational_emissions(energy, intensity);
    const double left = operational_emissions(std::span(energy).first(cut),
                                              std::span(intensity).first(cut));
    const double right = operational_emissions(std::span(energy).subspan(cut),
                                               std::span(intensity).subspan(cut));
    REQUIRE(whole == doctest::Approx(left + right).epsilon(1e-12));
  }
}

TEST_CASE("transfer emissions are monotone in size and intensity") {
  SplitMix64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const double gb_small = rng.next_unit() * 5.0;
    const double gb_large = gb_small + rng.next_unit() * 5.0;
    const double i_small = rng.next_unit() * 500.0;
    const double i_large = i_small + rng.next_unit() * 500.0;
    REQUIRE(transfer_emissions_g({0.023, gb_small, 0.0}, i_small) <=
            transfer_emissions_g({0.023, gb_large, 0.0}, i_small));
    REQUIRE(transfer_emissions_g({0.023, gb_small, 0.0}, i_small) <=
            transfer_emissions_g({0.023, gb_small, 0.0}, i_large));
  }
}
