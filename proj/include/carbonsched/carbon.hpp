#pragma once

#include <span>

namespace carbonsched {

/// Energy cost of moving the training data between regions.
///
/// Defaults: 0.023 kWh per GB transferred, a 0.320 GB compressed dataset and
/// no checkpoint payload.
struct TransferCostModel {
  double kwh_per_gb = 0.023;
  double dataset_gb = 0.320;
  double checkpoint_gb = 0.0;

  void validate() const;
};

/// Dot product of an energy window (kWh) with an intensity window (g/kWh),
/// in gCO2eq. Zero-length input yields 0; mismatched lengths throw.
double operational_emissions(std::span<const double> energy_kwh,
                             std::span<const double> intensity_g_per_kwh);

/// kWh consumed by one dataset (+ checkpoint) shipment.
double transfer_energy_kwh(const TransferCostModel& model);

/// Emissions of one shipment priced at the given intensity, in gCO2eq.
double transfer_emissions_g(const TransferCostModel& model, double intensity_at_transfer);

}  // namespace carbonsched
