#include "carbonsched/carbon.hpp"

#include <cmath>
#include <string>

#include "carbonsched/error.hpp"

namespace carbonsched {

void TransferCostModel::validate() const {
  for (double v : {kwh_per_gb, dataset_gb, checkpoint_gb})
    if (!std::isfinite(v) || v < 0.0)
      fail(Errc::invalid_argument, "transfer cost model fields must be finite and >= 0");
}

double operational_emissions(std::span<const double> energy_kwh,
                             std::span<const double> intensity_g_per_kwh) {
  if (energy_kwh.size() != intensity_g_per_kwh.size())
    fail(Errc::invalid_argument,
         "energy and intensity windows differ in length (" + std::to_string(energy_kwh.size()) +
             " vs " + std::to_string(intensity_g_per_kwh.size()) + ")");
  double grams = 0.0;
  for (std::size_t i = 0; i < energy_kwh.size(); ++i)
    grams += energy_kwh[i] * intensity_g_per_kwh[i];
  return grams;
}

double transfer_energy_kwh(const TransferCostModel& model) {
  model.validate();
  return model.kwh_per_gb * (model.dataset_gb + model.checkpoint_gb);
}

double transfer_emissions_g(const TransferCostModel& model, double intensity_at_transfer) {
  if (!(intensity_at_transfer >= 0.0))
    fail(Errc::invalid_argument, "transfer intensity must be >= 0");
  return transfer_energy_kwh(model) * intensity_at_transfer;
}

}  // namespace carbonsched
