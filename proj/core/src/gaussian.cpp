#include "sqpsk/gaussian.hpp"

#include <cmath>
#include <sstream>

#include "sqpsk/errors.hpp"

namespace sqpsk {

double admissible_purity_min(double energy) { return 1.0 / (1.0 + 2.0 * energy); }

SeedState budget_to_seed(const ChannelBudget& budget, double purity) {
  const double n = budget.energy;
  const double beta = budget.squeezing_fraction;

  if (!(purity <= 1.0) || !std::isfinite(purity)) {
    std::ostringstream msg;
    msg << "purity " << purity << " outside (" << admissible_purity_min(n) << ", 1]";
    throw InvalidPurity(msg.str());
  }
  // mu = 1 (N_th = 0) is admissible for every budget; below 1 the thermal
  // occupation (1-mu)/(2mu) must fit inside the energy budget.
  if (purity < 1.0 && purity <= admissible_purity_min(n)) {
    std::ostringstream msg;
    msg << "purity " << purity << " outside (" << admissible_purity_min(n) << ", 1]";
    throw InvalidPurity(msg.str());
  }

  const double n_sq = n * beta;  // sinh^2(r)
  const double n_th = (1.0 - purity) / (2.0 * purity);
  const double alpha_sq = n - n_sq - n_th * (1.0 + 2.0 * n_sq);
  // Tolerate tiny negative round-off at the feasibility boundary.
  if (alpha_sq < -1e-14 * (1.0 + n)) {
    std::ostringstream msg;
    msg << "no energy left for displacement: alpha^2 = " << alpha_sq
        << " at N=" << n << ", beta=" << beta << ", mu=" << purity;
    throw EnergyBudgetExceeded(msg.str());
  }

  SeedState seed;
  seed.alpha = std::sqrt(std::max(alpha_sq, 0.0));
  seed.squeezing = std::asinh(std::sqrt(n_sq));
  seed.thermal_photons = n_th;
  return seed;
}

double energy_of(const SeedState& seed) {
  const double sh = std::sinh(seed.squeezing);
  return seed.alpha * seed.alpha +
         (2.0 * seed.thermal_photons + 1.0) * sh * sh + seed.thermal_photons;
}

LossResult loss_map(const LossyPreparation& prep) {
  const double eta = prep.transmissivity;
  if (!(eta > 0.0) || !(eta <= 1.0)) {
    std::ostringstream msg;
    msg << "transmissivity " << eta << " outside (0, 1]";
    throw InvalidTransmissivity(msg.str());
  }
  const double e2r = std::exp(2.0 * prep.initial_squeezing);
  const double vx = eta / e2r + (1.0 - eta);
  const double vp = eta * e2r + (1.0 - eta);

  LossResult out;
  out.purity = 1.0 / std::sqrt(vx * vp);
  out.squeezing = 0.25 * std::log(vp / vx);
  return out;
}

QuadratureStats rotated_quadrature_stats(const SeedState& seed, double phase,
                                         int sign) {
  const double c = std::cos(phase);
  const double s = std::sin(phase);
  const double e2r = std::exp(2.0 * seed.squeezing);

  QuadratureStats stats;
  stats.mean = sign * 2.0 * seed.alpha * c;
  stats.variance =
      (2.0 * seed.thermal_photons + 1.0) * (c * c / e2r + s * s * e2r);
  return stats;
}

}  // namespace sqpsk
