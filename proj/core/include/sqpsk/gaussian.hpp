#ifndef SQPSK_GAUSSIAN_HPP
#define SQPSK_GAUSSIAN_HPP

namespace sqpsk {

/// Fixed signaling resources: mean photon number N shared between
/// displacement and squeezing, with fraction beta going into squeezing.
struct ChannelBudget {
  double energy = 0.0;              ///< N >= 0, mean photons per symbol
  double squeezing_fraction = 0.0;  ///< beta in [0,1]
};

/// Physical parameters of the (displaced) squeezed thermal seed.
/// Purity mu relates to the thermal occupation by mu = 1/(2*N_th + 1).
struct SeedState {
  double alpha = 0.0;            ///< displacement amplitude, >= 0
  double squeezing = 0.0;        ///< squeezing parameter r, >= 0
  double thermal_photons = 0.0;  ///< N_th >= 0
};

/// A squeezed input sent through a pure-loss channel before encoding.
struct LossyPreparation {
  double initial_squeezing = 0.0;  ///< r-tilde
  double transmissivity = 1.0;     ///< eta in (0,1]
};

/// First two moments of the measured quadrature x = a e^{-i theta} + h.c.
/// (vacuum variance 1, coherent-state mean 2*alpha).
struct QuadratureStats {
  double mean = 0.0;
  double variance = 1.0;
};

/// Purity and effective squeezing of the state leaving a lossy preparation.
struct LossResult {
  double purity = 1.0;
  double squeezing = 0.0;
};

/// Smallest admissible purity for a budget of N photons: below
/// 1/(1 + 2N) the thermal occupation alone exceeds the energy budget.
double admissible_purity_min(double energy);

/// Splits the energy budget into displacement, squeezing and thermal parts:
/// r = asinh(sqrt(N*beta)), N_th = (1-mu)/(2*mu),
/// alpha = sqrt(N - N*beta - N_th*(1 + 2*N*beta)).
///
/// Throws InvalidPurity if purity is outside (1/(1+2N), 1], and
/// EnergyBudgetExceeded if the displacement energy would be negative.
SeedState budget_to_seed(const ChannelBudget& budget, double purity);

/// Mean photon number of a seed: alpha^2 + (2*N_th+1)*sinh^2(r) + N_th.
/// Exact round-trip inverse of budget_to_seed.
double energy_of(const SeedState& seed);

/// Purity and squeezing of an initially pure squeezed vacuum (parameter
/// r-tilde) after a transmissivity-eta loss channel. With the output
/// quadrature variances V_x' = eta e^{-2r~} + 1 - eta and
/// V_p' = eta e^{2r~} + 1 - eta, the state is a squeezed thermal state with
/// e^{2r} = sqrt(V_p'/V_x') and mu = 1/sqrt(V_x' V_p').
///
/// Throws InvalidTransmissivity if eta is outside (0, 1].
LossResult loss_map(const LossyPreparation& prep);

/// Moments of the phase-rotated seed along the fixed measurement quadrature:
/// mean = sign * 2*alpha*cos(phase),
/// variance = (2*N_th+1) * (e^{-2r} cos^2(phase) + e^{2r} sin^2(phase)).
/// `sign` (+1 or -1) selects which of the two antipodal symbols was sent.
QuadratureStats rotated_quadrature_stats(const SeedState& seed, double phase,
                                         int sign);

}  // namespace sqpsk

#endif  // SQPSK_GAUSSIAN_HPP
