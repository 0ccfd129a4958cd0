#ifndef SQPSK_RECEIVER_HPP
#define SQPSK_RECEIVER_HPP

#include <functional>
#include <string>
#include <vector>

#include "sqpsk/gaussian.hpp"

namespace sqpsk {

/// Gaussian phase-diffusion strength sigma (Delta = sigma^2/2).
struct PhaseNoise {
  double sigma = 0.0;
};

/// Gauss-Hermite rule for the unit-variance Gaussian average: the nodes are
/// in the standard e^{-t^2} variable and the weights are normalized to sum
/// to 1, so  E_G[f] ~= sum_i w_i f(sqrt(2) sigma t_i).
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  int size() const { return static_cast<int>(nodes.size()); }

  /// Golub-Welsch construction (symmetric tridiagonal eigenproblem).
  /// `n` must be a power of two in [16, 1024].
  static QuadratureRule gauss_hermite(int n);
};

/// Identification tags for the large-N asymptotic expressions.
enum class AsymptoticKind {
  kHelstromCoherent,   ///< "helstrom-cs":  e^{-4N}/4
  kHelstromSqueezed,   ///< "helstrom-dss": e^{-4N(N+1)}/4
  kHomodyneCoherent,   ///< "homodyne-cs":  sqrt(2/pi) e^{-2N} / (4 sqrt(N))
  kHomodyneSqueezed,   ///< "homodyne-dss": sqrt(2/pi) e^{-2N(N+1)} / (4 sqrt(N(N+1)))
  kAdvantageRatio,     ///< "advantage-ratio": 1 - e^{-4N^2}
};

/// Parses the CLI-facing kind names listed above.
/// Throws UnknownKind for anything else.
AsymptoticKind asymptotic_kind_from_string(const std::string& name);

/// Noiseless pure-seed homodyne error probability,
/// P = erfc(sqrt(2) alpha / Sigma) / 2 with alpha = sqrt(N(1-beta)) and
/// Sigma = 1/(sqrt(N beta) + sqrt(1 + N beta)).
double error_probability_pure(const ChannelBudget& budget);

/// Phase-averaged homodyne error probability
/// P = Int dphi G_sigma(phi) (1/2) erfc(2 alpha cos(phi) / sqrt(2 V(phi)))
/// with V(phi) from rotated_quadrature_stats. Evaluated by Gauss-Hermite
/// doubling starting from `rule` (node count doubled until successive
/// estimates differ by < 1e-10); reduces to the closed form exactly at
/// sigma = 0.
///
/// Throws QuadratureNotConverged if no refinement level meets the target,
/// and budget_to_seed's errors for inadmissible (budget, purity).
double error_probability(const ChannelBudget& budget, double purity,
                         const PhaseNoise& noise,
                         const QuadratureRule& rule = QuadratureRule::gauss_hermite(16));

/// Large-N asymptotic error expressions (see AsymptoticKind).
double asymptotic_error(AsymptoticKind kind, double energy);
double asymptotic_error(const std::string& kind, double energy);

namespace detail {

/// Gaussian phase average E_{phi~N(0,sigma^2)}[f(phi)] of a 2pi-periodic
/// integrand. Gauss-Hermite doubling (start_nodes -> 1024, |delta| < 1e-10);
/// if the cap is reached unconverged, falls back to the exactly equivalent
/// wrapped-normal form: midpoint rule on [-pi, pi) against the wrapped
/// weight, doubling 64 -> 4096 panels. Throws QuadratureNotConverged if
/// both ladders are exhausted.
double phase_average(const std::function<double(double)>& f, double sigma,
                     int start_nodes = 16);

/// Wrapped normal density on [-pi, pi): the theta series for sigma >= 1 and
/// the Gaussian image sum for sigma < 1 (terms below 1e-18 dropped).
double wrapped_normal_density(double phi, double sigma);

}  // namespace detail

}  // namespace sqpsk

#endif  // SQPSK_RECEIVER_HPP
