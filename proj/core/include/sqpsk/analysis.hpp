#ifndef SQPSK_ANALYSIS_HPP
#define SQPSK_ANALYSIS_HPP

#include <string>
#include <utility>
#include <vector>

#include "sqpsk/fock.hpp"
#include "sqpsk/gaussian.hpp"
#include "sqpsk/receiver.hpp"

namespace sqpsk {

/// Which error-probability figure of merit a threshold refers to.
enum class Metric { kHelstrom, kHomodyne };

/// Parses "helstrom" / "homodyne". Throws UnknownKind otherwise.
Metric metric_from_string(const std::string& name);
const char* to_string(Metric metric);

/// Result of a bracketed root solve. When no advantage region exists the
/// solvers return value 0 with no_advantage set instead of failing.
struct ThresholdResult {
  double value = 0.0;
  std::pair<double, double> bracket = {0.0, 0.0};
  int iterations = 0;
  Metric metric = Metric::kHomodyne;
  bool no_advantage = false;
};

/// beta_th = 4N/(4N+1) and beta_opt = N/(2N+1) (noiseless closed forms).
struct BetaClosedForms {
  double beta_th = 0.0;
  double beta_opt = 0.0;
};

/// Labeled dense numeric grid backing one figure panel. `values` is stored
/// row-major over the axes in order (axis 0 slowest, last axis fastest);
/// its length equals the product of the grid sizes. Metadata rows record
/// fixed parameters and tolerances as ordered key/value pairs.
struct ScanTable {
  std::vector<std::string> axis_names;
  std::vector<std::vector<double>> axis_grids;
  std::vector<double> values;
  std::vector<std::pair<std::string, std::string>> metadata;

  std::size_t expected_size() const {
    std::size_t n = 1;
    for (const auto& g : axis_grids) n *= g.size();
    return n;
  }
};

/// Numeric knobs shared by the scan drivers and threshold solvers.
struct ScanSettings {
  CutoffPolicy cutoff;
  int quad_start = 16;  ///< starting Gauss-Hermite node count
};

/// Noiseless pure-seed Helstrom bound,
/// P = (1 - sqrt(1 - e^{-E}))/2 with
/// E = 4N(1-beta)(1 + 2 N beta + 2 sqrt(N beta (1 + N beta))),
/// evaluated in the cancellation-free form e^{-E}/(2(1+sqrt(1-e^{-E}))).
double helstrom_pure(const ChannelBudget& budget);

BetaClosedForms beta_closed_forms(double energy);

/// Largest beta in (0,1) with P(beta) = P(0) for the chosen metric, by
/// coarse scan plus bisection on P(beta) - P(0) (bracket width 1e-9). The
/// helstrom metric routes through the closed form at sigma=0, mu=1 and
/// through the Fock oracle (build, dephase, trace distance) otherwise.
/// Returns value 0 with no_advantage if P(beta) < P(0) never happens.
ThresholdResult beta_threshold_numeric(double energy, const PhaseNoise& noise,
                                       double purity, Metric metric,
                                       const ScanSettings& settings = {});

/// Small-beta slope integral
/// g(N; sigma) = Int dphi G_sigma(phi) e^{-2N cos^2 phi} cos(2phi) cos(phi) / sqrt(pi);
/// at sigma = 0 returns e^{-2N}/sqrt(pi) exactly. Positive g means squeezing
/// reduces the error probability to lowest order in beta.
double g_function(double energy, double sigma,
                  const QuadratureRule& rule = QuadratureRule::gauss_hermite(16));

/// Largest sigma below which squeezing still helps: for mu = 1 the largest
/// zero of g(N; sigma); for mu < 1 the sign change of the numeric small-beta
/// slope of the homodyne error probability (central differences in
/// sqrt(beta)). Bracket laddered from 0.25 by factors of 1.5 up to sigma = 8;
/// beyond that |g| falls below double precision and no threshold is
/// resolvable.
///
/// Throws BracketingFailed if no sign change is found on (0, 8] (this is a
/// real feature of the model: for N below about 1.53 at mu = 1 the slope
/// integral stays positive for every sigma, so no threshold exists).
ThresholdResult sigma_threshold(double energy, double purity);

/// Fills the dataset behind one figure panel. Known ids: fig1-left,
/// fig1-right, fig2-left, fig2-right, fig3, fig4-left, fig4-right,
/// fig5-left, fig5-right. Throws UnknownKind for anything else.
/// Grid points with an infeasible (beta, mu) combination are recorded as NaN.
ScanTable scan(const std::string& figure_id, const ScanSettings& settings = {});

/// Valid figure ids accepted by scan, in presentation order.
const std::vector<std::string>& figure_ids();

namespace detail {

/// Numeric-slope route of sigma_threshold, valid for any admissible purity
/// including mu = 1 (used to cross-validate the g-function route).
ThresholdResult sigma_threshold_slope(double energy, double purity);

}  // namespace detail

}  // namespace sqpsk

#endif  // SQPSK_ANALYSIS_HPP
