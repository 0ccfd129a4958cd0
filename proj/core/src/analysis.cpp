#include "sqpsk/analysis.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>

#include "sqpsk/errors.hpp"
#include "sqpsk/version.hpp"

namespace sqpsk {

namespace {

constexpr double kRootTol = 1e-9;  // absolute, on the independent variable

// sqrt(beta) base point and step of the numeric small-beta slope. The step
// bias of the slope is O(sqrt(beta)), so the base point must sit well below
// the 1e-4 agreement budget between this route and the g-function route.
constexpr double kSlopeBase = 1e-5;
constexpr double kSlopeStep = 1e-6;

double quiet_nan() { return std::numeric_limits<double>::quiet_NaN(); }

// Largest feasible squeezing fraction: alpha^2 >= 0.
double beta_feasibility_bound(double energy, double purity) {
  if (purity >= 1.0) return 1.0;
  const double n_th = (1.0 - purity) / (2.0 * purity);
  return (energy - n_th) / (energy * (1.0 + 2.0 * n_th));
}

// P(beta) for the chosen metric at fixed (N, sigma, mu).
std::function<double(double)> metric_error(double energy, const PhaseNoise& noise,
                                           double purity, Metric metric,
                                           const ScanSettings& settings) {
  if (metric == Metric::kHomodyne) {
    const QuadratureRule rule = QuadratureRule::gauss_hermite(settings.quad_start);
    return [energy, noise, purity, rule](double beta) {
      return error_probability({energy, beta}, purity, noise, rule);
    };
  }
  if (noise.sigma == 0.0 && purity == 1.0) {
    return [energy](double beta) { return helstrom_pure({energy, beta}); };
  }
  return [energy, noise, purity, settings](double beta) {
    const SeedState seed = budget_to_seed({energy, beta}, purity);
    const FockDensityMatrix plus =
        dephase(build_state(seed, +1, settings.cutoff), noise.sigma);
    const FockDensityMatrix minus =
        dephase(build_state(seed, -1, settings.cutoff), noise.sigma);
    return helstrom_mixed(plus, minus);
  };
}

std::vector<double> ratio_grid(long num0, long dnum, int count, double denom) {
  std::vector<double> grid(count);
  for (int i = 0; i < count; ++i) grid[i] = double(num0 + i * dnum) / denom;
  return grid;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void append_numeric_metadata(ScanTable& table, const ScanSettings& settings) {
  table.metadata.emplace_back("tool-version", kVersion);
  table.metadata.emplace_back("cutoff-tail", format_double(settings.cutoff.target_tail));
  table.metadata.emplace_back("cutoff-hard-max", std::to_string(settings.cutoff.hard_max));
  table.metadata.emplace_back("quad-start", std::to_string(settings.quad_start));
  table.metadata.emplace_back("quad-tol", "1e-10");
  table.metadata.emplace_back("root-tol", "1e-9");
}

}  // namespace

Metric metric_from_string(const std::string& name) {
  if (name == "helstrom") return Metric::kHelstrom;
  if (name == "homodyne") return Metric::kHomodyne;
  throw UnknownKind("unknown metric '" + name + "' (expected helstrom or homodyne)");
}

const char* to_string(Metric metric) {
  return metric == Metric::kHelstrom ? "helstrom" : "homodyne";
}

double helstrom_pure(const ChannelBudget& budget) {
  const double n = budget.energy;
  const double beta = budget.squeezing_fraction;
  const double n_sq = n * beta;
  const double exponent =
      4.0 * n * (1.0 - beta) * (1.0 + 2.0 * n_sq + 2.0 * std::sqrt(n_sq * (1.0 + n_sq)));
  const double overlap_sq = std::exp(-exponent);  // |<psi_+|psi_->|^2
  // (1 - sqrt(1 - q))/2 without the cancellation that flushes to 0 for
  // exponents beyond ~36.
  return 0.5 * overlap_sq / (1.0 + std::sqrt(1.0 - overlap_sq));
}

BetaClosedForms beta_closed_forms(double energy) {
  BetaClosedForms forms;
  forms.beta_th = 4.0 * energy / (4.0 * energy + 1.0);
  forms.beta_opt = energy / (2.0 * energy + 1.0);
  return forms;
}

ThresholdResult beta_threshold_numeric(double energy, const PhaseNoise& noise,
                                       double purity, Metric metric,
                                       const ScanSettings& settings) {
  const auto error_at = metric_error(energy, noise, purity, metric, settings);
  const double beta_max = beta_feasibility_bound(energy, purity);
  const double p0 = error_at(0.0);

  // Coarse scan on a feasibility-relative grid; the top end (alpha = 0)
  // always evaluates to 1/2 >= p0, so the largest crossing-if-any is found
  // by walking down from there for the first strictly-negative neighbor.
  constexpr int kCoarse = 50;
  std::vector<double> f(kCoarse + 1);
  f[0] = 0.0;  // P(0) - P(0), the trivial root
  for (int i = 1; i <= kCoarse; ++i)
    f[i] = error_at(beta_max * i / kCoarse) - p0;

  int upper = -1;
  for (int i = kCoarse; i >= 1; --i) {
    if (f[i] >= 0.0 && f[i - 1] < 0.0) {
      upper = i;
      break;
    }
  }

  ThresholdResult result;
  result.metric = metric;
  if (upper < 0) {
    result.no_advantage = true;
    return result;
  }

  double lo = beta_max * (upper - 1) / kCoarse;  // f(lo) < 0
  double hi = beta_max * upper / kCoarse;        // f(hi) >= 0
  int iterations = 0;
  while (hi - lo > kRootTol) {
    const double mid = 0.5 * (lo + hi);
    ++iterations;
    if (error_at(mid) - p0 >= 0.0)
      hi = mid;
    else
      lo = mid;
  }
  result.value = 0.5 * (lo + hi);
  result.bracket = {lo, hi};
  result.iterations = iterations;
  return result;
}

double g_function(double energy, double sigma, const QuadratureRule& rule) {
  const double inv_sqrt_pi = 1.0 / std::sqrt(M_PI);
  const auto integrand = [energy, inv_sqrt_pi](double phi) {
    const double c = std::cos(phi);
    return std::exp(-2.0 * energy * c * c) * std::cos(2.0 * phi) * c * inv_sqrt_pi;
  };
  return detail::phase_average(integrand, sigma, rule.size());
}

namespace {

// Shared bracket-ladder + bisection on a decreasing advantage indicator
// (positive = squeezing helps). Ladder 0.25 * 1.5^k capped at 8, with a
// final probe exactly at 8.
ThresholdResult solve_sigma_threshold(const std::function<double(double)>& advantage) {
  constexpr double kSigmaCap = 8.0;
  double lo = 0.0;  // advantage(0+) > 0 always: g(N;0) = e^{-2N}/sqrt(pi)
  double hi = -1.0;
  for (double s = 0.25;; s = std::min(s * 1.5, kSigmaCap)) {
    if (advantage(s) <= 0.0) {
      hi = s;
      break;
    }
    lo = s;
    if (s >= kSigmaCap) break;
  }
  if (hi < 0.0) {
    std::ostringstream msg;
    msg << "no sign change of the small-beta advantage on (0, " << kSigmaCap
        << "]: no noise threshold exists at these parameters";
    throw BracketingFailed(msg.str());
  }

  ThresholdResult result;
  result.metric = Metric::kHomodyne;
  int iterations = 0;
  while (hi - lo > kRootTol) {
    const double mid = 0.5 * (lo + hi);
    ++iterations;
    if (advantage(mid) <= 0.0)
      hi = mid;
    else
      lo = mid;
  }
  result.value = 0.5 * (lo + hi);
  result.bracket = {lo, hi};
  result.iterations = iterations;
  return result;
}

}  // namespace

namespace detail {

ThresholdResult sigma_threshold_slope(double energy, double purity) {
  const QuadratureRule rule = QuadratureRule::gauss_hermite(16);
  const auto advantage = [energy, purity, &rule](double sigma) {
    const PhaseNoise noise{sigma};
    const double s_hi = kSlopeBase + kSlopeStep;
    const double s_lo = kSlopeBase - kSlopeStep;
    const double p_hi = error_probability({energy, s_hi * s_hi}, purity, noise, rule);
    const double p_lo = error_probability({energy, s_lo * s_lo}, purity, noise, rule);
    // Negative slope in sqrt(beta) means squeezing reduces the error.
    return -(p_hi - p_lo) / (2.0 * kSlopeStep);
  };
  return solve_sigma_threshold(advantage);
}

}  // namespace detail

ThresholdResult sigma_threshold(double energy, double purity) {
  if (purity >= 1.0) {
    const QuadratureRule rule = QuadratureRule::gauss_hermite(16);
    const auto advantage = [energy, &rule](double sigma) {
      return g_function(energy, sigma, rule);
    };
    return solve_sigma_threshold(advantage);
  }
  // Validate admissibility before the solver starts probing.
  (void)budget_to_seed({energy, 0.0}, purity);
  return detail::sigma_threshold_slope(energy, purity);
}

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids = {
      "fig1-left", "fig1-right", "fig2-left", "fig2-right", "fig3",
      "fig4-left", "fig4-right", "fig5-left", "fig5-right"};
  return ids;
}

namespace {

const std::vector<double> kFigSigmas = {0.1, 0.3, 0.5, 1.0};  // fig2/fig4 families

ScanTable scan_fig1(bool helstrom, const ScanSettings& settings) {
  ScanTable table;
  table.metadata.emplace_back("figure", helstrom ? "fig1-left" : "fig1-right");
  table.metadata.emplace_back("quantity",
                              helstrom ? "p_helstrom_pure" : "p_homodyne_pure");
  table.metadata.emplace_back("mu", "1");
  table.metadata.emplace_back("sigma", "0");
  append_numeric_metadata(table, settings);

  table.axis_names = {"N", "beta"};
  table.axis_grids = {{0.25, 0.5, 1.0, 2.0, 4.0}, ratio_grid(0, 2, 51, 100.0)};
  for (double n : table.axis_grids[0]) {
    for (double beta : table.axis_grids[1]) {
      const ChannelBudget budget{n, beta};
      table.values.push_back(helstrom ? helstrom_pure(budget)
                                      : error_probability_pure(budget));
    }
  }
  return table;
}

ScanTable scan_fig2_left(const ScanSettings& settings) {
  ScanTable table;
  table.metadata.emplace_back("figure", "fig2-left");
  table.metadata.emplace_back("quantity", "p_homodyne");
  table.metadata.emplace_back("mu", "1");
  append_numeric_metadata(table, settings);

  table.axis_names = {"sigma", "N", "beta"};
  table.axis_grids = {kFigSigmas,
                      {0.25, 0.5, 1.0, 2.0, 4.0},
                      ratio_grid(0, 2, 51, 100.0)};
  const QuadratureRule rule = QuadratureRule::gauss_hermite(settings.quad_start);
  for (double sigma : table.axis_grids[0]) {
    for (double n : table.axis_grids[1]) {
      for (double beta : table.axis_grids[2]) {
        table.values.push_back(
            error_probability({n, beta}, 1.0, PhaseNoise{sigma}, rule));
      }
    }
  }
  return table;
}

ScanTable scan_fig2_right(const ScanSettings& settings) {
  ScanTable table;
  table.metadata.emplace_back("figure", "fig2-right");
  table.metadata.emplace_back("quantity", "beta_th");
  table.metadata.emplace_back("metric", "homodyne");
  table.metadata.emplace_back("mu", "1");
  append_numeric_metadata(table, settings);

  table.axis_names = {"N", "sigma"};
  table.axis_grids = {{1.0, 2.0, 4.0}, ratio_grid(0, 25, 61, 1000.0)};
  for (double n : table.axis_grids[0]) {
    for (double sigma : table.axis_grids[1]) {
      const ThresholdResult res = beta_threshold_numeric(
          n, PhaseNoise{sigma}, 1.0, Metric::kHomodyne, settings);
      table.values.push_back(res.value);
    }
  }
  return table;
}

ScanTable scan_fig3(const ScanSettings& settings) {
  ScanTable table;
  table.metadata.emplace_back("figure", "fig3");
  table.metadata.emplace_back("mu", "1");
  table.metadata.emplace_back(
      "quantity-labels", "p_homodyne_dss,p_helstrom_dss,p_homodyne_cs,p_helstrom_cs");
  table.metadata.emplace_back("beta-dss", "beta_opt(N)");
  table.metadata.emplace_back("beta-cs", "0");
  append_numeric_metadata(table, settings);

  table.axis_names = {"N", "quantity", "sigma"};
  table.axis_grids = {{1.0, 2.0}, {0.0, 1.0, 2.0, 3.0}, ratio_grid(0, 5, 31, 100.0)};

  const QuadratureRule rule = QuadratureRule::gauss_hermite(settings.quad_start);
  const auto& sigmas = table.axis_grids[2];
  for (double n : table.axis_grids[0]) {
    const double beta_dss = beta_closed_forms(n).beta_opt;
    for (double beta : {beta_dss, 0.0}) {
      const SeedState seed = budget_to_seed({n, beta}, 1.0);
      const FockDensityMatrix plus = build_state(seed, +1, settings.cutoff);
      const FockDensityMatrix minus = build_state(seed, -1, settings.cutoff);
      // Homodyne row, then Helstrom row for this encoding.
      for (double sigma : sigmas)
        table.values.push_back(
            error_probability({n, beta}, 1.0, PhaseNoise{sigma}, rule));
      for (double sigma : sigmas)
        table.values.push_back(
            helstrom_mixed(dephase(plus, sigma), dephase(minus, sigma)));
    }
  }
  return table;
}

ScanTable scan_fig4_left(const ScanSettings& settings) {
  ScanTable table;
  table.metadata.emplace_back("figure", "fig4-left");
  table.metadata.emplace_back("quantity", "p_homodyne");
  table.metadata.emplace_back("N", "2");
  table.metadata.emplace_back("infeasible", "nan");
  append_numeric_metadata(table, settings);

  table.axis_names = {"sigma", "mu", "beta"};
  table.axis_grids = {kFigSigmas,
                      {0.25, 0.4, 0.6, 0.8, 1.0},
                      ratio_grid(0, 2, 51, 100.0)};
  const QuadratureRule rule = QuadratureRule::gauss_hermite(settings.quad_start);
  for (double sigma : table.axis_grids[0]) {
    for (double mu : table.axis_grids[1]) {
      for (double beta : table.axis_grids[2]) {
        try {
          table.values.push_back(
              error_probability({2.0, beta}, mu, PhaseNoise{sigma}, rule));
        } catch (const EnergyBudgetExceeded&) {
          table.values.push_back(quiet_nan());
        }
      }
    }
  }
  return table;
}

ScanTable scan_fig4_right(const ScanSettings& settings) {
  ScanTable table;
  table.metadata.emplace_back("figure", "fig4-right");
  table.metadata.emplace_back("quantity", "beta_th");
  table.metadata.emplace_back("metric", "homodyne");
  table.metadata.emplace_back("N", "2");
  append_numeric_metadata(table, settings);

  table.axis_names = {"sigma", "mu"};
  table.axis_grids = {kFigSigmas, ratio_grid(22, 2, 40, 100.0)};
  for (double sigma : table.axis_grids[0]) {
    for (double mu : table.axis_grids[1]) {
      const ThresholdResult res = beta_threshold_numeric(
          2.0, PhaseNoise{sigma}, mu, Metric::kHomodyne, settings);
      table.values.push_back(res.value);
    }
  }
  return table;
}

ScanTable scan_fig5_left(const ScanSettings& settings) {
  ScanTable table;
  table.metadata.emplace_back("figure", "fig5-left");
  table.metadata.emplace_back("quantity", "sigma_th");
  append_numeric_metadata(table, settings);

  // The mu domain stays above the divergence of sigma_th(mu) (near 0.81 for
  // N=2), where the threshold ceases to exist.
  table.axis_names = {"N", "mu"};
  table.axis_grids = {{2.0, 3.0}, ratio_grid(840, 5, 33, 1000.0)};
  for (double n : table.axis_grids[0]) {
    for (double mu : table.axis_grids[1]) {
      table.values.push_back(sigma_threshold(n, mu).value);
    }
  }
  return table;
}

ScanTable scan_fig5_right(const ScanSettings& settings) {
  ScanTable table;
  table.metadata.emplace_back("figure", "fig5-right");
  table.metadata.emplace_back("quantity", "g");
  table.metadata.emplace_back("mu", "1");
  append_numeric_metadata(table, settings);

  table.axis_names = {"N", "sigma"};
  table.axis_grids = {{0.5, 1.0, 2.0, 3.0}, ratio_grid(25, 25, 200, 1000.0)};
  const QuadratureRule rule = QuadratureRule::gauss_hermite(settings.quad_start);
  for (double n : table.axis_grids[0]) {
    for (double sigma : table.axis_grids[1]) {
      table.values.push_back(g_function(n, sigma, rule));
    }
  }
  return table;
}

}  // namespace

ScanTable scan(const std::string& figure_id, const ScanSettings& settings) {
  if (figure_id == "fig1-left") return scan_fig1(true, settings);
  if (figure_id == "fig1-right") return scan_fig1(false, settings);
  if (figure_id == "fig2-left") return scan_fig2_left(settings);
  if (figure_id == "fig2-right") return scan_fig2_right(settings);
  if (figure_id == "fig3") return scan_fig3(settings);
  if (figure_id == "fig4-left") return scan_fig4_left(settings);
  if (figure_id == "fig4-right") return scan_fig4_right(settings);
  if (figure_id == "fig5-left") return scan_fig5_left(settings);
  if (figure_id == "fig5-right") return scan_fig5_right(settings);

  std::ostringstream msg;
  msg << "unknown figure id '" << figure_id << "' (expected one of:";
  for (const auto& id : figure_ids()) msg << ' ' << id;
  msg << ')';
  throw UnknownKind(msg.str());
}

}  // namespace sqpsk
