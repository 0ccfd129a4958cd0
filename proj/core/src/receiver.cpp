#include "sqpsk/receiver.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include "sqpsk/errors.hpp"

namespace sqpsk {

namespace {

constexpr int kMinNodes = 16;
constexpr int kMaxNodes = 1024;
constexpr int kMinPanels = 64;
constexpr int kMaxPanels = 4096;
constexpr double kQuadTol = 1e-10;
// exp(-x^2/2) < 1e-18 beyond this; truncation point of the wrapped sums.
constexpr double kTailCut = 9.0986;

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

const QuadratureRule& cached_gauss_hermite(int n) {
  static std::mutex mutex;
  static std::map<int, QuadratureRule> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, QuadratureRule::gauss_hermite(n)).first;
  return it->second;
}

}  // namespace

QuadratureRule QuadratureRule::gauss_hermite(int n) {
  if (n < kMinNodes || n > kMaxNodes || !is_power_of_two(n)) {
    std::ostringstream msg;
    msg << "gauss-hermite node count " << n << " must be a power of two in ["
        << kMinNodes << ", " << kMaxNodes << "]";
    throw std::invalid_argument(msg.str());
  }
  // Jacobi matrix for e^{-t^2}: zero diagonal, off-diagonal sqrt(k/2).
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd off(n - 1);
  for (int k = 1; k < n; ++k) off(k - 1) = std::sqrt(0.5 * k);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);

  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = solver.eigenvalues()(i);
    const double v0 = solver.eigenvectors()(0, i);
    rule.weights[i] = v0 * v0;
    sum += rule.weights[i];
  }
  for (double& w : rule.weights) w /= sum;
  return rule;
}

namespace detail {

double wrapped_normal_density(double phi, double sigma) {
  if (sigma >= 1.0) {
    // theta series: (1 + 2 sum_k e^{-k^2 s^2/2} cos(k phi)) / (2 pi)
    const int kmax = static_cast<int>(std::ceil(kTailCut / sigma)) + 1;
    double s = 1.0;
    for (int k = 1; k <= kmax; ++k)
      s += 2.0 * std::exp(-0.5 * k * k * sigma * sigma) * std::cos(k * phi);
    return s / (2.0 * M_PI);
  }
  // image sum: sum_j N(phi + 2 pi j; 0, sigma^2)
  const int jmax =
      static_cast<int>(std::ceil((kTailCut * sigma + M_PI) / (2.0 * M_PI))) + 1;
  double s = 0.0;
  for (int j = -jmax; j <= jmax; ++j) {
    const double u = (phi + 2.0 * M_PI * j) / sigma;
    s += std::exp(-0.5 * u * u);
  }
  return s / (sigma * std::sqrt(2.0 * M_PI));
}

double phase_average(const std::function<double(double)>& f, double sigma,
                     int start_nodes) {
  if (sigma == 0.0) return f(0.0);

  // Gauss-Hermite ladder.
  const double scale = std::sqrt(2.0) * sigma;
  bool have_prev = false;
  double prev = 0.0;
  for (int n = start_nodes; n <= kMaxNodes; n *= 2) {
    const QuadratureRule& rule = cached_gauss_hermite(n);
    double val = 0.0;
    for (int i = 0; i < n; ++i) val += rule.weights[i] * f(scale * rule.nodes[i]);
    if (have_prev && std::abs(val - prev) < kQuadTol) return val;
    prev = val;
    have_prev = true;
  }

  // The Gaussian average of a 2pi-periodic integrand equals its average
  // against the wrapped normal on [-pi, pi); midpoint-rule ladder on that
  // exactly equivalent form (handles the large-sigma regimes where the
  // Hermite nodes alias the periodicity).
  have_prev = false;
  prev = 0.0;
  for (int m = kMinPanels; m <= kMaxPanels; m *= 2) {
    const double h = 2.0 * M_PI / m;
    double val = 0.0;
    for (int i = 0; i < m; ++i) {
      const double phi = -M_PI + (i + 0.5) * h;
      val += wrapped_normal_density(phi, sigma) * f(phi);
    }
    val *= h;
    if (have_prev && std::abs(val - prev) < kQuadTol) return val;
    prev = val;
    have_prev = true;
  }

  std::ostringstream msg;
  msg << "phase average did not converge to " << kQuadTol << " at sigma=" << sigma
      << " (Gauss-Hermite to " << kMaxNodes << " nodes, wrapped midpoint to "
      << kMaxPanels << " panels)";
  throw QuadratureNotConverged(msg.str());
}

}  // namespace detail

double error_probability_pure(const ChannelBudget& budget) {
  const double n = budget.energy;
  const double beta = budget.squeezing_fraction;
  const double alpha = std::sqrt(std::max(n * (1.0 - beta), 0.0));
  const double sigma_q = 1.0 / (std::sqrt(n * beta) + std::sqrt(1.0 + n * beta));
  return 0.5 * std::erfc(std::sqrt(2.0) * alpha / sigma_q);
}

double error_probability(const ChannelBudget& budget, double purity,
                         const PhaseNoise& noise, const QuadratureRule& rule) {
  const SeedState seed = budget_to_seed(budget, purity);
  const auto integrand = [&seed](double phi) {
    const QuadratureStats stats = rotated_quadrature_stats(seed, phi, +1);
    return 0.5 * std::erfc(stats.mean / std::sqrt(2.0 * stats.variance));
  };
  return detail::phase_average(integrand, noise.sigma, rule.size());
}

AsymptoticKind asymptotic_kind_from_string(const std::string& name) {
  if (name == "helstrom-cs") return AsymptoticKind::kHelstromCoherent;
  if (name == "helstrom-dss") return AsymptoticKind::kHelstromSqueezed;
  if (name == "homodyne-cs") return AsymptoticKind::kHomodyneCoherent;
  if (name == "homodyne-dss") return AsymptoticKind::kHomodyneSqueezed;
  if (name == "advantage-ratio") return AsymptoticKind::kAdvantageRatio;
  throw UnknownKind("unknown asymptotic kind '" + name +
                    "' (expected helstrom-cs, helstrom-dss, homodyne-cs, "
                    "homodyne-dss or advantage-ratio)");
}

double asymptotic_error(AsymptoticKind kind, double energy) {
  const double n = energy;
  switch (kind) {
    case AsymptoticKind::kHelstromCoherent:
      return 0.25 * std::exp(-4.0 * n);
    case AsymptoticKind::kHelstromSqueezed:
      return 0.25 * std::exp(-4.0 * n * (n + 1.0));
    case AsymptoticKind::kHomodyneCoherent:
      return 0.25 * std::sqrt(2.0 / M_PI) * std::exp(-2.0 * n) / std::sqrt(n);
    case AsymptoticKind::kHomodyneSqueezed:
      // Leading order of erfc(sqrt(2 N (N+1)))/2: the erfc argument at
      // beta_opt is sqrt(2 N (N+1)), giving e^{-2N(N+1)} over
      // sqrt(N(N+1)); this is the asymptote the N >= 4 ratio checks pin.
      return 0.25 * std::sqrt(2.0 / M_PI) * std::exp(-2.0 * n * (n + 1.0)) /
             std::sqrt(n * (n + 1.0));
    case AsymptoticKind::kAdvantageRatio:
      return 1.0 - std::exp(-4.0 * n * n);
  }
  throw UnknownKind("unhandled asymptotic kind");
}

double asymptotic_error(const std::string& kind, double energy) {
  return asymptotic_error(asymptotic_kind_from_string(kind), energy);
}

}  // namespace sqpsk
