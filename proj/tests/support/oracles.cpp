#include "oracles.hpp"

#include <cmath>
#include <complex>

#include "sqpsk/receiver.hpp"

namespace sqpsk::testing {

std::vector<double> squeezed_vacuum_amplitudes(double r, int dim) {
  std::vector<double> c(dim, 0.0);
  c[0] = 1.0 / std::sqrt(std::cosh(r));
  const double t = std::tanh(r);
  for (int n = 0; n + 2 < dim; n += 2)
    c[n + 2] = -t * std::sqrt(double(n + 1) / double(n + 2)) * c[n];
  return c;
}

double g_bessel_series(double energy, double sigma) {
  const auto damp = [sigma](int a) {
    return std::exp(-0.5 * double(a) * double(a) * sigma * sigma);
  };
  double total = std::cyl_bessel_i(0.0, energy) * (damp(3) + damp(1));
  double sign = -1.0;
  for (int k = 1; k <= 64; ++k, sign = -sign) {
    const double term = std::cyl_bessel_i(double(k), energy) *
                        (damp(2 * k - 3) + damp(2 * k + 3) + damp(2 * k - 1) +
                         damp(2 * k + 1));
    total += sign * term;
    if (std::abs(term) < 1e-300) break;
  }
  return std::exp(-energy) / (2.0 * std::sqrt(M_PI)) * total;
}

KrausLossResult kraus_loss(double r_tilde, double eta, int dim) {
  // Pure squeezed vacuum from the recurrence (independent of build_state).
  const std::vector<double> c = squeezed_vacuum_amplitudes(r_tilde, dim);
  Eigen::MatrixXd rho(dim, dim);
  for (int n = 0; n < dim; ++n)
    for (int m = 0; m < dim; ++m) rho(n, m) = c[n] * c[m];

  // Amplitude-damping Kraus operators K_k: <n-k|K_k|n> =
  // sqrt(C(n,k) eta^{n-k} (1-eta)^k).
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) {
    Eigen::MatrixXd kraus = Eigen::MatrixXd::Zero(dim, dim);
    for (int n = k; n < dim; ++n) {
      double log_binom = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                         std::lgamma(n - k + 1.0);
      kraus(n - k, n) = std::exp(0.5 * (log_binom + (n - k) * std::log(eta) +
                                        k * std::log1p(-eta)));
    }
    out += kraus * rho * kraus.transpose();
    if (eta == 1.0) break;  // log1p(-1) would be -inf; only K_0 survives
  }

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
  for (int n = 0; n + 1 < dim; ++n) a(n, n + 1) = std::sqrt(double(n + 1));
  const Eigen::MatrixXd x = a + a.transpose();
  // p = -i(a - a+) is real-antisymmetric, so compute <p^2> = -(a-a+)^2.
  const Eigen::MatrixXd p2 = -(a - a.transpose()) * (a - a.transpose());

  KrausLossResult result;
  result.purity = (out * out).trace();
  result.var_x = (out * x * x).trace();
  result.var_p = (out * p2).trace();
  return result;
}

Eigen::MatrixXcd gh_phase_mixture(const Eigen::MatrixXcd& rho, double sigma) {
  const QuadratureRule rule = QuadratureRule::gauss_hermite(1024);
  const int dim = static_cast<int>(rho.rows());
  Eigen::MatrixXcd mix = Eigen::MatrixXcd::Zero(dim, dim);
  for (int i = 0; i < rule.size(); ++i) {
    const double phi = std::sqrt(2.0) * sigma * rule.nodes[i];
    Eigen::VectorXcd u(dim);
    for (int n = 0; n < dim; ++n)
      u(n) = std::exp(std::complex<double>(0.0, -phi * n));
    // (U rho U+)_{nm} = u_n conj(u_m) rho_{nm} for diagonal U.
    mix += rule.weights[i] * rho.cwiseProduct(u * u.adjoint());
  }
  return mix;
}

double half_line_pdf_integral(const FockDensityMatrix& rho, double x_hi) {
  // 32-node Gauss-Legendre rule on [-1, 1] by Golub-Welsch.
  constexpr int kNodes = 32;
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(kNodes);
  Eigen::VectorXd off(kNodes - 1);
  for (int k = 1; k < kNodes; ++k)
    off(k - 1) = k / std::sqrt(4.0 * k * k - 1.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);

  const int panels = static_cast<int>(std::ceil(x_hi)) + 1;
  const double width = x_hi / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = p * width;
    for (int i = 0; i < kNodes; ++i) {
      const double t = solver.eigenvalues()(i);
      const double w = 2.0 * solver.eigenvectors()(0, i) * solver.eigenvectors()(0, i);
      const double x = lo + 0.5 * width * (t + 1.0);
      total += 0.5 * width * w * homodyne_pdf_fock(rho, x);
    }
  }
  return total;
}

double pure_trace_distance(double exponent) {
  return std::sqrt(1.0 - std::exp(-exponent));
}

}  // namespace sqpsk::testing
