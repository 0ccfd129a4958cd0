#include "sqpsk/fock.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <sstream>
#include <vector>

#include "sqpsk/errors.hpp"

namespace sqpsk {

namespace {

constexpr int kGuardBand = 8;
constexpr double kGuardTol = 1e-9;

// Annihilation operator on a dim-dimensional truncated Fock space.
Eigen::MatrixXd annihilation(int dim) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
  for (int n = 0; n + 1 < dim; ++n) a(n, n + 1) = std::sqrt(double(n + 1));
  return a;
}

// Thermal-state diagonal p_n = N_th^n / (1+N_th)^{n+1}; the (un-summed)
// geometric tail is exactly the truncation deficit we account for.
Eigen::VectorXd thermal_diagonal(double n_th, int dim) {
  Eigen::VectorXd p(dim);
  const double ratio = n_th / (1.0 + n_th);
  double value = 1.0 / (1.0 + n_th);
  for (int n = 0; n < dim; ++n) {
    p(n) = value;
    value *= ratio;
  }
  return p;
}

// Builds the state at a fixed reported dimension `dim`, working in a padded
// dimension so the truncated-exponential edge artifacts never reach the
// reported block.
Eigen::MatrixXd build_fixed(const SeedState& seed, int sign, int dim) {
  const int pad = std::max(32, dim);
  const int work = dim + pad;

  const Eigen::MatrixXd a = annihilation(work);
  const Eigen::MatrixXd ad = a.transpose();

  // U = D(sign*alpha) S(r), both generators real anti-symmetric.
  const Eigen::MatrixXd gen_d = (sign * seed.alpha) * (ad - a);
  const Eigen::MatrixXd gen_s = 0.5 * seed.squeezing * (a * a - ad * ad);
  const Eigen::MatrixXd u = Eigen::MatrixXd(gen_d.exp()) * Eigen::MatrixXd(gen_s.exp());

  // Unitarity guard over the top-left (work - band) block.
  const int guarded = work - kGuardBand;
  const double defect = (u.transpose() * u - Eigen::MatrixXd::Identity(work, work))
                            .topLeftCorner(guarded, guarded)
                            .cwiseAbs()
                            .maxCoeff();
  if (!(defect < kGuardTol)) {
    std::ostringstream msg;
    msg << "unitarity defect " << defect << " exceeds " << kGuardTol
        << " on the top-left " << guarded << " block";
    throw UnitarityGuardFailed(msg.str());
  }

  const Eigen::MatrixXd rho_work =
      u * thermal_diagonal(seed.thermal_photons, work).asDiagonal() * u.transpose();
  return rho_work.topLeftCorner(dim, dim);
}

}  // namespace

int cutoff_start(const SeedState& seed) {
  const double vx = (2.0 * seed.thermal_photons + 1.0) * std::exp(-2.0 * seed.squeezing);
  const double vp = (2.0 * seed.thermal_photons + 1.0) * std::exp(2.0 * seed.squeezing);
  const double mean = energy_of(seed);
  const double var = (vx * vx + vp * vp - 2.0) / 8.0 + seed.alpha * seed.alpha * vx;
  return static_cast<int>(std::ceil(mean + 10.0 * std::sqrt(std::max(var, 0.0)) + 20.0));
}

FockDensityMatrix build_state_fixed(const SeedState& seed, int sign, int dim) {
  FockDensityMatrix out;
  out.entries = build_fixed(seed, sign, dim).cast<std::complex<double>>();
  // Hermitian exactly, not just to round-off.
  out.entries = 0.5 * (out.entries + out.entries.adjoint()).eval();
  return out;
}

FockDensityMatrix build_state(const SeedState& seed, int sign,
                              const CutoffPolicy& cutoff) {
  int dim = std::min(cutoff_start(seed), cutoff.hard_max);
  for (;;) {
    FockDensityMatrix out = build_state_fixed(seed, sign, dim);
    if (out.tail() < cutoff.target_tail) return out;
    if (dim >= cutoff.hard_max) {
      std::ostringstream msg;
      msg << "tail mass " << out.tail() << " at hard_max dimension "
          << cutoff.hard_max << " still above target " << cutoff.target_tail;
      throw CutoffExceeded(msg.str());
    }
    dim = std::min(2 * dim, cutoff.hard_max);
  }
}

FockDensityMatrix dephase(const FockDensityMatrix& rho, double sigma) {
  const int dim = rho.dimension();
  FockDensityMatrix out;
  out.entries.resize(dim, dim);
  const double half_s2 = 0.5 * sigma * sigma;
  for (int n = 0; n < dim; ++n) {
    for (int m = 0; m < dim; ++m) {
      const double d = double(n - m);
      out.entries(n, m) = (n == m) ? rho.entries(n, m)
                                   : rho.entries(n, m) * std::exp(-d * d * half_s2);
    }
  }
  return out;
}

double trace_distance(const FockDensityMatrix& rho1,
                      const FockDensityMatrix& rho2) {
  if (rho1.dimension() != rho2.dimension()) {
    std::ostringstream msg;
    msg << "dimension mismatch: " << rho1.dimension() << " vs " << rho2.dimension();
    throw DimensionMismatch(msg.str());
  }
  const Eigen::MatrixXcd diff = rho1.entries - rho2.entries;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(diff,
                                                         Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

double helstrom_mixed(const FockDensityMatrix& rho1,
                      const FockDensityMatrix& rho2) {
  return 0.5 * (1.0 - trace_distance(rho1, rho2));
}

double homodyne_pdf_fock(const FockDensityMatrix& rho, double x) {
  const int dim = rho.dimension();
  // Hermite functions phi_k(y), y = x/sqrt(2); psi_k(x) = 2^{-1/4} phi_k(y).
  const double y = x / std::sqrt(2.0);
  Eigen::VectorXd psi(dim);
  double prev = 0.0;
  double cur = std::pow(M_PI, -0.25) * std::exp(-0.5 * y * y);
  for (int k = 0; k < dim; ++k) {
    psi(k) = std::pow(2.0, -0.25) * cur;
    const double next =
        y * std::sqrt(2.0 / (k + 1)) * cur - std::sqrt(double(k) / (k + 1)) * prev;
    prev = cur;
    cur = next;
  }
  // v' rho v is real for Hermitian rho and real v; the imaginary parts of
  // symmetric entry pairs cancel, so only Re(rho) contributes.
  return psi.dot(rho.entries.real() * psi);
}

}  // namespace sqpsk
