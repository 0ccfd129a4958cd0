#ifndef SQPSK_FOCK_HPP
#define SQPSK_FOCK_HPP

#include <Eigen/Dense>

#include "sqpsk/gaussian.hpp"

namespace sqpsk {

/// Controls the truncation search in build_state: the Fock dimension is
/// doubled until the diagonal tail mass drops below target_tail, up to
/// hard_max.
struct CutoffPolicy {
  double target_tail = 1e-12;
  int hard_max = 512;
};

/// Truncated number-basis density matrix. Hermitian by construction; the
/// trace falls short of 1 by the (recorded, never renormalized) tail mass.
struct FockDensityMatrix {
  Eigen::MatrixXcd entries;

  int dimension() const { return static_cast<int>(entries.rows()); }
  double trace() const { return entries.trace().real(); }
  /// Truncation tail mass, 1 - trace.
  double tail() const { return 1.0 - trace(); }
};

/// Number of Fock-space trials the cutoff search will start from for a
/// given seed: ceil(mean + 10*sqrt(variance) + 20) of the photon-number
/// distribution.
int cutoff_start(const SeedState& seed);

/// Builds D(s*alpha) S(r) nu(N_th) S+(r) D+(s*alpha) in a truncated Fock
/// space, where s is `sign`, S(r) = exp(r(a^2 - a+^2)/2) squeezes the x
/// quadrature and nu is the thermal state. The displacement and squeeze
/// exponentials are evaluated by scaling-and-squaring in a padded working
/// dimension (reported dimension + max(32, dimension)) and the product state
/// is truncated back, which keeps the boundary rows free of truncation
/// artifacts. The reported dimension is the smallest start-guess doubling
/// whose diagonal tail mass is below cutoff.target_tail.
///
/// Throws CutoffExceeded if cutoff.hard_max still leaves too much tail, and
/// UnitarityGuardFailed if ||U+U - I||_max over the top-left
/// (working - guard band) block exceeds 1e-9 (guard band 8).
FockDensityMatrix build_state(const SeedState& seed, int sign,
                              const CutoffPolicy& cutoff = {});

/// Fixed-dimension variant of build_state: same padded construction and
/// unitarity guard, truncated at exactly `dim` rows with no tail search.
/// Intended for truncation-stability checks (compare dim against 2*dim).
FockDensityMatrix build_state_fixed(const SeedState& seed, int sign, int dim);

/// Gaussian phase diffusion of strength sigma in the number basis:
/// rho_{n,m} <- exp(-(n-m)^2 sigma^2 / 2) rho_{n,m}. Trace and diagonal are
/// preserved exactly; dephase(s1) then dephase(s2) equals
/// dephase(sqrt(s1^2+s2^2)).
FockDensityMatrix dephase(const FockDensityMatrix& rho, double sigma);

/// Trace distance D = (1/2) sum_i |lambda_i(rho1 - rho2)| via a Hermitian
/// eigensolver (eigenvalues only).
///
/// Throws DimensionMismatch if the operands differ in dimension.
double trace_distance(const FockDensityMatrix& rho1,
                      const FockDensityMatrix& rho2);

/// Minimum discrimination error for equal priors: (1 - trace_distance)/2.
double helstrom_mixed(const FockDensityMatrix& rho1,
                      const FockDensityMatrix& rho2);

/// Homodyne probability density sum_{n,m} psi_n(x) psi_m(x) rho_{n,m} with
/// psi_n(x) = (2 pi)^{-1/4} (2^n n!)^{-1/2} H_n(x/sqrt(2)) e^{-x^2/4}
/// (x = a + a+ convention, vacuum variance 1); Hermite-function values by
/// stable upward recurrence.
double homodyne_pdf_fock(const FockDensityMatrix& rho, double x);

}  // namespace sqpsk

#endif  // SQPSK_FOCK_HPP
