// Acceptance harness for the discrimination library: eight numbered criteria,
// each printed as a single [PASS]/[FAIL] line with its measured margins.
// Tolerances are pinned here, next to each check. Run with no arguments for
// the full gate, or with `--criterion k` for a single criterion.
//
// Exit code: number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sqpsk/analysis.hpp"
#include "sqpsk/errors.hpp"
#include "sqpsk/fock.hpp"
#include "sqpsk/gaussian.hpp"
#include "sqpsk/receiver.hpp"

#include "support/oracles.hpp"

using namespace sqpsk;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// ---------------------------------------------------------------------------
// criterion 1: closed-form anchors (tolerance 1e-9 absolute, runtime < 1 ms)
// ---------------------------------------------------------------------------
bool criterion_1() {
  constexpr double kTol = 1e-9;
  constexpr double kMaxSeconds = 1e-3;

  const auto start = Clock::now();
  const double h_cs = helstrom_pure({1.0, 0.0});
  const double h_dss = helstrom_pure({1.0, 1.0 / 3.0});
  const double p_cs = error_probability_pure({1.0, 0.0});
  const double p_dss = error_probability_pure({1.0, 1.0 / 3.0});
  const double elapsed = seconds_since(start);

  // Anchor values evaluated independently from the defining expressions
  // (1 - sqrt(1 - e^{-E}))/2 and erfc(sqrt(2) alpha / Sigma)/2.
  const double err[] = {std::abs(h_cs - 0.004600070369588705),
                        std::abs(h_dss - 8.387269160403665e-05),
                        std::abs(p_cs - 0.022750131948179195),
                        std::abs(p_dss - 0.002338867490523633)};
  double worst = 0.0;
  for (double e : err) worst = std::max(worst, e);

  const bool pass = worst < kTol && elapsed < kMaxSeconds;
  std::printf("[%s] criterion 1: closed-form anchors (max |error| %.3g, "
              "limit %.0e; %.3g ms)\n",
              pass ? "PASS" : "FAIL", worst, kTol, 1e3 * elapsed);
  return pass;
}

// ---------------------------------------------------------------------------
// criterion 2: noiseless threshold identity beta_th = 4N/(4N+1)
// (tolerance 1e-6, runtime < 1 s)
// ---------------------------------------------------------------------------
bool criterion_2() {
  constexpr double kTol = 1e-6;
  constexpr double kMaxSeconds = 1.0;

  const auto start = Clock::now();
  double worst = 0.0;
  for (double n : {0.25, 0.5, 1.0, 2.0, 5.0}) {
    const ThresholdResult res =
        beta_threshold_numeric(n, {0.0}, 1.0, Metric::kHelstrom);
    worst = std::max(worst, std::abs(res.value - 4.0 * n / (4.0 * n + 1.0)));
  }
  const double elapsed = seconds_since(start);

  const bool pass = worst < kTol && elapsed < kMaxSeconds;
  std::printf("[%s] criterion 2: threshold identity 4N/(4N+1) (max |error| "
              "%.3g, limit %.0e; %.3g s)\n",
              pass ? "PASS" : "FAIL", worst, kTol, elapsed);
  return pass;
}

// ---------------------------------------------------------------------------
// criterion 3: closed forms vs Fock oracles on 27 parameter triples
// (tolerance 1e-6, runtime < 60 s at cutoff tail 1e-12)
// ---------------------------------------------------------------------------
bool criterion_3() {
  constexpr double kTol = 1e-6;
  constexpr double kMaxSeconds = 60.0;

  const auto start = Clock::now();
  double worst_helstrom = 0.0;
  double worst_homodyne = 0.0;
  int triples = 0;

  for (double n : {0.5, 1.0, 2.0}) {
    const BetaClosedForms forms = beta_closed_forms(n);
    for (double beta : {0.0, forms.beta_opt, 0.8 * forms.beta_th}) {
      const SeedState seed = budget_to_seed({n, beta}, 1.0);
      const FockDensityMatrix plus = build_state(seed, +1);
      const FockDensityMatrix minus = build_state(seed, -1);
      for (double sigma : {0.0, 0.2, 0.5}) {
        ++triples;
        const FockDensityMatrix rho_minus = dephase(minus, sigma);
        if (sigma == 0.0) {
          const double oracle = helstrom_mixed(dephase(plus, sigma), rho_minus);
          worst_helstrom =
              std::max(worst_helstrom, std::abs(helstrom_pure({n, beta}) - oracle));
        }
        // Error probability as the half-line mass of the wrong-symbol pdf.
        const double v_max = (2.0 * seed.thermal_photons + 1.0) *
                             std::exp(2.0 * seed.squeezing);
        const double x_hi = 2.0 * seed.alpha + 12.0 * std::sqrt(v_max) + 2.0;
        const double oracle = testing::half_line_pdf_integral(rho_minus, x_hi);
        worst_homodyne = std::max(
            worst_homodyne,
            std::abs(error_probability({n, beta}, 1.0, {sigma}) - oracle));
      }
    }
  }
  const double elapsed = seconds_since(start);

  const bool pass =
      worst_helstrom < kTol && worst_homodyne < kTol && elapsed < kMaxSeconds;
  std::printf("[%s] criterion 3: Fock-oracle equivalence on %d triples "
              "(helstrom max %.3g, homodyne max %.3g, limit %.0e; %.3g s)\n",
              pass ? "PASS" : "FAIL", triples, worst_helstrom, worst_homodyne,
              kTol, elapsed);
  return pass;
}

// ---------------------------------------------------------------------------
// criterion 4: homodyne never beats the Helstrom bound on the fig3 grid
// (slack 1e-6, runtime < 120 s)
// ---------------------------------------------------------------------------
bool criterion_4() {
  constexpr double kSlack = 1e-6;
  constexpr double kMaxSeconds = 120.0;

  const auto start = Clock::now();
  const ScanTable table = scan("fig3");
  const std::size_t cols = table.axis_grids[2].size();
  double worst = 1.0;  // most negative homodyne - helstrom margin
  int points = 0;
  for (std::size_t block = 0; block < table.axis_grids[0].size(); ++block) {
    const std::size_t base = block * 4 * cols;
    for (std::size_t j = 0; j < cols; ++j) {
      // quantity rows: 0 homodyne-dss, 1 helstrom-dss, 2 homodyne-cs,
      // 3 helstrom-cs.
      const double margins[] = {
          table.values[base + 0 * cols + j] - table.values[base + 1 * cols + j],
          table.values[base + 2 * cols + j] - table.values[base + 3 * cols + j]};
      for (double m : margins) {
        worst = std::min(worst, m);
        ++points;
      }
    }
  }
  const double elapsed = seconds_since(start);

  const bool pass = worst >= -kSlack && elapsed < kMaxSeconds;
  std::printf("[%s] criterion 4: measurement-bound ordering on %d fig3 pairs "
              "(min margin %.3g, slack %.0e; %.3g s)\n",
              pass ? "PASS" : "FAIL", points, worst, kSlack, elapsed);
  return pass;
}

// ---------------------------------------------------------------------------
// criterion 5: squeezed homodyne beats the coherent Helstrom bound at small
// sigma, and the homodyne-to-Helstrom gap closes as sigma grows
// ---------------------------------------------------------------------------
bool criterion_5() {
  bool pass = true;

  // (a) P_homodyne(DSS) < P_helstrom(coherent) at sigma in {0.01, 0.05}.
  for (double n : {1.0, 2.0}) {
    const double beta_opt = beta_closed_forms(n).beta_opt;
    const SeedState coherent = budget_to_seed({n, 0.0}, 1.0);
    const FockDensityMatrix plus = build_state(coherent, +1);
    const FockDensityMatrix minus = build_state(coherent, -1);
    for (double sigma : {0.01, 0.05}) {
      const double p_dss = error_probability({n, beta_opt}, 1.0, {sigma});
      const double h_cs =
          helstrom_mixed(dephase(plus, sigma), dephase(minus, sigma));
      if (!(p_dss < h_cs)) pass = false;
    }
  }

  // (b) relative gap (P - H)/H for the squeezed encoding shrinks from
  // sigma = 0.1 to sigma = 1.0.
  double gap_small = 0.0, gap_large = 0.0;
  for (double n : {1.0, 2.0}) {
    const double beta_opt = beta_closed_forms(n).beta_opt;
    const SeedState seed = budget_to_seed({n, beta_opt}, 1.0);
    const FockDensityMatrix plus = build_state(seed, +1);
    const FockDensityMatrix minus = build_state(seed, -1);
    double gaps[2];
    double abs_gaps[2];
    const double sigmas[2] = {0.1, 1.0};
    for (int k = 0; k < 2; ++k) {
      const double p = error_probability({n, beta_opt}, 1.0, {sigmas[k]});
      const double h =
          helstrom_mixed(dephase(plus, sigmas[k]), dephase(minus, sigmas[k]));
      abs_gaps[k] = p - h;
      gaps[k] = (p - h) / h;
    }
    if (n == 1.0) {
      gap_small = gaps[0];
      gap_large = gaps[1];
    }
    if (!(gaps[1] < gaps[0])) pass = false;
    std::printf("    N=%g: gap (P-H)/H %.3g -> %.3g (absolute %.3g -> %.3g) "
                "from sigma 0.1 -> 1.0\n",
                n, gaps[0], gaps[1], abs_gaps[0], abs_gaps[1]);
  }

  std::printf("[%s] criterion 5: squeezed homodyne vs coherent Helstrom "
              "(sign checks at sigma {0.01,0.05}; relative gap %.3g -> %.3g)\n",
              pass ? "PASS" : "FAIL", gap_small, gap_large);
  return pass;
}

// ---------------------------------------------------------------------------
// criterion 6: g-function anchors and the documented small-beta slope
// relation slope = -g(N;sigma) sqrt(N) (relative tolerance 1e-3)
// ---------------------------------------------------------------------------
bool criterion_6() {
  bool pass = true;

  const double g_noiseless = g_function(1.0, 0.0);
  const double err_a = std::abs(g_noiseless - std::exp(-2.0) / std::sqrt(M_PI));
  if (!(err_a < 1e-10)) pass = false;
  std::printf("    (a) g(1,0) vs e^{-2}/sqrt(pi): |error| %.3g (limit 1e-10)\n",
              err_a);

  const double g_washed = std::abs(g_function(1.0, 50.0));
  if (!(g_washed < 1e-4)) pass = false;
  std::printf("    (b) |g(1,50)|: %.3g (limit 1e-4)\n", g_washed);

  // (c) finite-difference slope of P in sqrt(beta) at beta = 1e-6 against
  // the documented relation -g(N;sigma) sqrt(N).
  struct Point {
    double n, sigma;
  };
  for (const Point& pt : {Point{1.0, 0.1}, Point{2.0, 0.2}}) {
    const double s0 = 1e-3;  // sqrt(beta) at beta = 1e-6
    const double h = 1e-4;
    const double up = error_probability({pt.n, (s0 + h) * (s0 + h)}, 1.0, {pt.sigma});
    const double dn = error_probability({pt.n, (s0 - h) * (s0 - h)}, 1.0, {pt.sigma});
    const double slope = (up - dn) / (2.0 * h);
    const double documented = -g_function(pt.n, pt.sigma) * std::sqrt(pt.n);
    const double ratio = slope / documented;
    const double scaled = slope / (documented * std::sqrt(2.0 * pt.n));
    if (!(std::abs(ratio - 1.0) < 1e-3)) pass = false;
    std::printf("    (c) N=%g sigma=%g: slope/(-g sqrt(N)) = %.6g "
                "(needs 1 +- 1e-3); slope/(-g sqrt(2) N) = %.6g\n",
                pt.n, pt.sigma, ratio, scaled);
  }

  std::printf("[%s] criterion 6: g-function anchors and slope relation\n",
              pass ? "PASS" : "FAIL");
  return pass;
}

// ---------------------------------------------------------------------------
// criterion 7: large-N asymptotics (ratio window [0.9, 1.1]; advantage ratio
// within 1e-6)
// ---------------------------------------------------------------------------
bool criterion_7() {
  bool pass = true;
  double ratio_lo = 1.0, ratio_hi = 1.0, worst_adv = 0.0;

  for (double n : {4.0, 6.0, 8.0}) {
    const double beta_opt = beta_closed_forms(n).beta_opt;
    const double ratios[] = {
        helstrom_pure({n, 0.0}) / asymptotic_error("helstrom-cs", n),
        helstrom_pure({n, beta_opt}) / asymptotic_error("helstrom-dss", n),
        error_probability_pure({n, 0.0}) / asymptotic_error("homodyne-cs", n),
        error_probability_pure({n, beta_opt}) /
            asymptotic_error("homodyne-dss", n)};
    for (double r : ratios) {
      ratio_lo = std::min(ratio_lo, r);
      ratio_hi = std::max(ratio_hi, r);
      if (!(r > 0.9 && r < 1.1)) pass = false;
    }
    const double implied = 1.0 - asymptotic_error("helstrom-dss", n) /
                                     asymptotic_error("helstrom-cs", n);
    const double err = std::abs(implied - asymptotic_error("advantage-ratio", n));
    worst_adv = std::max(worst_adv, err);
    if (!(err < 1e-6)) pass = false;
  }

  std::printf("[%s] criterion 7: asymptotic ratios in [0.9, 1.1] "
              "(observed [%.4f, %.4f]); advantage ratio |error| %.3g "
              "(limit 1e-6)\n",
              pass ? "PASS" : "FAIL", ratio_lo, ratio_hi, worst_adv);
  return pass;
}

// ---------------------------------------------------------------------------
// criterion 8: module invariants (semigroup, trace/diagonal preservation,
// positivity, pdf normalization, cutoff doubling, loss identity, round trip)
// ---------------------------------------------------------------------------
bool criterion_8() {
  bool pass = true;
  const auto report = [&pass](const char* name, bool ok, double measure,
                              double limit) {
    if (!ok) pass = false;
    std::printf("    %-28s %s (measure %.3g, limit %.0e)\n", name,
                ok ? "ok" : "FAILED", measure, limit);
  };

  const SeedState seed = budget_to_seed({2.0, 0.4}, 0.8);
  const FockDensityMatrix rho = build_state(seed, +1);

  // Dephasing semigroup: two steps compose in quadrature.
  {
    const FockDensityMatrix twice = dephase(dephase(rho, 0.33), 0.44);
    const FockDensityMatrix once = dephase(rho, std::hypot(0.33, 0.44));
    const double diff = (twice.entries - once.entries).cwiseAbs().maxCoeff();
    report("semigroup composition", diff < 1e-12, diff, 1e-12);
  }

  // Trace and diagonal preservation under dephasing.
  {
    const FockDensityMatrix out = dephase(rho, 0.7);
    double diag_diff = std::abs(out.trace() - rho.trace());
    for (int n = 0; n < rho.dimension(); ++n)
      diag_diff = std::max(diag_diff, std::abs(out.entries(n, n) - rho.entries(n, n)));
    report("trace/diagonal preserved", diag_diff == 0.0, diag_diff, 0.0);
  }

  // Positivity of built and dephased states.
  {
    double min_eig = 0.0;
    for (double sigma : {0.0, 0.5, 2.0}) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
          dephase(rho, sigma).entries, Eigen::EigenvaluesOnly);
      min_eig = std::min(min_eig, solver.eigenvalues().minCoeff());
    }
    report("positive semidefinite", min_eig > -1e-10, min_eig, 1e-10);
  }

  // Homodyne pdf normalization (dephased DSS at N=1, beta=1/3, sigma=0.5;
  // [-12, 12] comfortably covers its anti-squeezed spread).
  {
    const FockDensityMatrix blurred =
        dephase(build_state(budget_to_seed({1.0, 1.0 / 3.0}, 1.0), +1), 0.5);
    const double step = 0.01;
    double integral = 0.0;
    for (double x = -12.0; x < 12.0 - 0.5 * step; x += step) {
      integral += 0.5 * step *
                  (homodyne_pdf_fock(blurred, x) + homodyne_pdf_fock(blurred, x + step));
    }
    report("pdf normalization", std::abs(integral - 1.0) < 1e-8,
           std::abs(integral - 1.0), 1e-8);
  }

  // Cutoff-doubling stability, at the dimension the tail policy accepts.
  {
    const int dim = rho.dimension();
    const FockDensityMatrix a1 = build_state_fixed(seed, +1, dim);
    const FockDensityMatrix b1 = build_state_fixed(seed, -1, dim);
    const FockDensityMatrix a2 = build_state_fixed(seed, +1, 2 * dim);
    const FockDensityMatrix b2 = build_state_fixed(seed, -1, 2 * dim);
    const double diff =
        std::abs(helstrom_mixed(a1, b1) - helstrom_mixed(a2, b2));
    report("cutoff-doubling stability", diff < 1e-8, diff, 1e-8);
  }

  // loss_map identity at unit transmissivity.
  {
    double worst = 0.0;
    for (double r : {0.0, 0.5, 1.5, 3.0}) {
      const LossResult out = loss_map({r, 1.0});
      worst = std::max(worst, std::abs(out.purity - 1.0));
      worst = std::max(worst, std::abs(out.squeezing - r));
    }
    report("loss identity at eta = 1", worst < 1e-12, worst, 1e-12);
  }

  // Budget / energy round trip.
  {
    double worst = 0.0;
    for (double n : {0.1, 1.0, 5.0, 10.0}) {
      for (double beta : {0.0, 0.3, 0.9}) {
        for (double mu : {1.0, 0.7}) {
          if (mu <= admissible_purity_min(n)) continue;
          try {
            const double back = energy_of(budget_to_seed({n, beta}, mu));
            worst = std::max(worst, std::abs(back - n) / n);
          } catch (const EnergyBudgetExceeded&) {
            // infeasible corner; not part of the identity
          }
        }
      }
    }
    report("budget round trip", worst < 1e-12, worst, 1e-12);
  }

  std::printf("[%s] criterion 8: module invariant suite\n",
              pass ? "PASS" : "FAIL");
  return pass;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
      if (only < 1 || only > 8) {
        std::fprintf(stderr, "error: --criterion expects a number in [1, 8]\n");
        return 64;
      }
    } else {
      std::fprintf(stderr, "usage: %s [--criterion k]\n", argv[0]);
      return 64;
    }
  }

  bool (*const criteria[])() = {criterion_1, criterion_2, criterion_3,
                                criterion_4, criterion_5, criterion_6,
                                criterion_7, criterion_8};
  int failures = 0;
  for (int k = 1; k <= 8; ++k) {
    if (only != 0 && k != only) continue;
    if (!criteria[k - 1]()) ++failures;
  }
  if (only == 0) {
    std::printf("%d of 8 criteria failed\n", failures);
  }
  return failures;
}
