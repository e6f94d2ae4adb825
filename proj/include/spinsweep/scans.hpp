#pragma once

#include <vector>

#include "spinsweep/heisenberg.hpp"
#include "spinsweep/ising_adiabatic.hpp"
#include "spinsweep/ising_dynamics.hpp"
#include "spinsweep/stability.hpp"

namespace spinsweep {

/// Bisection on |dg/dt| until the numeric excitation probability of the
/// sweep g0 -> g1 hits p_target (relative tolerance on p). Returns the
/// tuned schedule. The regime-3 inversion seeds the bracket.
FieldSchedule tune_rate_for_target(const IsingParams& params, double g0, double g1,
                                   double p_target, const IntegratorOptions& opts,
                                   double rel_tol = 1e-3, const Units& units = {},
                                   int threads = 0);

struct DurationScanPoint {
    int n_sites = 0;
    double duration = 0.0;
    double rate = 0.0;
    double p_e = 0.0;
};

/// Fig.-6-style scan: duration for p_E = p_target per chain size.
std::vector<DurationScanPoint> duration_scan(const std::vector<int>& sizes, double g0,
                                             double g1, double p_target,
                                             const IntegratorOptions& opts,
                                             const Units& units = {}, int threads = 0);

struct RateScanPoint {
    double rate = 0.0;
    ExcitationReport report;
    double pe_bound = 0.0;          // adiabatic-approximation sum
    double mean_energy_bound = 0.0;  // sum of 2 J Lambda_n p0n_bound
};

/// Fig.-5-style scan of a fixed g0 -> g1 ramp over change rates.
std::vector<RateScanPoint> rate_scan(const IsingParams& params, double g0, double g1,
                                     const std::vector<double>& rates,
                                     const IntegratorOptions& opts,
                                     const Units& units = {}, int threads = 0);

struct G1ScanPoint {
    double g1 = 0.0;
    double p_numeric = 0.0;   // sum of p_{0->n} from the mode dynamics
    double p_exact = 0.0;     // 1 - survival
    double pe_bound = 0.0;    // pe_sum
    double pe_r1 = 0.0, pe_r2 = 0.0, pe_r3 = 0.0;  // NaN when not applicable
};

/// Fig.-4-style scan over the final field at fixed change rate.
std::vector<G1ScanPoint> g1_scan(const IsingParams& params, double g0,
                                 const std::vector<double>& g1_values, double rate,
                                 const IntegratorOptions& opts, const Units& units = {},
                                 int threads = 0);

struct EpsilonScanPoint {
    int n_sites = 0;
    double epsilon = 0.0;
    PerturbedIsingResult result;
};

/// Stability scan of the perturbed Ising heating law over (N, eps).
std::vector<EpsilonScanPoint> epsilon_scan(const std::vector<int>& sizes,
                                           const std::vector<double>& epsilons,
                                           const FieldSchedule& schedule,
                                           const IntegratorOptions& opts,
                                           const Units& units = {}, int threads = 0);

struct HeisenbergScanPoint {
    int n_sites = 0;
    double alpha = 0.0;  // change rate (g1 - g0)/T
    double p_numeric = 0.0;
    double p_estimate = 0.0;  // closed form
    Validity validity = Validity::valid;
};

/// Figs.-7/8-style scans over change rate and chain size.
std::vector<HeisenbergScanPoint> heisenberg_scan(
    const HeisenbergParams& base, double g0, double g1,
    const std::vector<int>& sizes, const std::vector<double>& alphas,
    const IntegratorOptions& opts, const Units& units = {}, int threads = 0);

}  // namespace spinsweep
