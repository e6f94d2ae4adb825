#pragma once

#include <vector>

#include "spinsweep/ising_exact.hpp"
#include "spinsweep/params.hpp"

namespace spinsweep {

/// d theta_k / ds of the Bogoliubov angle along the ramp,
///   theta'_k(s) = (dg/ds) sin(2 pi k/N) / (1 + g^2 + 2 g cos(2 pi k/N)).
double theta_prime(int k, double g, int n_sites, double dg_ds);

/// Coupling matrix element <n(s)| dH/ds |vac(s)> = -J Lambda_n theta'_n.
double channel_matrix_element(int n, double s, const IsingParams& params,
                              const FieldSchedule& schedule);

/// First-order excitation estimate for channel n,
///   p_{0->n} <~ (hbar^2 / (16 J^2 T^2)) max_s |theta'_n / Lambda_n|^2.
/// The maximum is taken on a 2001-point s-grid refined by golden-section
/// search around the grid argmax.
double p0n_bound(int n, const IsingParams& params, const FieldSchedule& schedule,
                 const Units& units = {});

/// Sum of the per-channel estimates over n = 1..(N-1)/2.
double pe_sum(const IsingParams& params, const FieldSchedule& schedule,
              const Units& units = {}, int threads = 0);

/// The three closed-form regimes for the overall excitation probability.
/// R1: g0 >> 1, g1 > 1, N (g1 - 1) >> 1   (sum -> integral)
/// R2: g0 >> 1, g1 > 1, N (g1 - 1) << 1
/// R3: g0 >> 1, g1 <= 1
enum class Regime { r1, r2, r3 };

const char* to_string(Regime r);

struct RegimeEstimate {
    Regime regime = Regime::r3;
    double p_e = 0.0;
    Validity validity = Validity::valid;
};

/// Evaluates one closed form. Hard constraint violations (wrong side of
/// g1 = 1, nonpositive duration) make the estimate invalid and throw unless
/// override_validity is set; graded ">> / <<" predicates only flag.
RegimeEstimate pe_regime(Regime regime, const IsingParams& params,
                         const FieldSchedule& schedule, const Units& units = {},
                         bool override_validity = false);

RegimeEstimate pe_regime1(const IsingParams& params, const FieldSchedule& schedule,
                          const Units& units = {}, bool override_validity = false);
RegimeEstimate pe_regime2(const IsingParams& params, const FieldSchedule& schedule,
                          const Units& units = {}, bool override_validity = false);
RegimeEstimate pe_regime3(const IsingParams& params, const FieldSchedule& schedule,
                          const Units& units = {}, bool override_validity = false);

/// Invert the selected regime formula for the sweep duration that reaches
/// a target excitation probability.
double duration_for_target(double p_target, Regime regime, const IsingParams& params,
                           double g0, double g1, const Units& units = {});

}  // namespace spinsweep
