#pragma once

#include <complex>
#include <vector>

#include "spinsweep/ising_exact.hpp"
#include "spinsweep/params.hpp"

namespace spinsweep {

/// Dynamical state of a field sweep: one complex two-level amplitude pair
/// per momentum pair n = 1..(N-1)/2, expressed in the fixed fermion-pair
/// basis {empty pair, doubly occupied pair}. a[i], b[i] hold channel n=i+1.
struct ModeAmplitudes {
    int n_sites = 0;
    double s = 0.0;  // schedule position the amplitudes refer to
    std::vector<std::complex<double>> a, b;

    int channels() const { return int(a.size()); }
    double norm_error() const;  // max_n | |a|^2 + |b|^2 - 1 |
};

/// Integrate the sweep: every pair evolves under the traceless generator
///   H_n(g) = -2J [ (g + cos k) tau_z + sin k tau_x ],  k = 2 pi n / N,
/// whose gap is 2 J Lambda_n(g) and whose ground eigenvector is the
/// Bogoliubov rotation by theta_n(g) of the fixed basis. Starts from the
/// instantaneous ground state at g_start. Pairs are independent, so the
/// loop over n is an OpenMP map; results do not depend on the thread count.
ModeAmplitudes evolve_sweep(const IsingParams& params, const FieldSchedule& schedule,
                            const IntegratorOptions& opts, const Units& units = {},
                            int threads = 0);

/// Serial reference for the parallel map above (identical arithmetic).
ModeAmplitudes evolve_sweep_serial(const IsingParams& params,
                                   const FieldSchedule& schedule,
                                   const IntegratorOptions& opts,
                                   const Units& units = {});

/// Continue an existing amplitude state through another leg (used by the
/// round trip); initial amplitudes are taken as-is.
void evolve_leg(ModeAmplitudes& amps, const IsingParams& params,
                const FieldSchedule& schedule, const IntegratorOptions& opts,
                const Units& units = {}, int threads = 0);

/// Excitation probability per channel: squared overlap with the
/// instantaneous excited eigenvector at g_final. Index i holds n = i+1.
std::vector<double> extract_p0n(const ModeAmplitudes& amps,
                                const IsingParams& params, double g_final);

struct EnergyStats {
    double mean_above_ground = 0.0;  // <H> - E0, units J
    double variance = 0.0;           // units J^2
    double width = 0.0;              // spectrum width J * sum_k Lambda_k
};

EnergyStats mean_energy(const ModeAmplitudes& amps, const IsingParams& params,
                        double g_final);

/// Survival probability of the g_start ground state after sweeping
/// g0 -> g1 -> g0 (the mirrored leg reuses the duration of the up leg).
double round_trip_check(const IsingParams& params, const FieldSchedule& up_leg,
                        const IntegratorOptions& opts, const Units& units = {},
                        int threads = 0);

/// One reported excitation channel; channels are reshuffled so that lower
/// index means lower excitation energy at g_end.
struct ChannelReport {
    int rank = 0;         // 0 = lowest excitation energy
    int mode = 0;         // raw momentum-pair index n
    double energy = 0.0;  // 2 J Lambda_n(g_end), units J
    double p = 0.0;       // p_{0 -> n}
};

struct ExcitationReport {
    FieldSchedule schedule;
    std::vector<ChannelReport> channels;
    double p_total = 0.0;       // sum of p_{0->n}
    double p_exact = 0.0;       // 1 - prod(1 - p_n), exact survival deficit
    bool p_total_clamped = false;  // flagged when the sum exceeds 1
    EnergyStats energy;
    double norm_error = 0.0;
};

ExcitationReport sweep_report(const IsingParams& params, const FieldSchedule& schedule,
                              const IntegratorOptions& opts, const Units& units = {},
                              int threads = 0);

}  // namespace spinsweep
