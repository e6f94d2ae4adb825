#include "spinsweep/scans.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace spinsweep {

FieldSchedule tune_rate_for_target(const IsingParams& params, double g0, double g1,
                                   double p_target, const IntegratorOptions& opts,
                                   double rel_tol, const Units& units, int threads) {
    params.validate();
    if (!(p_target > 0 && p_target < 1))
        throw ValidationError("p_target must lie in (0, 1)");

    auto pe_at_rate = [&](double rate_mag) {
        FieldSchedule s = FieldSchedule::from_rate(g0, g1, g1 > g0 ? rate_mag : -rate_mag);
        ExcitationReport rep = sweep_report(params, s, opts, units, threads);
        return rep.p_total;
    };

    // Seed from the closed-form inversion: faster ramps excite more, so
    // p(rate) is monotone increasing in the rate magnitude.
    Regime regime = g1 <= 1.0 ? Regime::r3 : Regime::r1;
    double t_guess = duration_for_target(p_target, regime, params, g0, g1, units);
    double r_guess = std::abs(g1 - g0) / t_guess;

    double lo = r_guess, hi = r_guess;
    double p_lo = pe_at_rate(lo);
    int guard = 0;
    while (p_lo > p_target && ++guard < 60) {
        lo *= 0.5;
        p_lo = pe_at_rate(lo);
    }
    double p_hi = pe_at_rate(hi);
    guard = 0;
    while (p_hi < p_target && ++guard < 60) {
        hi *= 2.0;
        p_hi = pe_at_rate(hi);
    }
    if (p_lo > p_target || p_hi < p_target)
        throw NumericalError("rate bracket not found for p_target at N = " +
                             std::to_string(params.n_sites));

    double mid = std::sqrt(lo * hi), p_mid = 0.0;
    for (int it = 0; it < 200; ++it) {
        mid = std::sqrt(lo * hi);
        p_mid = pe_at_rate(mid);
        if (std::abs(p_mid - p_target) <= rel_tol * p_target) break;
        if (p_mid < p_target)
            lo = mid;
        else
            hi = mid;
    }
    return FieldSchedule::from_rate(g0, g1, g1 > g0 ? mid : -mid);
}

std::vector<DurationScanPoint> duration_scan(const std::vector<int>& sizes, double g0,
                                             double g1, double p_target,
                                             const IntegratorOptions& opts,
                                             const Units& units, int threads) {
    std::vector<DurationScanPoint> out;
    for (int n : sizes) {
        IsingParams params{n, 1.0, g0};
        FieldSchedule s =
            tune_rate_for_target(params, g0, g1, p_target, opts, 1e-3, units, threads);
        ExcitationReport rep = sweep_report(params, s, opts, units, threads);
        out.push_back({n, s.duration, s.rate(), rep.p_total});
    }
    return out;
}

std::vector<RateScanPoint> rate_scan(const IsingParams& params, double g0, double g1,
                                     const std::vector<double>& rates,
                                     const IntegratorOptions& opts, const Units& units,
                                     int threads) {
    std::vector<RateScanPoint> out(rates.size());
    for (std::size_t i = 0; i < rates.size(); ++i) {
        FieldSchedule s = FieldSchedule::from_rate(g0, g1, rates[i]);
        RateScanPoint pt;
        pt.rate = rates[i];
        pt.report = sweep_report(params, s, opts, units, threads);
        pt.pe_bound = pe_sum(params, s, units, threads);
        for (int n = 1; n <= (params.n_sites - 1) / 2; ++n)
            pt.mean_energy_bound += 2.0 * params.coupling *
                                    lambda_even(n, g1, params.n_sites) *
                                    p0n_bound(n, params, s, units);
        out[i] = std::move(pt);
    }
    return out;
}

std::vector<G1ScanPoint> g1_scan(const IsingParams& params, double g0,
                                 const std::vector<double>& g1_values, double rate,
                                 const IntegratorOptions& opts, const Units& units,
                                 int threads) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<G1ScanPoint> out(g1_values.size());
    for (std::size_t i = 0; i < g1_values.size(); ++i) {
        const double g1 = g1_values[i];
        G1ScanPoint pt;
        pt.g1 = g1;
        if (g1 == g0) {
            pt.pe_r1 = pt.pe_r2 = pt.pe_r3 = nan;
            out[i] = pt;
            continue;
        }
        FieldSchedule s = FieldSchedule::from_rate(g0, g1, rate);
        ExcitationReport rep = sweep_report(params, s, opts, units, threads);
        pt.p_numeric = rep.p_total;
        pt.p_exact = rep.p_exact;
        pt.pe_bound = pe_sum(params, s, units, threads);
        pt.pe_r1 = g1 > 1.0 ? pe_regime1(params, s, units, true).p_e : nan;
        pt.pe_r2 = g1 >= 1.0 ? pe_regime2(params, s, units, true).p_e : nan;
        pt.pe_r3 = g1 <= 1.0 ? pe_regime3(params, s, units, true).p_e : nan;
        out[i] = std::move(pt);
    }
    return out;
}

std::vector<EpsilonScanPoint> epsilon_scan(const std::vector<int>& sizes,
                                           const std::vector<double>& epsilons,
                                           const FieldSchedule& schedule,
                                           const IntegratorOptions& opts,
                                           const Units& units, int threads) {
    std::vector<EpsilonScanPoint> out;
    for (int n : sizes) {
        IsingParams params{n, 1.0, schedule.g_start};
        for (double eps : epsilons) {
            EpsilonScanPoint pt;
            pt.n_sites = n;
            pt.epsilon = eps;
            pt.result =
                ising_perturbed_sweep(params, schedule, eps, opts, units, threads);
            out.push_back(std::move(pt));
        }
    }
    return out;
}

std::vector<HeisenbergScanPoint> heisenberg_scan(
    const HeisenbergParams& base, double g0, double g1, const std::vector<int>& sizes,
    const std::vector<double>& alphas, const IntegratorOptions& opts,
    const Units& units, int threads) {
    (void)threads;
    std::vector<HeisenbergScanPoint> out;
    for (int n : sizes) {
        HeisenbergParams params = base;
        params.n_sites = n;
        params.field = g0;
        for (double alpha : alphas) {
            FieldSchedule s = FieldSchedule::from_rate(g0, g1, alpha);
            HeisenbergScanPoint pt;
            pt.n_sites = n;
            pt.alpha = alpha;
            HeisenbergSweepResult res = tdse_sweep(params, s, opts, units);
            pt.p_numeric = res.p_e;
            PeEstimate est = pe_heisenberg(params, s, units);
            pt.p_estimate = est.p_e;
            pt.validity = est.validity;
            out.push_back(std::move(pt));
        }
    }
    return out;
}

}  // namespace spinsweep
