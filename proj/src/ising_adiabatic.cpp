#include "spinsweep/ising_adiabatic.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace spinsweep {

namespace {

constexpr double kPi = std::numbers::pi;

Validity grade_much_greater(double value, double threshold = 1.0) {
    if (value >= 10.0 * threshold) return Validity::valid;
    if (value > threshold) return Validity::marginal;
    return Validity::invalid;
}

Validity grade_much_less(double value, double threshold = 1.0) {
    if (value <= 0.1 * threshold) return Validity::valid;
    if (value < 10.0 * threshold) return Validity::marginal;
    return Validity::invalid;
}

Validity combine(Validity a, Validity b) {
    if (a == Validity::invalid || b == Validity::invalid) return Validity::invalid;
    if (a == Validity::marginal || b == Validity::marginal) return Validity::marginal;
    return Validity::valid;
}

}  // namespace

const char* to_string(Regime r) {
    switch (r) {
        case Regime::r1: return "R1";
        case Regime::r2: return "R2";
        case Regime::r3: return "R3";
    }
    return "?";
}

double theta_prime(int k, double g, int n_sites, double dg_ds) {
    if (k <= 0 || k >= n_sites)
        throw ValidationError("theta_prime: need 0 < k < N");
    const double kt = 2.0 * kPi * double(k) / double(n_sites);
    return dg_ds * std::sin(kt) / (1.0 + g * g + 2.0 * g * std::cos(kt));
}

double channel_matrix_element(int n, double s, const IsingParams& params,
                              const FieldSchedule& schedule) {
    params.validate();
    const double g = schedule.g_at(s);
    return -params.coupling * lambda_even(n, g, params.n_sites) *
           theta_prime(n, g, params.n_sites, schedule.dg_ds());
}

double p0n_bound(int n, const IsingParams& params, const FieldSchedule& schedule,
                 const Units& units) {
    params.validate();
    schedule.validate();
    const int N = params.n_sites;
    if (n < 1 || n > (N - 1) / 2)
        throw ValidationError("p0n_bound: channel out of range");

    auto ratio2 = [&](double s) {
        const double g = schedule.g_at(s);
        const double tp = theta_prime(n, g, N, schedule.dg_ds());
        const double lam = lambda_even(n, g, N);
        const double r = tp / lam;
        return r * r;
    };

    const int grid = 2001;
    double best = 0.0;
    int best_i = 0;
    for (int i = 0; i < grid; ++i) {
        const double v = ratio2(double(i) / double(grid - 1));
        if (v > best) {
            best = v;
            best_i = i;
        }
    }
    const double lo = std::max(0.0, double(best_i - 1) / double(grid - 1));
    const double hi = std::min(1.0, double(best_i + 1) / double(grid - 1));
    best = std::max(best, golden_max(ratio2, lo, hi));

    const double pref = units.hbar / (4.0 * params.coupling * schedule.duration);
    return pref * pref * best;
}

double pe_sum(const IsingParams& params, const FieldSchedule& schedule,
              const Units& units, int threads) {
    const int channels = (params.n_sites - 1) / 2;
    std::vector<double> p(static_cast<std::size_t>(channels), 0.0);
    const int nt = resolve_threads(threads);
#pragma omp parallel for schedule(static) num_threads(nt) if (nt > 1)
    for (int n = 1; n <= channels; ++n)
        p[std::size_t(n - 1)] = p0n_bound(n, params, schedule, units);
    double sum = 0.0;  // ordered reduction keeps results thread-count independent
    for (double v : p) sum += v;
    return sum;
}

RegimeEstimate pe_regime(Regime regime, const IsingParams& params,
                         const FieldSchedule& schedule, const Units& units,
                         bool override_validity) {
    params.validate();
    schedule.validate();
    const double g0 = schedule.g_start, g1 = schedule.g_end;
    const double N = double(params.n_sites);
    const double hbar_over_jt =
        units.hbar / (params.coupling * schedule.duration);
    const double base = hbar_over_jt * hbar_over_jt * (g0 - g1) * (g0 - g1);

    RegimeEstimate est;
    est.regime = regime;
    Validity hard = Validity::valid;
    switch (regime) {
        case Regime::r1:
            if (g1 <= 1.0) hard = Validity::invalid;
            est.validity = combine(grade_much_greater(g0),
                                   grade_much_greater(N * (g1 - 1.0)));
            if (hard != Validity::invalid)
                est.p_e = base / 256.0 * N /
                          ((g1 * g1 - 1.0) * (g1 * g1 - 1.0) * (g1 * g1 - 1.0));
            break;
        case Regime::r2:
            // g1 = 1 is admitted as the shared boundary with R3.
            if (g1 < 1.0) hard = Validity::invalid;
            est.validity = combine(grade_much_greater(g0),
                                   grade_much_less(N * (g1 - 1.0)));
            est.p_e = base / (64.0 * kPi * kPi * kPi * kPi) * (4.0 - 3.0 * g1) *
                      N * N * N * N;
            break;
        case Regime::r3:
            if (g1 > 1.0) hard = Validity::invalid;
            est.validity = grade_much_greater(g0);
            est.p_e = base / (64.0 * kPi * kPi * kPi * kPi) * N * N * N * N;
            break;
    }
    if (hard == Validity::invalid) {
        est.validity = Validity::invalid;
        if (!override_validity)
            throw ValidationError(std::string("regime ") + to_string(regime) +
                                  " does not apply to these endpoints");
    }
    return est;
}

RegimeEstimate pe_regime1(const IsingParams& p, const FieldSchedule& s,
                          const Units& u, bool o) {
    return pe_regime(Regime::r1, p, s, u, o);
}
RegimeEstimate pe_regime2(const IsingParams& p, const FieldSchedule& s,
                          const Units& u, bool o) {
    return pe_regime(Regime::r2, p, s, u, o);
}
RegimeEstimate pe_regime3(const IsingParams& p, const FieldSchedule& s,
                          const Units& u, bool o) {
    return pe_regime(Regime::r3, p, s, u, o);
}

double duration_for_target(double p_target, Regime regime, const IsingParams& params,
                           double g0, double g1, const Units& units) {
    params.validate();
    if (!(p_target > 0.0 && p_target < 1.0))
        throw ValidationError("p_target must lie in (0, 1)");
    const double N = double(params.n_sites);
    const double pref = units.hbar / params.coupling;
    const double dg = std::abs(g0 - g1);
    switch (regime) {
        case Regime::r1: {
            if (g1 <= 1.0)
                throw ValidationError("regime R1 requires g1 > 1");
            const double cube = (g1 * g1 - 1.0) * (g1 * g1 - 1.0) * (g1 * g1 - 1.0);
            return pref / 16.0 * dg * std::sqrt(N / (p_target * cube));
        }
        case Regime::r2:
            if (g1 <= 1.0)
                throw ValidationError("regime R2 requires g1 > 1");
            return pref / (8.0 * kPi * kPi) * dg * N * N *
                   std::sqrt((4.0 - 3.0 * g1) / p_target);
        case Regime::r3:
            if (g1 > 1.0)
                throw ValidationError("regime R3 requires g1 <= 1");
            return pref / (8.0 * kPi * kPi) * dg * N * N / std::sqrt(p_target);
    }
    throw ValidationError("unknown regime");
}

}  // namespace spinsweep
