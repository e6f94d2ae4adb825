#include "spinsweep/ising_dynamics.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>

#include "spinsweep/ode.hpp"

namespace spinsweep {

namespace {

using Eigen::Vector2cd;
constexpr double kPi = std::numbers::pi;

struct PairGenerator {
    double cos_k, sin_k, prefactor;  // prefactor = 2 J / hbar
    const FieldSchedule* schedule;
    double duration;

    void operator()(double t, const Vector2cd& y, Vector2cd& dydt) const {
        const double g = schedule->g_at(t / duration);
        // i d/dt psi = -2J [ (g + c) tz + s tx ] psi  (units of hbar)
        const std::complex<double> i_pref(0.0, prefactor);
        dydt[0] = i_pref * ((g + cos_k) * y[0] + sin_k * y[1]);
        dydt[1] = i_pref * (sin_k * y[0] - (g + cos_k) * y[1]);
    }
};

Vector2cd ground_vector(int n, double g, int n_sites) {
    const double th = bogoliubov_angle(n, g, n_sites);
    return Vector2cd(std::cos(0.5 * th), std::sin(0.5 * th));
}

Vector2cd excited_vector(int n, double g, int n_sites) {
    const double th = bogoliubov_angle(n, g, n_sites);
    return Vector2cd(-std::sin(0.5 * th), std::cos(0.5 * th));
}

void evolve_one_mode(int n, Vector2cd& psi, const IsingParams& params,
                     const FieldSchedule& schedule, const IntegratorOptions& opts,
                     const Units& units) {
    const double kt = 2.0 * kPi * double(n) / double(params.n_sites);
    PairGenerator gen{std::cos(kt), std::sin(kt),
                      2.0 * params.coupling / units.hbar, &schedule,
                      schedule.duration};
    try {
        integrate(gen, psi, 0.0, schedule.duration, opts);
    } catch (const NumericalError& e) {
        throw SweepError(e.what(), n);
    }
    const double drift = std::abs(psi.squaredNorm() - 1.0);
    if (drift > 1e-6) throw SweepError("mode norm drift exceeds 1e-6", n);
}

}  // namespace

double ModeAmplitudes::norm_error() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, std::abs(std::norm(a[i]) + std::norm(b[i]) - 1.0));
    return worst;
}

ModeAmplitudes evolve_sweep(const IsingParams& params, const FieldSchedule& schedule,
                            const IntegratorOptions& opts, const Units& units,
                            int threads) {
    params.validate();
    schedule.validate();
    const int channels = (params.n_sites - 1) / 2;
    ModeAmplitudes amps;
    amps.n_sites = params.n_sites;
    amps.s = 1.0;
    amps.a.resize(std::size_t(channels));
    amps.b.resize(std::size_t(channels));

    const int nt = resolve_threads(threads);
    std::exception_ptr failure;
    std::atomic<bool> failed{false};

#pragma omp parallel for schedule(dynamic) num_threads(nt) if (nt > 1)
    for (int n = 1; n <= channels; ++n) {
        if (failed.load(std::memory_order_relaxed)) continue;
        try {
            Vector2cd psi = ground_vector(n, schedule.g_start, params.n_sites);
            evolve_one_mode(n, psi, params, schedule, opts, units);
            amps.a[std::size_t(n - 1)] = psi[0];
            amps.b[std::size_t(n - 1)] = psi[1];
        } catch (...) {
#pragma omp critical
            {
                if (!failed.exchange(true)) failure = std::current_exception();
            }
        }
    }
    if (failure) std::rethrow_exception(failure);
    return amps;
}

ModeAmplitudes evolve_sweep_serial(const IsingParams& params,
                                   const FieldSchedule& schedule,
                                   const IntegratorOptions& opts,
                                   const Units& units) {
    return evolve_sweep(params, schedule, opts, units, 1);
}

void evolve_leg(ModeAmplitudes& amps, const IsingParams& params,
                const FieldSchedule& schedule, const IntegratorOptions& opts,
                const Units& units, int threads) {
    params.validate();
    schedule.validate();
    const int channels = (params.n_sites - 1) / 2;
    if (amps.channels() != channels)
        throw ValidationError("amplitude state does not match n_sites");

    const int nt = resolve_threads(threads);
    std::exception_ptr failure;
    std::atomic<bool> failed{false};

#pragma omp parallel for schedule(dynamic) num_threads(nt) if (nt > 1)
    for (int n = 1; n <= channels; ++n) {
        if (failed.load(std::memory_order_relaxed)) continue;
        try {
            Vector2cd psi(amps.a[std::size_t(n - 1)], amps.b[std::size_t(n - 1)]);
            evolve_one_mode(n, psi, params, schedule, opts, units);
            amps.a[std::size_t(n - 1)] = psi[0];
            amps.b[std::size_t(n - 1)] = psi[1];
        } catch (...) {
#pragma omp critical
            {
                if (!failed.exchange(true)) failure = std::current_exception();
            }
        }
    }
    if (failure) std::rethrow_exception(failure);
    amps.s = 1.0;
}

std::vector<double> extract_p0n(const ModeAmplitudes& amps,
                                const IsingParams& params, double g_final) {
    const int channels = (params.n_sites - 1) / 2;
    if (amps.channels() != channels)
        throw ValidationError("amplitude state does not match n_sites");
    std::vector<double> p(static_cast<std::size_t>(channels), 0.0);
    for (int n = 1; n <= channels; ++n) {
        Vector2cd ex = excited_vector(n, g_final, params.n_sites);
        Vector2cd psi(amps.a[std::size_t(n - 1)], amps.b[std::size_t(n - 1)]);
        p[std::size_t(n - 1)] = std::norm(ex.dot(psi));
    }
    return p;
}

EnergyStats mean_energy(const ModeAmplitudes& amps, const IsingParams& params,
                        double g_final) {
    const std::vector<double> p = extract_p0n(amps, params, g_final);
    EnergyStats out;
    for (int n = 1; n <= amps.channels(); ++n) {
        const double exc =
            2.0 * params.coupling * lambda_even(n, g_final, params.n_sites);
        const double pn = p[std::size_t(n - 1)];
        out.mean_above_ground += exc * pn;
        out.variance += exc * exc * pn * (1.0 - pn);
    }
    double sum = 0.0;
    for (int k = 0; k < params.n_sites; ++k)
        sum += lambda_even(k, g_final, params.n_sites);
    out.width = params.coupling * sum;
    return out;
}

double round_trip_check(const IsingParams& params, const FieldSchedule& up_leg,
                        const IntegratorOptions& opts, const Units& units,
                        int threads) {
    ModeAmplitudes amps = evolve_sweep(params, up_leg, opts, units, threads);
    evolve_leg(amps, params, up_leg.reversed(), opts, units, threads);
    const std::vector<double> loss = extract_p0n(amps, params, up_leg.g_start);
    double survival = 1.0;
    for (double p : loss) survival *= (1.0 - p);
    return survival;
}

ExcitationReport sweep_report(const IsingParams& params, const FieldSchedule& schedule,
                              const IntegratorOptions& opts, const Units& units,
                              int threads) {
    ExcitationReport rep;
    rep.schedule = schedule;
    ModeAmplitudes amps = evolve_sweep(params, schedule, opts, units, threads);
    rep.norm_error = amps.norm_error();
    const std::vector<double> p = extract_p0n(amps, params, schedule.g_end);

    for (int n = 1; n <= amps.channels(); ++n) {
        ChannelReport ch;
        ch.mode = n;
        ch.energy = 2.0 * params.coupling * lambda_even(n, schedule.g_end, params.n_sites);
        ch.p = p[std::size_t(n - 1)];
        rep.channels.push_back(ch);
    }
    std::sort(rep.channels.begin(), rep.channels.end(),
              [](const ChannelReport& x, const ChannelReport& y) {
                  return x.energy < y.energy;
              });
    double prod = 1.0;
    for (std::size_t i = 0; i < rep.channels.size(); ++i) {
        rep.channels[i].rank = int(i);
        rep.p_total += rep.channels[i].p;
        prod *= (1.0 - rep.channels[i].p);
    }
    rep.p_exact = 1.0 - prod;
    rep.p_total_clamped = rep.p_total > 1.0;
    rep.energy = mean_energy(amps, params, schedule.g_end);
    return rep;
}

}  // namespace spinsweep
