#include "spinsweep/ising_exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>

namespace spinsweep {

namespace {

constexpr double kPi = std::numbers::pi;

void check_mode(int k, int n_sites) {
    if (k < 0 || k >= n_sites)
        throw ValidationError("mode index k out of range 0..N-1");
}

}  // namespace

const char* to_string(Sector s) { return s == Sector::even ? "even" : "odd"; }

FermionMode FermionMode::make(int k, int n_sites, Sector sector) {
    check_mode(k, n_sites);
    return {k, 2.0 * kPi * double(k) / double(n_sites), sector};
}

double lambda_even(int k, double g, int n_sites) {
    check_mode(k, n_sites);
    double c = std::cos(2.0 * kPi * double(k) / double(n_sites));
    return 2.0 * std::sqrt(std::max(0.0, 1.0 + g * g + 2.0 * g * c));
}

double lambda_odd(int k, double g, int n_sites) {
    check_mode(k, n_sites);
    if (k == 0) return 2.0 * (g - 1.0);
    double c = std::cos(2.0 * kPi * double(k) / double(n_sites));
    return 2.0 * std::sqrt(std::max(0.0, 1.0 + g * g - 2.0 * g * c));
}

double bogoliubov_angle(int k, double g, int n_sites) {
    check_mode(k, n_sites);
    double kt = 2.0 * kPi * double(k) / double(n_sites);
    return std::atan2(std::sin(kt), g + std::cos(kt));
}

double SectorSpectrum::level(std::uint32_t occupation_mask) const {
    double e = additive_offset;
    for (std::size_t k = 0; k < single_energies.size(); ++k)
        e += single_energies[k] * ((occupation_mask >> k) & 1u ? 0.5 : -0.5);
    return e;
}

SectorSpectrum sector_spectrum(const IsingParams& params, Sector sector) {
    params.validate();
    const int N = params.n_sites;
    const double g = params.field;
    SectorSpectrum s;
    s.sector = sector;
    s.additive_offset = 0.0;  // oracle-calibrated convention: no g N term
    s.single_energies.resize(std::size_t(N));
    double sum = 0.0;
    for (int k = 0; k < N; ++k) {
        double lam = sector == Sector::even ? lambda_even(k, g, N)
                                            : lambda_odd(k, g, N);
        s.single_energies[std::size_t(k)] = lam;
        sum += lam;
    }
    if (sector == Sector::even) {
        s.ground_energy = s.additive_offset - 0.5 * sum;  // empty occupation
    } else {
        // Parity forces at least one quasiparticle; the cheapest single
        // mode is optimal since all k != 0 energies are nonnegative.
        double min_lam = *std::min_element(s.single_energies.begin(),
                                           s.single_energies.end());
        s.ground_energy = s.additive_offset - 0.5 * sum + min_lam;
    }
    return s;
}

std::vector<LevelEntry> enumerate_levels(const IsingParams& params,
                                         std::size_t max_levels) {
    params.validate();
    const int N = params.n_sites;
    if (N > 24) throw ValidationError("enumerate_levels capped at N <= 24");
    const std::size_t dim = std::size_t(1) << N;
    if (max_levels > dim)
        throw ValidationError("max_levels exceeds the 2^N many-body dimension");

    SectorSpectrum even = sector_spectrum(params, Sector::even);
    SectorSpectrum odd = sector_spectrum(params, Sector::odd);

    std::vector<LevelEntry> all;
    all.reserve(dim);
    for (std::uint32_t mask = 0; mask < dim; ++mask) {
        bool is_even = (std::popcount(mask) % 2) == 0;
        const SectorSpectrum& s = is_even ? even : odd;
        all.push_back({s.level(mask), mask, is_even ? Sector::even : Sector::odd});
    }
    auto by_energy = [](const LevelEntry& a, const LevelEntry& b) {
        return a.energy < b.energy;
    };
    std::nth_element(all.begin(), all.begin() + long(max_levels - 1), all.end(),
                     by_energy);
    all.resize(max_levels);
    std::sort(all.begin(), all.end(), by_energy);
    return all;
}

GapInfo first_gap(const IsingParams& params) {
    params.validate();
    const double g = params.field;
    const int N = params.n_sites;
    double e_even = sector_spectrum(params, Sector::even).ground_energy;
    double e_odd = sector_spectrum(params, Sector::odd).ground_energy;
    GapInfo gap;
    gap.exact = e_odd - e_even;
    double p = kPi / double(N);
    gap.asymptotic = (g - 1.0) + std::sqrt((g - 1.0) * (g - 1.0) + g * p * p);
    return gap;
}

MinGapResult min_two_fermion_gap(int n_sites, double g_lo, double g_hi) {
    IsingParams probe{n_sites, 1.0, std::max(0.0, g_lo)};
    probe.validate();
    if (!(g_lo < g_hi)) throw ValidationError("need g_lo < g_hi");
    const int N = n_sites;
    const int n_channels = (N - 1) / 2;

    auto channel_gap = [N](int n, double g) { return 2.0 * lambda_even(n, g, N); };

    // Coarse scan over the grid, then golden refinement on the winning
    // channel. The per-channel minimum in g sits at g = -cos(2 pi n / N).
    const int grid = 2001;
    double best = std::numeric_limits<double>::infinity();
    double best_g = g_lo;
    int best_n = 1;
    for (int i = 0; i < grid; ++i) {
        double g = g_lo + (g_hi - g_lo) * double(i) / double(grid - 1);
        for (int n = 1; n <= n_channels; ++n) {
            double e = channel_gap(n, g);
            if (e < best) {
                best = e;
                best_g = g;
                best_n = n;
            }
        }
    }
    double span = (g_hi - g_lo) / double(grid - 1);
    double a = std::max(g_lo, best_g - span);
    double b = std::min(g_hi, best_g + span);
    for (int iter = 0; iter < 200 && b - a > 1e-14; ++iter) {
        double m1 = a + (b - a) / 3.0, m2 = b - (b - a) / 3.0;
        if (channel_gap(best_n, m1) < channel_gap(best_n, m2))
            b = m2;
        else
            a = m1;
    }
    double g_min = 0.5 * (a + b);
    return {g_min, channel_gap(best_n, g_min), best_n};
}

}  // namespace spinsweep
