#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>

#include "spinsweep/dense.hpp"
#include "spinsweep/ising_exact.hpp"

using namespace spinsweep;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> free_fermion_multiset(const IsingParams& params) {
    auto levels = enumerate_levels(params, std::size_t(1) << params.n_sites);
    std::vector<double> e;
    e.reserve(levels.size());
    for (const auto& l : levels) e.push_back(l.energy);
    return e;
}

double max_multiset_deviation(std::vector<double> a, std::vector<double> b) {
    REQUIRE(a.size() == b.size());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

}  // namespace

TEST_CASE("single-fermion energies match the closed forms") {
    // g = 0 collapses both square roots to 2 (the field-free bandwidth).
    for (int k = 0; k < 5; ++k) CHECK(lambda_even(k, 0.0, 5) == doctest::Approx(2.0));
    // At g = 1 the even branch is 2 sqrt(2 + 2 cos k).
    for (int k = 0; k < 5; ++k) {
        double expect = 2.0 * std::sqrt(2.0 + 2.0 * std::cos(2.0 * kPi * k / 5.0));
        CHECK(lambda_even(k, 1.0, 5) == doctest::Approx(expect).epsilon(1e-14));
    }
    CHECK(lambda_even(0, 3.0, 7) == doctest::Approx(8.0));

    // Softest even mode at criticality for N = 501: 4 sin(pi / 1002).
    const double soft = lambda_even(250, 1.0, 501);
    CHECK(soft == doctest::Approx(4.0 * std::sin(kPi / 1002.0)).epsilon(1e-12));
    CHECK(soft == doctest::Approx(0.01254146).epsilon(1e-6));

    CHECK(lambda_odd(0, 2.0, 9) == doctest::Approx(2.0));
    CHECK(lambda_odd(0, 1.0, 11) == doctest::Approx(0.0));
    CHECK(lambda_odd(0, 1.0, 501) == doctest::Approx(0.0));
}

TEST_CASE("lambda symmetry under k -> N-k and critical softening") {
    for (int N : {5, 9, 13}) {
        for (double g : {0.0, 0.3, 1.0, 2.7}) {
            for (int k = 1; k < N; ++k) {
                CHECK(lambda_even(k, g, N) == lambda_even(N - k, g, N));
                CHECK(lambda_odd(k, g, N) == lambda_odd(N - k, g, N));
            }
        }
        double softest = 1e300;
        int argmin = -1;
        for (int k = 0; k < N; ++k) {
            if (lambda_odd(k, 1.0, N) < softest) {
                softest = lambda_odd(k, 1.0, N);
                argmin = k;
            }
        }
        CHECK(argmin == 0);
        CHECK(softest == doctest::Approx(0.0));
    }
}

TEST_CASE("odd-sector spacing agrees with the dense oracle at N = 9") {
    IsingParams params{9, 1.0, 1.0};
    auto odd = dense_ising_parity_spectrum(params, Sector::odd);
    const double spacing = odd[1] - odd[0];
    const double expect = 2.0 * std::sqrt(2.0 - 2.0 * std::cos(2.0 * kPi / 9.0));
    CHECK(spacing == doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("sector spectra equal the dense parity-resolved oracle") {
    for (int N : {3, 5, 7, 9}) {
        for (double g : {0.0, 0.5, 1.0, 2.0, 5.0}) {
            IsingParams params{N, 1.0, g};
            SectorSpectrum even = sector_spectrum(params, Sector::even);
            SectorSpectrum odd = sector_spectrum(params, Sector::odd);

            std::vector<double> ff_even, ff_odd;
            for (std::uint32_t mask = 0; mask < (1u << N); ++mask) {
                if (std::popcount(mask) % 2 == 0)
                    ff_even.push_back(even.level(mask));
                else
                    ff_odd.push_back(odd.level(mask));
            }
            CHECK(max_multiset_deviation(
                      ff_even, dense_ising_parity_spectrum(params, Sector::even)) <
                  1e-8);
            CHECK(max_multiset_deviation(
                      ff_odd, dense_ising_parity_spectrum(params, Sector::odd)) <
                  1e-8);
        }
    }
}

TEST_CASE("additive offset calibrates to zero against the dense oracle") {
    IsingParams params{9, 1.0, 0.7};
    SectorSpectrum even = sector_spectrum(params, Sector::even);
    auto dense = dense_ising_parity_spectrum(params, Sector::even);
    CHECK(std::abs(even.ground_energy - dense.front()) < 1e-9);
    CHECK(even.additive_offset == 0.0);

    // Classical limit: lowest even level is the ferromagnet at -N J.
    IsingParams classical{5, 1.0, 0.0};
    CHECK(sector_spectrum(classical, Sector::even).ground_energy ==
          doctest::Approx(-5.0));
    // Paramagnetic limit: ground energy approaches -g N.
    IsingParams strong{5, 1.0, 60.0};
    CHECK(sector_spectrum(strong, Sector::even).ground_energy / (-60.0 * 5) ==
          doctest::Approx(1.0).epsilon(2e-3));
}

TEST_CASE("enumerate_levels returns the lowest levels in order") {
    IsingParams params{5, 1.0, 1.0};
    auto levels = enumerate_levels(params, 32);
    REQUIRE(levels.size() == 32);
    CHECK(std::is_sorted(levels.begin(), levels.end(),
                         [](const LevelEntry& a, const LevelEntry& b) {
                             return a.energy < b.energy;
                         }));
    std::vector<double> ours;
    for (const auto& l : levels) ours.push_back(l.energy);
    auto dense = dense_eigenvalues(dense_ising_hamiltonian(params));
    CHECK(max_multiset_deviation(ours, dense) < 1e-8);

    // Two ferromagnetic states at -3J for the classical 3-site ring.
    IsingParams tiny{3, 1.0, 0.0};
    auto low = enumerate_levels(tiny, 8);
    CHECK(low[0].energy == doctest::Approx(-3.0));
    CHECK(low[1].energy == doctest::Approx(-3.0));
    CHECK(low[2].energy == doctest::Approx(1.0));

    CHECK_THROWS_AS(enumerate_levels(tiny, 9), ValidationError);
}

TEST_CASE("bogoliubov angle limits and derivative") {
    // Field-dominated limit: angle vanishes.
    CHECK(std::abs(bogoliubov_angle(2, 1e7, 9)) < 1e-6);
    // Interaction-dominated limit: atan2(sin k, cos k) = k itself.
    for (int k = 1; k <= 4; ++k)
        CHECK(bogoliubov_angle(k, 0.0, 9) ==
              doctest::Approx(2.0 * kPi * k / 9.0).epsilon(1e-13));

    // d theta / dg against central differences.
    for (int k = 1; k <= 5; ++k) {
        for (double g : {0.2, 0.9, 1.0, 1.4, 6.0}) {
            const double h = 1e-6;
            const double fd = (bogoliubov_angle(k, g + h, 11) -
                               bogoliubov_angle(k, g - h, 11)) /
                              (2.0 * h);
            const double kt = 2.0 * kPi * k / 11.0;
            const double analytic =
                -std::sin(kt) / (1.0 + g * g + 2.0 * g * std::cos(kt));
            CHECK(fd == doctest::Approx(analytic).epsilon(1e-6));
        }
    }
}

TEST_CASE("first gap: exact sector difference and the closed form") {
    // Above the critical point the closed form tracks the exact gap.
    for (int N : {101, 201}) {
        for (double g : {1.1, 1.15, 1.2}) {
            IsingParams params{N, 1.0, g};
            GapInfo gap = first_gap(params);
            CHECK(std::abs(gap.asymptotic - gap.exact) / gap.exact < 0.05);
        }
    }
    // Far above: dominated by the linear branch, gap -> 2 (g - 1).
    IsingParams far{1001, 1.0, 2.0};
    CHECK(first_gap(far).exact == doctest::Approx(2.0).epsilon(1e-3));

    // At g = 1 the exact sector gap behaves as pi/(2N); the closed form
    // carries pi/N there, an intentional envelope kept for comparison.
    IsingParams crit{201, 1.0, 1.0};
    GapInfo gap = first_gap(crit);
    CHECK(gap.asymptotic == doctest::Approx(kPi / 201.0).epsilon(1e-12));
    CHECK(gap.exact == doctest::Approx(kPi / (2.0 * 201.0)).epsilon(2e-4));
    CHECK(gap.asymptotic == doctest::Approx(2.0 * gap.exact).epsilon(2e-4));

    // Asymptotic degeneracy below the critical point: both are small, the
    // exact gap exponentially so.
    IsingParams below{201, 1.0, 0.5};
    GapInfo deg = first_gap(below);
    CHECK(std::abs(deg.exact) < 1e-9);
    CHECK(deg.asymptotic < 1e-3);

    // Exactness vs the dense oracle at small N.
    for (double g : {0.4, 1.0, 1.7}) {
        IsingParams small{9, 1.0, g};
        auto even = dense_ising_parity_spectrum(small, Sector::even);
        auto odd = dense_ising_parity_spectrum(small, Sector::odd);
        CHECK(first_gap(small).exact ==
              doctest::Approx(odd.front() - even.front()).epsilon(1e-10));
    }
}

TEST_CASE("minimal two-fermion gap approaches 4 pi / N near g = 1") {
    MinGapResult big = min_two_fermion_gap(501, 0.5, 1.5);
    CHECK(std::abs(big.gap - 4.0 * kPi / 501.0) / (4.0 * kPi / 501.0) < 0.02);
    CHECK(std::abs(big.g_min - 1.0) < 0.01);

    MinGapResult mid = min_two_fermion_gap(51, 0.5, 1.5);
    CHECK(std::abs(mid.gap - 4.0 * kPi / 51.0) / (4.0 * kPi / 51.0) < 0.03);

    // Scan oracle: dense grid over (g, n) without the refinement step.
    double brute = 1e300;
    for (int i = 0; i <= 4000; ++i) {
        double g = 0.5 + i * (1.0 / 4000.0) * 1.0;
        for (int n = 1; n <= 25; ++n)
            brute = std::min(brute, 2.0 * lambda_even(n, g, 51));
    }
    CHECK(mid.gap <= brute + 1e-12);
    CHECK(mid.gap == doctest::Approx(brute).epsilon(1e-6));
}

TEST_CASE("dense Hamiltonian commutes with Z2 and translation") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> uni(0.0, 3.0);
    for (int rep = 0; rep < 3; ++rep) {
        IsingParams params{7, 1.0, uni(rng)};
        MatrixXd h = dense_ising_hamiltonian(params);
        auto [z2, t] = symmetry_operators(7);
        CHECK((h * z2 - z2 * h).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((h * t - t * h).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((z2 * z2 - MatrixXd::Identity(128, 128)).cwiseAbs().maxCoeff() == 0.0);
        MatrixXd tn = MatrixXd::Identity(128, 128);
        for (int i = 0; i < 7; ++i) tn = t * tn;
        CHECK((tn - MatrixXd::Identity(128, 128)).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(IsingParams{4, 1.0, 1.0}.validate(), ValidationError);
    CHECK_THROWS_AS(IsingParams{1, 1.0, 1.0}.validate(), ValidationError);
    CHECK_THROWS_AS((IsingParams{5, -1.0, 1.0}).validate(), ValidationError);
    CHECK_THROWS_AS((IsingParams{5, 1.0, -0.5}).validate(), ValidationError);
    CHECK_NOTHROW(IsingParams{3, 2.0, 0.0}.validate());
}
