#pragma once

#include <cstdint>
#include <vector>

#include "spinsweep/params.hpp"

namespace spinsweep {

/// Fermion-number-parity subspace of the Jordan-Wigner solution. The even
/// sector carries Z2 = +1 (even quasiparticle count), the odd sector -1.
enum class Sector { even, odd };

const char* to_string(Sector s);

/// Momentum label of a single fermion mode. Modes live on the integer grid
/// k = 0..N-1 with momentum 2 pi k / N; k pairs with (N - k) mod N.
struct FermionMode {
    int index = 0;
    double momentum = 0.0;
    Sector sector = Sector::even;

    static int partner(int k, int n_sites) { return (n_sites - k) % n_sites; }
    static FermionMode make(int k, int n_sites, Sector sector);
};

/// Even-sector single-fermion energy Lambda_k in units of J:
///   Lambda_k = 2 sqrt(1 + g^2 + 2 g cos(2 pi k / N)).
double lambda_even(int k, double g, int n_sites);

/// Odd-sector single-fermion energy; the unpaired k = 0 mode has the linear
/// branch 2 (g - 1), all others 2 sqrt(1 + g^2 - 2 g cos(2 pi k / N)).
double lambda_odd(int k, double g, int n_sites);

/// Bogoliubov mixing angle of the even-sector pair (k, N-k),
///   theta_k(g) = atan2(sin(2 pi k/N), g + cos(2 pi k/N)),
/// continuous in g on (0, inf). The instantaneous pair ground state is the
/// rotation of the fixed pair basis by theta_k.
double bogoliubov_angle(int k, double g, int n_sites);

/// Single-fermion content of one parity sector. Many-body levels are
/// additive_offset + sum_k Lambda_k (n_k - 1/2) over occupations n_k in
/// {0,1} whose total count has the sector's parity. The additive offset is
/// a convention resolved against the dense oracle; it comes out zero for
/// both sectors (no g N term).
struct SectorSpectrum {
    Sector sector = Sector::even;
    std::vector<double> single_energies;  // Lambda_k or LambdaBar_k, units J
    double ground_energy = 0.0;           // lowest physical level, units J
    double additive_offset = 0.0;         // units J

    /// Many-body energy of an occupation bitmask (no parity check).
    double level(std::uint32_t occupation_mask) const;
};

SectorSpectrum sector_spectrum(const IsingParams& params, Sector sector);

struct LevelEntry {
    double energy = 0.0;            // units J
    std::uint32_t occupation = 0;   // quasiparticle bitmask over k = 0..N-1
    Sector sector = Sector::even;
};

/// Lowest max_levels many-body energies across both sectors, ascending.
/// Rejects max_levels > 2^N. Enumeration is capped at N <= 24.
std::vector<LevelEntry> enumerate_levels(const IsingParams& params,
                                         std::size_t max_levels);

/// Gap between the even-sector vacuum (ground state) and the odd-sector
/// one-fermion state, both exact and in the closed asymptotic form
///   (g - 1) + sqrt((g - 1)^2 + g (pi/N)^2).
/// The closed form tracks the exact gap for g well above 1 + O(1/N) but is
/// about 2x the exact value at g = 1 and only qualitatively small below.
struct GapInfo {
    double exact = 0.0;
    double asymptotic = 0.0;
};

GapInfo first_gap(const IsingParams& params);

/// Minimum over g (and channels n) of the two-fermion excitation energy
/// 2 J Lambda_n; approaches 4 pi / N at g -> 1 for large N.
struct MinGapResult {
    double g_min = 0.0;
    double gap = 0.0;  // units J
    int mode = 0;      // channel n attaining the minimum
};

MinGapResult min_two_fermion_gap(int n_sites, double g_lo, double g_hi);

}  // namespace spinsweep
