#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "spinsweep/dense.hpp"
#include "spinsweep/params.hpp"

namespace spinsweep {

/// (Z2 parity, momentum k, group index n, in-group index d) tags of a
/// Heisenberg eigenstate. The group index counts spins reversed against the
/// field in the g -> infinity limit; parity obeys z2 = (-1)^n.
struct SymmetryLabels {
    int z2 = +1;             // +-1
    int momentum_index = 0;  // k, eigenvalue exp(-i 2 pi k / N) of T
    int group_index = 0;     // n in 0..N
    int degeneracy_index = 1;  // d >= 1, ascending energy within (n, k)
    bool flagged = false;      // continuation tracking was ambiguous
};

/// Sparse symmetry-adapted basis vector: sum of phased product states.
struct SymmetrizedVector {
    std::vector<std::pair<std::uint64_t, Complex>> entries;

    Complex dot_dense(const Complex* psi) const;  // <v|psi>
};

/// Orthonormal basis of the (k, z2) momentum/parity sector. Vectors are
/// normalized sums of translated product states with phase e^{+i 2 pi k j/N},
/// combined into Z2-even/odd pairs (orbits always pair for odd N).
struct SectorBasis {
    int n_sites = 0;
    int momentum_index = 0;
    int z2 = +1;
    std::vector<SymmetrizedVector> vectors;

    int dim() const { return int(vectors.size()); }
    /// Project a full-space vector onto the sector (coefficient vector).
    VectorXcd project(const VectorXcd& psi) const;
    /// Lift sector coefficients back to the full 2^N space.
    VectorXcd lift(const VectorXcd& coeffs) const;
};

SectorBasis sector_basis(int n_sites, int momentum_index, int z2);

/// Interaction and field parts of the Hamiltonian projected on a sector:
/// H_sector(g) = interaction + g * field.
struct SectorHamiltonian {
    SectorBasis basis;
    MatrixXcd interaction;
    MatrixXcd field;

    MatrixXcd at(double g) const { return interaction + g * field; }
};

SectorHamiltonian sector_hamiltonian(const HeisenbergParams& params, int momentum_index,
                                     int z2);

/// Eigendecomposition of one sector at the params' field value.
struct EigenDecomposition {
    int momentum_index = 0;
    int z2 = +1;
    std::vector<double> energies;  // ascending, units of J when J = coupling
    MatrixXcd states;              // columns, sector-basis coordinates
    std::vector<SymmetryLabels> labels;
};

EigenDecomposition sector_eigens(const SectorHamiltonian& sec, double g);

/// Assign (n, d) labels by adiabatic continuation from a reference
/// diagonalization at g_ref = 50 max(|delta|, 1), where groups are Zeeman
/// split; tracked down in g by maximal subspace overlap. States whose best
/// overlap falls below 0.5 get flagged labels.
void classify_eigenstates(const HeisenbergParams& params, const SectorHamiltonian& sec,
                          EigenDecomposition& dec);

/// Full-spectrum level table used by the spectrum CLI: every sector
/// diagonalized and labeled, plus the degeneracy count D of each level.
struct LabeledLevel {
    double energy = 0.0;
    SymmetryLabels labels;
    int degeneracy = 1;  // D, multiplicity across all sectors
};

std::vector<LabeledLevel> labeled_spectrum(const HeisenbergParams& params);

/// Large-g series data (per-site energies in units of J N):
///   E0/(JN)    = -g - dx + O(1/g)
///   E20d/(JN)  = -g (1 - 4/N) - dx (1 - 8/N)
///                + (4/N) |dz + dy| cos(2 pi d/(N+1)) + O(1/g)
/// plus the leading state coefficients of the Appendix-style expansion.
struct PerturbativeLevels {
    double e0_per_site = 0.0;
    std::vector<double> e20d_per_site;     // d = 1..(N-1)/2
    double phi0_first_order_coeff = 0.0;   // (dz - dy)/4 on each |j, j+1>
    std::vector<double> arrow_overlap_20d;  // <all-x | phi_20d^(1)>
    Validity validity = Validity::valid;    // g >= 5 max|delta| required
};

PerturbativeLevels perturbative_levels(const HeisenbergParams& params);

/// First-order driving matrix element between the ground state and the
/// d-th two-flip state, in units of J:
///   H_d0(s) = -2 (dz - dy) (g'/g) sqrt(N/(N+1)) sin(2 pi d/(N+1)) + O(1/g^2)
double matrix_element_hd0(int d, double s, const HeisenbergParams& params,
                          const FieldSchedule& schedule);

struct PeEstimate {
    double p_e = 0.0;
    Validity validity = Validity::valid;
};

/// Closed-form excitation estimate
///   p_E = (hbar^2/(2^8 J^2)) (dz-dy)^2 ((g0-g1)^2/T^2) N / g1^6.
PeEstimate pe_heisenberg(const HeisenbergParams& params, const FieldSchedule& schedule,
                         const Units& units = {});

/// Time-dependent Schroedinger sweep in the (k = 0, z2 = +1) sector,
/// starting from the sector ground state at g_start.
struct HeisenbergSweepResult {
    double p_e = 0.0;               // 1 - |<ground(g1)|psi(T)>|^2
    std::vector<double> p0d;        // weight on labeled group-2 states, d = 1..
    double group2_weight = 0.0;     // total first-order channel weight
    double other_excited_weight = 0.0;
    double norm_error = 0.0;
};

HeisenbergSweepResult tdse_sweep(const HeisenbergParams& params,
                                 const FieldSchedule& schedule,
                                 const IntegratorOptions& opts,
                                 const Units& units = {});

}  // namespace spinsweep
