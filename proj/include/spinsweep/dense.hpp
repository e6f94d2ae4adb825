#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "spinsweep/ising_exact.hpp"
#include "spinsweep/params.hpp"

namespace spinsweep {

using Complex = std::complex<double>;
using VectorXcd = Eigen::VectorXcd;
using MatrixXcd = Eigen::MatrixXcd;
using MatrixXd = Eigen::MatrixXd;

/// Dense Hamiltonian of the anisotropic Heisenberg chain in the product
/// z-basis (bit i of the index is site i; bit 0 means sz = +1). Real
/// symmetric: the sy sy bond term contributes the real amplitude -z_i z_j.
MatrixXd dense_hamiltonian(const HeisenbergParams& params);

/// Ising chain as the (dx, dy, dz) = (0, 0, 1) specialization.
MatrixXd dense_ising_hamiltonian(const IsingParams& params);

/// Z2 = prod_i sx_i (global spin flip) and the right-shift translation T
/// as dense permutation matrices.
std::pair<MatrixXd, MatrixXd> symmetry_operators(int n_sites);

/// Ascending eigenvalues of a real symmetric matrix.
std::vector<double> dense_eigenvalues(const MatrixXd& h);

/// Ascending eigenvalues of the Ising chain restricted to one Z2-parity
/// block (exact projection, dimension 2^(N-1)).
std::vector<double> dense_ising_parity_spectrum(const IsingParams& params,
                                                Sector sector);

/// Matrix-free H psi for the Heisenberg chain (Ising via the same
/// specialization). threads <= 1 runs the serial reference loop; larger
/// counts run the identical arithmetic OpenMP-split over basis states, so
/// results are bitwise equal.
void apply_heisenberg(const HeisenbergParams& params, const Complex* in,
                      Complex* out, int threads = 1);

/// Site perturbation V = J sum_j eps_j n^(j) . sigma^(j), accumulated onto
/// out (out += V in). Axis components are given in the field frame: the
/// third component lies along the external field (lab sx), the first two
/// are transverse (lab sy, sz).
struct SitePerturbation {
    double coupling = 1.0;                 // J
    std::vector<double> strengths;         // eps_j
    std::vector<std::array<double, 3>> axes;  // unit n^(j), field frame
};

void apply_site_perturbation(const SitePerturbation& v, int n_sites,
                             const Complex* in, Complex* out, int threads = 1);

/// Lowest nev eigenpairs of a Hermitian operator given as a matvec,
/// by Lanczos with full reorthogonalization. Suitable for the dense
/// time-dependent paths where only extremal states are needed.
struct LanczosResult {
    std::vector<double> values;
    std::vector<VectorXcd> vectors;
};

LanczosResult lanczos_lowest(
    const std::function<void(const Complex*, Complex*)>& matvec, int dim,
    int nev, int max_iter = 300, double tol = 1e-11, std::uint64_t seed = 7);

}  // namespace spinsweep
