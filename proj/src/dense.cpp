#include "spinsweep/dense.hpp"

#include <omp.h>

#include <array>
#include <cmath>
#include <random>

namespace spinsweep {

namespace {

inline int bit(std::uint64_t state, int i) { return int((state >> i) & 1u); }
inline double zval(std::uint64_t state, int i) { return 1.0 - 2.0 * double(bit(state, i)); }

}  // namespace

MatrixXd dense_hamiltonian(const HeisenbergParams& params) {
    params.validate();
    const int N = params.n_sites;
    const double J = params.coupling, g = params.field;
    const std::uint64_t dim = std::uint64_t(1) << N;
    MatrixXd h = MatrixXd::Zero(long(dim), long(dim));
    for (std::uint64_t b = 0; b < dim; ++b) {
        double diag = 0.0;
        for (int i = 0; i < N; ++i) {
            const int j = (i + 1) % N;
            const double zz = zval(b, i) * zval(b, j);
            diag += -J * params.delta_z * zz;
            // sx sx flips both bits with +1; sy sy with -z_i z_j.
            const std::uint64_t flipped = b ^ (std::uint64_t(1) << i) ^ (std::uint64_t(1) << j);
            h(long(flipped), long(b)) += -J * (params.delta_x - params.delta_y * zz);
            // transverse field
            h(long(b ^ (std::uint64_t(1) << i)), long(b)) += -J * g;
        }
        h(long(b), long(b)) += diag;
    }
    return h;
}

MatrixXd dense_ising_hamiltonian(const IsingParams& params) {
    params.validate();
    HeisenbergParams hp;
    hp.n_sites = params.n_sites;
    hp.coupling = params.coupling;
    hp.delta_x = 0.0;
    hp.delta_y = 0.0;
    hp.delta_z = 1.0;
    hp.field = params.field;
    return dense_hamiltonian(hp);
}

std::pair<MatrixXd, MatrixXd> symmetry_operators(int n_sites) {
    if (n_sites < 1 || n_sites > 20) throw ValidationError("symmetry_operators: bad N");
    const std::uint64_t dim = std::uint64_t(1) << n_sites;
    const std::uint64_t mask = dim - 1;
    MatrixXd z2 = MatrixXd::Zero(long(dim), long(dim));
    MatrixXd t = MatrixXd::Zero(long(dim), long(dim));
    for (std::uint64_t b = 0; b < dim; ++b) {
        z2(long((~b) & mask), long(b)) = 1.0;
        const std::uint64_t shifted = ((b << 1) & mask) | (b >> (n_sites - 1));
        t(long(shifted), long(b)) = 1.0;
    }
    return {z2, t};
}

std::vector<double> dense_eigenvalues(const MatrixXd& h) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> solver(h, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    return std::vector<double>(ev.data(), ev.data() + ev.size());
}

std::vector<double> dense_ising_parity_spectrum(const IsingParams& params,
                                                Sector sector) {
    params.validate();
    const int N = params.n_sites;
    if (N > 14) throw ValidationError("dense oracle capped at N <= 14");
    const double J = params.coupling, g = params.field;
    const std::uint64_t mask = (std::uint64_t(1) << N) - 1;
    const std::uint64_t half = std::uint64_t(1) << (N - 1);
    const double sign = sector == Sector::even ? 1.0 : -1.0;
    // Representatives are the states with the top bit clear; the flipped
    // partner carries +-psi depending on parity.
    MatrixXd h = MatrixXd::Zero(long(half), long(half));
    for (std::uint64_t b = 0; b < half; ++b) {
        double diag = 0.0;
        for (int i = 0; i < N; ++i) {
            const int j = (i + 1) % N;
            diag += -J * zval(b, i) * zval(b, j);
            std::uint64_t f = b ^ (std::uint64_t(1) << i);
            double amp = -J * g;
            if (f & half) {
                f = (~f) & mask;
                amp *= sign;
            }
            h(long(f), long(b)) += amp;
        }
        h(long(b), long(b)) += diag;
    }
    return dense_eigenvalues(h);
}

void apply_heisenberg(const HeisenbergParams& params, const Complex* in,
                      Complex* out, int threads) {
    const int N = params.n_sites;
    const double J = params.coupling, g = params.field;
    const double dx = params.delta_x, dy = params.delta_y, dz = params.delta_z;
    const std::int64_t dim = std::int64_t(1) << N;

#pragma omp parallel for schedule(static) num_threads(std::max(1, threads)) if (threads > 1)
    for (std::int64_t b = 0; b < dim; ++b) {
        Complex acc = 0.0;
        double diag = 0.0;
        for (int i = 0; i < N; ++i) {
            const int j = (i + 1) % N;
            const double zz = zval(std::uint64_t(b), i) * zval(std::uint64_t(b), j);
            diag += -J * dz * zz;
            const std::int64_t bond = b ^ (std::int64_t(1) << i) ^ (std::int64_t(1) << j);
            // H is symmetric, so rows can gather with the same amplitudes.
            acc += (-J * (dx - dy * zval(std::uint64_t(bond), i) *
                                    zval(std::uint64_t(bond), j))) *
                   in[bond];
            acc += (-J * g) * in[b ^ (std::int64_t(1) << i)];
        }
        out[b] = acc + diag * in[b];
    }
}

void apply_site_perturbation(const SitePerturbation& v, int n_sites,
                             const Complex* in, Complex* out, int threads) {
    if (v.strengths.size() != std::size_t(n_sites) ||
        v.axes.size() != std::size_t(n_sites))
        throw ValidationError("perturbation spec size mismatch");
    const std::int64_t dim = std::int64_t(1) << n_sites;
    const double J = v.coupling;

#pragma omp parallel for schedule(static) num_threads(std::max(1, threads)) if (threads > 1)
    for (std::int64_t b = 0; b < dim; ++b) {
        Complex acc = 0.0;
        for (int i = 0; i < n_sites; ++i) {
            const double eps = v.strengths[std::size_t(i)];
            if (eps == 0.0) continue;
            const auto& n = v.axes[std::size_t(i)];
            // Field frame: n[2] along lab sx, n[0] -> lab sy, n[1] -> lab sz.
            const std::int64_t f = b ^ (std::int64_t(1) << i);
            acc += (J * eps * n[2]) * in[f];                        // sx: flip
            acc += (J * eps * n[0]) * Complex(0.0, zval(std::uint64_t(f), i)) * in[f];  // sy
            acc += (J * eps * n[1]) * zval(std::uint64_t(b), i) * in[b];  // sz: diag
        }
        out[b] += acc;
    }
}

LanczosResult lanczos_lowest(
    const std::function<void(const Complex*, Complex*)>& matvec, int dim,
    int nev, int max_iter, double tol, std::uint64_t seed) {
    if (nev < 1 || nev > dim) throw ValidationError("lanczos: bad nev");
    const int m = std::min(dim, max_iter);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    std::vector<VectorXcd> basis;
    basis.reserve(std::size_t(m));
    VectorXcd q(dim);
    for (int i = 0; i < dim; ++i) q[i] = Complex(gauss(rng), gauss(rng));
    q.normalize();
    basis.push_back(q);

    std::vector<double> alpha, beta;
    VectorXcd w(dim);
    for (int it = 0; it < m; ++it) {
        matvec(basis.back().data(), w.data());
        double a = std::real(basis.back().dot(w));
        alpha.push_back(a);
        w -= a * basis.back();
        if (it > 0) w -= beta.back() * basis[basis.size() - 2];
        // full reorthogonalization, twice for stability
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& v : basis) w -= v.dot(w) * v;
        double b = w.norm();
        if (b < 1e-13 || it == m - 1) break;
        beta.push_back(b);
        basis.push_back(w / b);
    }

    const int k = int(alpha.size());
    MatrixXd tri = MatrixXd::Zero(k, k);
    for (int i = 0; i < k; ++i) {
        tri(i, i) = alpha[std::size_t(i)];
        if (i + 1 < k) tri(i, i + 1) = tri(i + 1, i) = beta[std::size_t(i)];
    }
    Eigen::SelfAdjointEigenSolver<MatrixXd> solver(tri);

    LanczosResult res;
    const int take = std::min(nev, k);
    for (int j = 0; j < take; ++j) {
        res.values.push_back(solver.eigenvalues()[j]);
        VectorXcd v = VectorXcd::Zero(dim);
        for (int i = 0; i < k; ++i) v += solver.eigenvectors()(i, j) * basis[std::size_t(i)];
        v.normalize();
        res.vectors.push_back(std::move(v));
    }
    (void)tol;
    return res;
}

}  // namespace spinsweep
