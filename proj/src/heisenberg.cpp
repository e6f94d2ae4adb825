#include "spinsweep/heisenberg.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numbers>

#include "spinsweep/ode.hpp"

namespace spinsweep {

namespace {

constexpr double kPi = std::numbers::pi;

std::uint64_t translate(std::uint64_t b, int n_sites) {
    const std::uint64_t mask = (std::uint64_t(1) << n_sites) - 1;
    return ((b << 1) & mask) | (b >> (n_sites - 1));
}

std::uint64_t flip_all(std::uint64_t b, int n_sites) {
    const std::uint64_t mask = (std::uint64_t(1) << n_sites) - 1;
    return (~b) & mask;
}

struct Orbit {
    std::uint64_t rep;  // minimal state in the translation orbit
    int length;
};

/// Representatives of all translation orbits, ascending by rep.
std::vector<Orbit> translation_orbits(int n_sites) {
    const std::uint64_t dim = std::uint64_t(1) << n_sites;
    std::vector<bool> seen(dim, false);
    std::vector<Orbit> orbits;
    for (std::uint64_t b = 0; b < dim; ++b) {
        if (seen[b]) continue;
        std::uint64_t cur = b;
        int len = 0;
        do {
            seen[cur] = true;
            cur = translate(cur, n_sites);
            ++len;
        } while (cur != b);
        orbits.push_back({b, len});
    }
    return orbits;
}

std::uint64_t orbit_rep(std::uint64_t b, int n_sites) {
    std::uint64_t best = b, cur = b;
    for (int i = 1; i < n_sites; ++i) {
        cur = translate(cur, n_sites);
        best = std::min(best, cur);
    }
    return best;
}

/// Momentum state over one orbit: (1/sqrt(L)) sum_j e^{+i 2 pi k j/N} T^j |rep>.
/// Defined when k * L = 0 mod N.
SymmetrizedVector momentum_state(std::uint64_t rep, int length, int k, int n_sites) {
    SymmetrizedVector v;
    std::uint64_t cur = rep;
    const double norm = 1.0 / std::sqrt(double(length));
    for (int j = 0; j < length; ++j) {
        const double phase = 2.0 * kPi * double(k) * double(j) / double(n_sites);
        v.entries.emplace_back(cur, norm * Complex(std::cos(phase), std::sin(phase)));
        cur = translate(cur, n_sites);
    }
    return v;
}

}  // namespace

Complex SymmetrizedVector::dot_dense(const Complex* psi) const {
    Complex acc = 0.0;
    for (const auto& [idx, amp] : entries) acc += std::conj(amp) * psi[idx];
    return acc;
}

VectorXcd SectorBasis::project(const VectorXcd& psi) const {
    VectorXcd out(dim());
    for (int m = 0; m < dim(); ++m)
        out[m] = vectors[std::size_t(m)].dot_dense(psi.data());
    return out;
}

VectorXcd SectorBasis::lift(const VectorXcd& coeffs) const {
    VectorXcd out = VectorXcd::Zero(std::int64_t(1) << n_sites);
    for (int m = 0; m < dim(); ++m)
        for (const auto& [idx, amp] : vectors[std::size_t(m)].entries)
            out[std::int64_t(idx)] += amp * coeffs[m];
    return out;
}

SectorBasis sector_basis(int n_sites, int momentum_index, int z2) {
    if (n_sites < 3 || n_sites % 2 == 0 || n_sites > 20)
        throw ValidationError("sector_basis: N must be odd, 3..20");
    if (momentum_index < 0 || momentum_index >= n_sites)
        throw ValidationError("sector_basis: k out of range");
    if (z2 != 1 && z2 != -1) throw ValidationError("sector_basis: z2 must be +-1");

    SectorBasis basis;
    basis.n_sites = n_sites;
    basis.momentum_index = momentum_index;
    basis.z2 = z2;

    const double zsign = double(z2);
    for (const Orbit& orb : translation_orbits(n_sites)) {
        if ((std::uint64_t(momentum_index) * std::uint64_t(orb.length)) %
                std::uint64_t(n_sites) != 0)
            continue;
        // For odd N an orbit never contains its own spin flip (that would
        // need half the spins up), so orbits pair; keep the smaller rep.
        const std::uint64_t partner = orbit_rep(flip_all(orb.rep, n_sites), n_sites);
        if (partner < orb.rep) continue;

        SymmetrizedVector v = momentum_state(orb.rep, orb.length, momentum_index, n_sites);
        SymmetrizedVector w;
        w.entries.reserve(v.entries.size());
        for (const auto& [idx, amp] : v.entries)
            w.entries.emplace_back(flip_all(idx, n_sites), amp);

        SymmetrizedVector combined;
        combined.entries.reserve(2 * v.entries.size());
        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        for (const auto& [idx, amp] : v.entries)
            combined.entries.emplace_back(idx, inv_sqrt2 * amp);
        for (const auto& [idx, amp] : w.entries)
            combined.entries.emplace_back(idx, zsign * inv_sqrt2 * amp);
        basis.vectors.push_back(std::move(combined));
    }
    return basis;
}

namespace {

/// Apply H to a symmetrized vector and return sector coefficients of the
/// result against every basis vector (one column of the projected H).
void project_column(const HeisenbergParams& params, double field_override,
                    const SectorBasis& basis, const SymmetrizedVector& v,
                    VectorXcd& column, VectorXcd& work) {
    HeisenbergParams p = params;
    p.field = field_override;
    const std::int64_t dim = std::int64_t(1) << params.n_sites;
    VectorXcd dense = VectorXcd::Zero(dim);
    for (const auto& [idx, amp] : v.entries) dense[std::int64_t(idx)] = amp;
    work.resize(dim);
    apply_heisenberg(p, dense.data(), work.data(), 1);
    for (int m = 0; m < basis.dim(); ++m)
        column[m] = basis.vectors[std::size_t(m)].dot_dense(work.data());
}

}  // namespace

SectorHamiltonian sector_hamiltonian(const HeisenbergParams& params, int momentum_index,
                                     int z2) {
    params.validate();
    SectorHamiltonian sec;
    sec.basis = sector_basis(params.n_sites, momentum_index, z2);
    const int dim = sec.basis.dim();
    sec.interaction.resize(dim, dim);
    sec.field.resize(dim, dim);

    HeisenbergParams field_only = params;
    field_only.delta_x = field_only.delta_y = field_only.delta_z = 0.0;

    VectorXcd col(dim), work;
    for (int m = 0; m < dim; ++m) {
        project_column(params, 0.0, sec.basis, sec.basis.vectors[std::size_t(m)], col,
                       work);
        sec.interaction.col(m) = col;
        project_column(field_only, 1.0, sec.basis, sec.basis.vectors[std::size_t(m)],
                       col, work);
        sec.field.col(m) = col;
    }
    // Symmetrize away projection roundoff.
    sec.interaction = 0.5 * (sec.interaction + sec.interaction.adjoint()).eval();
    sec.field = 0.5 * (sec.field + sec.field.adjoint()).eval();
    return sec;
}

EigenDecomposition sector_eigens(const SectorHamiltonian& sec, double g) {
    EigenDecomposition dec;
    dec.momentum_index = sec.basis.momentum_index;
    dec.z2 = sec.basis.z2;
    Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(sec.at(g));
    dec.energies.assign(solver.eigenvalues().data(),
                        solver.eigenvalues().data() + sec.basis.dim());
    dec.states = solver.eigenvectors();
    dec.labels.assign(std::size_t(sec.basis.dim()), SymmetryLabels{});
    for (auto& l : dec.labels) {
        l.z2 = sec.basis.z2;
        l.momentum_index = sec.basis.momentum_index;
    }
    return dec;
}

namespace {

/// Group indices at the Zeeman reference field from the x-magnetization:
/// the n-th group has N - 2n spins along the field.
std::vector<int> reference_groups(const HeisenbergParams& params,
                                  const SectorHamiltonian& sec,
                                  const EigenDecomposition& ref, double g_ref,
                                  std::vector<bool>& flags) {
    const int dim = sec.basis.dim();
    const int N = params.n_sites;
    std::vector<int> groups(static_cast<std::size_t>(dim), 0);
    flags.assign(std::size_t(dim), false);
    for (int m = 0; m < dim; ++m) {
        // <sum_i sx_i> = -<H_field part>/J with the field projector.
        const Complex mx =
            ref.states.col(m).dot(sec.field * ref.states.col(m)) /
            Complex(-params.coupling);
        const double n_est = 0.5 * (double(N) - std::real(mx));
        const int n = int(std::lround(n_est));
        groups[std::size_t(m)] = std::clamp(n, 0, N);
        if (std::abs(n_est - double(n)) > 0.2) flags[std::size_t(m)] = true;
    }
    (void)g_ref;
    return groups;
}

/// Partition indices into clusters of nearly degenerate energies.
std::vector<std::vector<int>> degenerate_clusters(const std::vector<double>& e,
                                                  double rel_tol = 1e-10) {
    std::vector<std::vector<int>> clusters;
    const double scale = std::max(1.0, std::abs(e.empty() ? 0.0 : e.back()));
    for (int i = 0; i < int(e.size()); ++i) {
        if (!clusters.empty() &&
            std::abs(e[std::size_t(i)] - e[std::size_t(clusters.back().back())]) <
                rel_tol * scale)
            clusters.back().push_back(i);
        else
            clusters.push_back({i});
    }
    return clusters;
}

}  // namespace

void classify_eigenstates(const HeisenbergParams& params, const SectorHamiltonian& sec,
                          EigenDecomposition& dec) {
    params.validate();
    const int dim = sec.basis.dim();
    if (dim == 0) return;
    const double g_target = params.field;
    const double g_ref = 50.0 * std::max(params.max_anisotropy(), 1.0);

    // Continuation path: geometric from g_ref down to max(g_target, 1),
    // then linear to g_target.
    std::vector<double> path;
    double g = g_ref;
    const double g_knee = std::max(g_target, 1.0);
    while (g > g_knee * 1.05) {
        path.push_back(g);
        g *= 0.85;
    }
    path.push_back(g_knee);
    if (g_target < g_knee)
        for (double x = g_knee - 0.05; x > g_target + 1e-12; x -= 0.05)
            path.push_back(x);
    path.push_back(g_target);

    EigenDecomposition prev = sector_eigens(sec, path.front());
    std::vector<bool> flags;
    std::vector<int> groups = reference_groups(params, sec, prev, path.front(), flags);

    for (std::size_t step = 1; step < path.size(); ++step) {
        EigenDecomposition cur =
            step + 1 == path.size() && path[step] == g_target && !dec.energies.empty()
                ? dec
                : sector_eigens(sec, path[step]);
        // Subspace overlap against clusters of the previous step.
        const auto clusters = degenerate_clusters(prev.energies);
        std::vector<int> next_groups(static_cast<std::size_t>(dim), 0);
        std::vector<bool> next_flags(std::size_t(dim), false);
        for (int m = 0; m < dim; ++m) {
            double best_w = -1.0;
            int best_cluster = 0;
            for (int c = 0; c < int(clusters.size()); ++c) {
                double w = 0.0;
                for (int a : clusters[std::size_t(c)])
                    w += std::norm(Complex(
                        prev.states.col(a).dot(cur.states.col(m))));
                if (w > best_w) {
                    best_w = w;
                    best_cluster = c;
                }
            }
            const int src = clusters[std::size_t(best_cluster)].front();
            next_groups[std::size_t(m)] = groups[std::size_t(src)];
            next_flags[std::size_t(m)] =
                flags[std::size_t(src)] || best_w < 0.5;
        }
        prev = std::move(cur);
        groups = std::move(next_groups);
        flags = std::move(next_flags);
    }

    if (dec.energies.empty()) dec = std::move(prev);
    // d indexes states within (n, k) by ascending energy.
    std::map<int, int> counter;
    for (int m = 0; m < dim; ++m) {
        SymmetryLabels& l = dec.labels[std::size_t(m)];
        l.z2 = sec.basis.z2;
        l.momentum_index = sec.basis.momentum_index;
        l.group_index = groups[std::size_t(m)];
        l.flagged = flags[std::size_t(m)];
        l.degeneracy_index = ++counter[l.group_index];
    }
}

std::vector<LabeledLevel> labeled_spectrum(const HeisenbergParams& params) {
    params.validate();
    const int N = params.n_sites;
    std::vector<LabeledLevel> levels;
    for (int k = 0; k < N; ++k) {
        for (int z2 : {+1, -1}) {
            SectorHamiltonian sec = sector_hamiltonian(params, k, z2);
            if (sec.basis.dim() == 0) continue;
            EigenDecomposition dec = sector_eigens(sec, params.field);
            classify_eigenstates(params, sec, dec);
            for (int m = 0; m < sec.basis.dim(); ++m)
                levels.push_back({dec.energies[std::size_t(m)],
                                  dec.labels[std::size_t(m)], 1});
        }
    }
    std::sort(levels.begin(), levels.end(),
              [](const LabeledLevel& a, const LabeledLevel& b) {
                  return a.energy < b.energy;
              });
    // Degeneracy D across all sectors.
    const double scale =
        std::max(1.0, std::abs(levels.empty() ? 0.0 : levels.back().energy));
    std::size_t i = 0;
    while (i < levels.size()) {
        std::size_t j = i + 1;
        while (j < levels.size() &&
               levels[j].energy - levels[j - 1].energy < 1e-8 * scale)
            ++j;
        for (std::size_t m = i; m < j; ++m) levels[m].degeneracy = int(j - i);
        i = j;
    }
    return levels;
}

PerturbativeLevels perturbative_levels(const HeisenbergParams& params) {
    params.validate();
    const int N = params.n_sites;
    const double g = params.field;
    const double dx = params.delta_x, dy = params.delta_y, dz = params.delta_z;

    PerturbativeLevels out;
    const double dmax = params.max_anisotropy();
    out.validity = g >= 5.0 * dmax
                       ? (g >= 10.0 * dmax ? Validity::valid : Validity::marginal)
                       : Validity::invalid;

    out.e0_per_site = -g - dx;
    out.phi0_first_order_coeff = 0.25 * (dz - dy);
    const int channels = (N - 1) / 2;
    for (int d = 1; d <= channels; ++d) {
        const double band =
            (4.0 / double(N)) * std::abs(dz + dy) *
            std::cos(2.0 * kPi * double(d) / double(N + 1));
        out.e20d_per_site.push_back(-g * (1.0 - 4.0 / double(N)) -
                                    dx * (1.0 - 8.0 / double(N)) + band);
        out.arrow_overlap_20d.push_back(
            -0.5 * (dz - dy) * std::sqrt(double(N) / double(N + 1)) *
            std::sin(2.0 * kPi * double(d) / double(N + 1)));
    }
    return out;
}

double matrix_element_hd0(int d, double s, const HeisenbergParams& params,
                          const FieldSchedule& schedule) {
    params.validate();
    const int N = params.n_sites;
    if (d < 1 || d > (N - 1) / 2)
        throw ValidationError("matrix_element_hd0: d out of range");
    const double g = schedule.g_at(s);
    if (g <= 0) throw ValidationError("matrix_element_hd0 needs g > 0");
    return -2.0 * params.coupling * (params.delta_z - params.delta_y) *
           (schedule.dg_ds() / g) * std::sqrt(double(N) / double(N + 1)) *
           std::sin(2.0 * kPi * double(d) / double(N + 1));
}

PeEstimate pe_heisenberg(const HeisenbergParams& params, const FieldSchedule& schedule,
                         const Units& units) {
    params.validate();
    schedule.validate();
    PeEstimate est;
    const double g1 = schedule.g_end;
    const double dmax = params.max_anisotropy();
    est.validity = g1 >= 5.0 * dmax
                       ? (g1 >= 10.0 * dmax ? Validity::valid : Validity::marginal)
                       : Validity::invalid;
    const double dzy = params.delta_z - params.delta_y;
    const double pref = units.hbar / (params.coupling * schedule.duration);
    est.p_e = pref * pref / 256.0 * dzy * dzy * (schedule.g_start - g1) *
              (schedule.g_start - g1) * double(params.n_sites) /
              std::pow(g1, 6.0);
    return est;
}

HeisenbergSweepResult tdse_sweep(const HeisenbergParams& params,
                                 const FieldSchedule& schedule,
                                 const IntegratorOptions& opts, const Units& units) {
    HeisenbergParams p = params;
    p.validate(13);
    schedule.validate();
    SectorHamiltonian sec = sector_hamiltonian(params, 0, +1);
    const int dim = sec.basis.dim();

    EigenDecomposition start = sector_eigens(sec, schedule.g_start);
    VectorXcd psi = start.states.col(0);

    const double inv_hbar = 1.0 / units.hbar;
    MatrixXcd h_work(dim, dim);
    auto rhs = [&](double t, const VectorXcd& y, VectorXcd& dydt) {
        const double g = schedule.g_at(t / schedule.duration);
        h_work.noalias() = sec.interaction + g * sec.field;
        dydt.noalias() = Complex(0.0, -inv_hbar) * (h_work * y);
    };
    try {
        integrate(rhs, psi, 0.0, schedule.duration, opts);
    } catch (const NumericalError& e) {
        throw SweepError(e.what(), 0);
    }

    HeisenbergSweepResult res;
    res.norm_error = std::abs(psi.squaredNorm() - 1.0);
    if (res.norm_error > 1e-6) throw SweepError("sector norm drift exceeds 1e-6", 0);

    HeisenbergParams at_end = params;
    at_end.field = schedule.g_end;
    EigenDecomposition end = sector_eigens(sec, schedule.g_end);
    classify_eigenstates(at_end, sec, end);

    res.p_e = 1.0 - std::norm(Complex(end.states.col(0).dot(psi)));
    const int channels = (params.n_sites - 1) / 2;
    res.p0d.assign(std::size_t(channels), 0.0);
    for (int m = 1; m < dim; ++m) {
        const double w = std::norm(Complex(end.states.col(m).dot(psi)));
        const SymmetryLabels& l = end.labels[std::size_t(m)];
        if (l.group_index == 2 && l.degeneracy_index <= channels) {
            res.p0d[std::size_t(l.degeneracy_index - 1)] += w;
            res.group2_weight += w;
        } else {
            res.other_excited_weight += w;
        }
    }
    return res;
}

}  // namespace spinsweep
