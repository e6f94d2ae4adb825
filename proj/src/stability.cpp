#include "spinsweep/stability.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "spinsweep/ising_exact.hpp"
#include "spinsweep/ode.hpp"

namespace spinsweep {

double PerturbationSpec::effective_epsilon() const {
    double acc = 0.0;
    for (std::size_t j = 0; j < strengths.size(); ++j) {
        const auto& n = axes[j];
        acc += strengths[j] * strengths[j] * (n[0] * n[0] + n[1] * n[1]);
    }
    return std::sqrt(acc / double(strengths.size()));
}

void PerturbationSpec::validate(int expected_sites) const {
    if (n_sites() != expected_sites || int(axes.size()) != expected_sites)
        throw ValidationError("perturbation spec does not match chain size");
    for (const auto& n : axes) {
        const double len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
        if (std::abs(len - 1.0) > 1e-12)
            throw ValidationError("perturbation axes must be unit vectors");
    }
}

PerturbationSpec PerturbationSpec::zero(int n_sites) {
    PerturbationSpec s;
    s.strengths.assign(std::size_t(n_sites), 0.0);
    s.axes.assign(std::size_t(n_sites), {0.0, 0.0, 1.0});
    return s;
}

PerturbationSpec PerturbationSpec::uniform(int n_sites, double eps,
                                           const std::array<double, 3>& axis) {
    PerturbationSpec s;
    const double len =
        std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
    if (len <= 0) throw ValidationError("axis must be nonzero");
    s.strengths.assign(std::size_t(n_sites), eps);
    s.axes.assign(std::size_t(n_sites),
                  {axis[0] / len, axis[1] / len, axis[2] / len});
    return s;
}

PerturbationSpec PerturbationSpec::random(int n_sites, double eps_scale,
                                          std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    PerturbationSpec s;
    for (int j = 0; j < n_sites; ++j) {
        s.strengths.push_back(eps_scale * uni(rng));
        std::array<double, 3> n{gauss(rng), gauss(rng), gauss(rng)};
        double len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
        if (len < 1e-6) {
            n = {0.0, 1.0, 0.0};
            len = 1.0;
        }
        s.axes.push_back({n[0] / len, n[1] / len, n[2] / len});
    }
    return s;
}

namespace {

/// Shared dense TDSE driver: i hbar dpsi/dt = (H(g(t)) + V) psi.
VectorXcd evolve_dense(const HeisenbergParams& model, const FieldSchedule& schedule,
                       const SitePerturbation& v, VectorXcd psi,
                       const IntegratorOptions& opts, const Units& units,
                       int threads) {
    const int nt = resolve_threads(threads);
    const double inv_hbar = 1.0 / units.hbar;
    HeisenbergParams p = model;
    bool has_v = false;
    for (double e : v.strengths) has_v |= (e != 0.0);

    auto rhs = [&](double t, const VectorXcd& y, VectorXcd& dydt) {
        p.field = schedule.g_at(t / schedule.duration);
        apply_heisenberg(p, y.data(), dydt.data(), nt);
        if (has_v)
            apply_site_perturbation(v, p.n_sites, y.data(), dydt.data(), nt);
        dydt *= Complex(0.0, -inv_hbar);
    };
    integrate(rhs, psi, 0.0, schedule.duration, opts);
    const double drift = std::abs(psi.squaredNorm() - 1.0);
    if (drift > 1e-6) throw NumericalError("dense norm drift exceeds 1e-6");
    return psi;
}

SitePerturbation to_site_perturbation(const PerturbationSpec& spec, double coupling) {
    SitePerturbation v;
    v.coupling = coupling;
    v.strengths = spec.strengths;
    v.axes = spec.axes;
    return v;
}

}  // namespace

PerturbedIsingResult ising_perturbed_sweep(const IsingParams& params,
                                           const FieldSchedule& schedule,
                                           double epsilon,
                                           const IntegratorOptions& opts,
                                           const Units& units, int threads) {
    params.validate();
    schedule.validate();
    if (params.n_sites > 12)
        throw ValidationError("ising_perturbed_sweep capped at N <= 12");
    if (!(schedule.g_start > 1.0) || !(schedule.g_end < 1.0))
        throw ValidationError("schedule must cross g = 1 downward");

    HeisenbergParams model;
    model.n_sites = params.n_sites;
    model.coupling = params.coupling;
    model.delta_x = model.delta_y = 0.0;
    model.delta_z = 1.0;
    model.field = schedule.g_start;

    // V = J eps sz_0: field-frame axis (0, 1, 0) maps to lab sz.
    PerturbationSpec spec = PerturbationSpec::zero(params.n_sites);
    spec.strengths[0] = epsilon;
    spec.axes[0] = {0.0, 1.0, 0.0};
    SitePerturbation v = to_site_perturbation(spec, params.coupling);

    const int dim = 1 << params.n_sites;
    const int nt = resolve_threads(threads);
    auto matvec_at = [&](double g) {
        return [&, g](const Complex* in, Complex* out) {
            HeisenbergParams p = model;
            p.field = g;
            apply_heisenberg(p, in, out, nt);
            apply_site_perturbation(v, p.n_sites, in, out, nt);
        };
    };

    LanczosResult start = lanczos_lowest(matvec_at(schedule.g_start), dim, 1, 300,
                                         1e-11, 11);
    VectorXcd psi = evolve_dense(model, schedule, v, start.vectors[0], opts, units,
                                 threads);

    LanczosResult end = lanczos_lowest(matvec_at(schedule.g_end), dim, 3, 400, 1e-11,
                                       13);

    PerturbedIsingResult res;
    VectorXcd hpsi(dim);
    matvec_at(schedule.g_end)(psi.data(), hpsi.data());
    const double mean = std::real(Complex(psi.dot(hpsi)));
    res.mean_above_ground = mean - end.values[0];
    double width = 0.0;
    for (int k = 0; k < params.n_sites; ++k)
        width += lambda_even(k, schedule.g_end, params.n_sites);
    res.spectrum_width = params.coupling * width;
    res.heating_ratio = res.mean_above_ground / res.spectrum_width;
    res.weight_ground = std::norm(Complex(end.vectors[0].dot(psi)));
    res.weight_first_excited =
        end.vectors.size() > 1 ? std::norm(Complex(end.vectors[1].dot(psi))) : 0.0;
    res.weight_above = 1.0 - res.weight_ground - res.weight_first_excited;
    return res;
}

PerturbationBound heisenberg_perturbation_bound(const PerturbationSpec& spec,
                                                double g0,
                                                const HeisenbergParams& params) {
    spec.validate(params.n_sites);
    if (!(g0 > 0)) throw ValidationError("g0 must be > 0");
    PerturbationBound b;
    const double eps = spec.effective_epsilon();
    b.p_v = (eps / (2.0 * g0)) * (eps / (2.0 * g0)) * double(params.n_sites);
    const double scale = std::max(params.max_anisotropy(),
                                  *std::max_element(spec.strengths.begin(),
                                                    spec.strengths.end()));
    b.validity = g0 >= 10.0 * scale
                     ? Validity::valid
                     : (g0 > scale ? Validity::marginal : Validity::invalid);
    return b;
}

double heisenberg_perturbed_sweep(const HeisenbergParams& params,
                                  const FieldSchedule& schedule,
                                  const PerturbationSpec& spec,
                                  const IntegratorOptions& opts, const Units& units,
                                  int threads) {
    params.validate(11);
    schedule.validate();
    spec.validate(params.n_sites);

    const int dim = 1 << params.n_sites;
    const int nt = resolve_threads(threads);
    SitePerturbation v = to_site_perturbation(spec, params.coupling);

    HeisenbergParams model = params;

    // Ideal preparation: unperturbed ground state at g_start.
    auto matvec_clean = [&](const Complex* in, Complex* out) {
        HeisenbergParams p = model;
        p.field = schedule.g_start;
        apply_heisenberg(p, in, out, nt);
    };
    LanczosResult start = lanczos_lowest(matvec_clean, dim, 1, 300, 1e-11, 17);

    VectorXcd psi =
        evolve_dense(model, schedule, v, start.vectors[0], opts, units, threads);

    // Reference: ground state of the full final Hamiltonian H(g1) + V.
    auto matvec_end = [&](const Complex* in, Complex* out) {
        HeisenbergParams p = model;
        p.field = schedule.g_end;
        apply_heisenberg(p, in, out, nt);
        apply_site_perturbation(v, p.n_sites, in, out, nt);
    };
    LanczosResult end = lanczos_lowest(matvec_end, dim, 1, 300, 1e-11, 19);
    return 1.0 - std::norm(Complex(end.vectors[0].dot(psi)));
}

}  // namespace spinsweep
