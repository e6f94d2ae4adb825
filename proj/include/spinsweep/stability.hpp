#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "spinsweep/dense.hpp"
#include "spinsweep/params.hpp"

namespace spinsweep {

/// Static symmetry-breaking perturbation V = J sum_j eps_j n^(j).sigma^(j).
/// Axis components are expressed in the field frame (third component along
/// the external field); only the transverse part excites at strong field,
/// which is what the effective strength measures:
///   eps = sqrt( (1/N) sum_j eps_j^2 (n1_j^2 + n2_j^2) ).
struct PerturbationSpec {
    std::vector<double> strengths;            // eps_j
    std::vector<std::array<double, 3>> axes;  // unit vectors n^(j)

    int n_sites() const { return int(strengths.size()); }
    double effective_epsilon() const;
    void validate(int expected_sites) const;

    static PerturbationSpec zero(int n_sites);
    /// Uniform strength along one axis on every site.
    static PerturbationSpec uniform(int n_sites, double eps,
                                    const std::array<double, 3>& axis);
    /// Random strengths in [0, eps_scale] and random unit axes.
    static PerturbationSpec random(int n_sites, double eps_scale, std::uint64_t seed);
};

struct PerturbedIsingResult {
    double heating_ratio = 0.0;        // (<H> - E0) / width
    double mean_above_ground = 0.0;    // units J
    double spectrum_width = 0.0;       // unperturbed width J sum Lambda_k(g1)
    double weight_ground = 0.0;        // |<e0|psi>|^2 of H(g1) + V
    double weight_first_excited = 0.0;
    double weight_above = 0.0;
};

/// Dense full-space evolution of the Ising chain with V = J eps sz_0
/// (the perturbation breaks Z2 and translation, so no sector reduction).
/// The schedule must cross the critical point downward. N <= 12.
PerturbedIsingResult ising_perturbed_sweep(const IsingParams& params,
                                           const FieldSchedule& schedule,
                                           double epsilon,
                                           const IntegratorOptions& opts,
                                           const Units& units = {}, int threads = 0);

/// Closed-form excitation bound p_V = (eps / (2 g0))^2 N.
struct PerturbationBound {
    double p_v = 0.0;
    Validity validity = Validity::valid;
};

PerturbationBound heisenberg_perturbation_bound(const PerturbationSpec& spec,
                                                double g0,
                                                const HeisenbergParams& params);

/// Dense full-space Heisenberg evolution under H(t) + V, starting from the
/// unperturbed ground state at g_start; returns the deficit against the
/// ground state of the full final Hamiltonian H(g_end) + V. N <= 11.
double heisenberg_perturbed_sweep(const HeisenbergParams& params,
                                  const FieldSchedule& schedule,
                                  const PerturbationSpec& spec,
                                  const IntegratorOptions& opts,
                                  const Units& units = {}, int threads = 0);

}  // namespace spinsweep
