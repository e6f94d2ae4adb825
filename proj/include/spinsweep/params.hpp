#pragma once

#include <cmath>

#include "spinsweep/common.hpp"

namespace spinsweep {

/// Cyclic transverse-field Ising chain
///   H = -J sum_i ( sz_i sz_{i+1} + g sx_i ).
/// The free-fermion machinery requires an odd number of sites.
struct IsingParams {
    int n_sites = 3;        // N, odd and >= 3
    double coupling = 1.0;  // J > 0, sets the energy scale
    double field = 0.0;     // g >= 0, dimensionless

    void validate() const;
};

/// Cyclic anisotropic Heisenberg chain
///   H = -J sum_i ( dx sx sx + dy sy sy + dz sz sz + g sx_i ).
/// Dense paths cap the size at n_sites <= 14.
struct HeisenbergParams {
    int n_sites = 3;
    double coupling = 1.0;
    double delta_x = 0.0;
    double delta_y = 0.0;
    double delta_z = 1.0;
    double field = 0.0;

    void validate(int dense_cap = 14) const;
    double max_anisotropy() const;
};

/// Linear field ramp g(s) = g0 + s (g1 - g0), s in [0, 1], traversed in
/// time T (units hbar/J). rate() is the signed change rate dg/dt.
struct FieldSchedule {
    double g_start = 0.0;
    double g_end = 0.0;
    double duration = 1.0;  // T > 0

    static FieldSchedule from_duration(double g0, double g1, double T);
    /// rate must move g0 toward g1; T = (g1 - g0) / rate.
    static FieldSchedule from_rate(double g0, double g1, double rate);

    double g_at(double s) const { return g_start + s * (g_end - g_start); }
    double rate() const { return (g_end - g_start) / duration; }
    /// dg/ds, the ramp speed in schedule parameterization.
    double dg_ds() const { return g_end - g_start; }
    FieldSchedule reversed() const { return {g_end, g_start, duration}; }

    void validate() const;
};

struct IntegratorOptions {
    enum class Method { rk4_fixed, adaptive };

    Method method = Method::adaptive;
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    double fixed_step = 1e-3;    // time step for rk4_fixed
    long max_steps = 200000000;  // adaptive step budget

    static IntegratorOptions adaptive(double rtol = 1e-9, double atol = 1e-12) {
        IntegratorOptions o;
        o.method = Method::adaptive;
        o.rel_tol = rtol;
        o.abs_tol = atol;
        return o;
    }
    static IntegratorOptions rk4(double step) {
        IntegratorOptions o;
        o.method = Method::rk4_fixed;
        o.fixed_step = step;
        return o;
    }
};

}  // namespace spinsweep
