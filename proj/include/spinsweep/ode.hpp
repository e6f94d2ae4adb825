#pragma once

#include <algorithm>
#include <cmath>

#include "spinsweep/common.hpp"
#include "spinsweep/params.hpp"

namespace spinsweep {

/// Classical fixed-step 4th-order Runge-Kutta. Rhs signature:
///   rhs(double t, const State& y, State& dydt).
template <typename State, typename Rhs>
void integrate_rk4(const Rhs& rhs, State& y, double t0, double t1, double step) {
    if (!(step > 0)) throw ValidationError("rk4: step must be > 0");
    const double span = t1 - t0;
    const long n = std::max(1l, std::lround(std::ceil(span / step)));
    const double h = span / double(n);
    State k1 = y, k2 = y, k3 = y, k4 = y, tmp = y;
    double t = t0;
    for (long i = 0; i < n; ++i) {
        rhs(t, y, k1);
        tmp = y + (0.5 * h) * k1;
        rhs(t + 0.5 * h, tmp, k2);
        tmp = y + (0.5 * h) * k2;
        rhs(t + 0.5 * h, tmp, k3);
        tmp = y + h * k3;
        rhs(t + h, tmp, k4);
        y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t = t0 + span * double(i + 1) / double(n);
    }
}

namespace detail {

template <typename State>
double error_ratio(const State& err, const State& y0, const State& y1,
                   double atol, double rtol) {
    double sum = 0.0;
    for (long i = 0; i < err.size(); ++i) {
        double scale = atol + rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
        double e = std::abs(err[i]) / scale;
        sum += e * e;
    }
    return std::sqrt(sum / double(err.size()));
}

}  // namespace detail

/// Embedded Dormand-Prince 5(4) pair with PI step control.
/// Throws NumericalError on step underflow or step-budget exhaustion.
template <typename State, typename Rhs>
void integrate_adaptive(const Rhs& rhs, State& y, double t0, double t1,
                        const IntegratorOptions& opts) {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                            a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600,
                            e3 = 500.0 / 1113 - 7571.0 / 16695,
                            e4 = 125.0 / 192 - 393.0 / 640,
                            e5 = -2187.0 / 6784 + 92097.0 / 339200,
                            e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

    const double rtol = opts.rel_tol, atol = opts.abs_tol;
    const double span = t1 - t0;
    if (!(span > 0)) return;

    State k1 = y, k2 = y, k3 = y, k4 = y, k5 = y, k6 = y, k7 = y;
    State ytmp = y, ynew = y, err = y;

    double t = t0;
    double h = span * 1e-3;
    double prev_ratio = 1.0;
    bool have_k1 = false;
    long steps = 0;

    while (t < t1) {
        if (++steps > opts.max_steps)
            throw NumericalError("adaptive integrator exceeded step budget");
        h = std::min(h, t1 - t);
        if (!(h > std::abs(t) * 1e-15 + 1e-300))
            throw NumericalError("adaptive integrator step underflow");

        if (!have_k1) rhs(t, y, k1);
        ytmp = y + (h * a21) * k1;
        rhs(t + c2 * h, ytmp, k2);
        ytmp = y + (h * a31) * k1 + (h * a32) * k2;
        rhs(t + c3 * h, ytmp, k3);
        ytmp = y + (h * a41) * k1 + (h * a42) * k2 + (h * a43) * k3;
        rhs(t + c4 * h, ytmp, k4);
        ytmp = y + (h * a51) * k1 + (h * a52) * k2 + (h * a53) * k3 + (h * a54) * k4;
        rhs(t + c5 * h, ytmp, k5);
        ytmp = y + (h * a61) * k1 + (h * a62) * k2 + (h * a63) * k3 +
               (h * a64) * k4 + (h * a65) * k5;
        rhs(t + h, ytmp, k6);
        ynew = y + (h * b1) * k1 + (h * b3) * k3 + (h * b4) * k4 + (h * b5) * k5 +
               (h * b6) * k6;
        rhs(t + h, ynew, k7);
        err = (h * e1) * k1 + (h * e3) * k3 + (h * e4) * k4 + (h * e5) * k5 +
              (h * e6) * k6 + (h * e7) * k7;

        double ratio = detail::error_ratio(err, y, ynew, atol, rtol);
        if (ratio <= 1.0) {
            t += h;
            y = ynew;
            k1 = k7;  // FSAL
            have_k1 = true;
            // PI controller
            double fac = 0.9 * std::pow(std::max(ratio, 1e-10), -0.7 / 5.0) *
                         std::pow(std::max(prev_ratio, 1e-10), 0.4 / 5.0);
            prev_ratio = std::max(ratio, 1e-10);
            h *= std::clamp(fac, 0.2, 5.0);
        } else {
            h *= std::max(0.2, 0.9 * std::pow(ratio, -0.2));
            have_k1 = true;  // k1 still valid at unchanged t
        }
    }
}

/// Dispatch on IntegratorOptions::method.
template <typename State, typename Rhs>
void integrate(const Rhs& rhs, State& y, double t0, double t1,
               const IntegratorOptions& opts) {
    if (opts.method == IntegratorOptions::Method::rk4_fixed)
        integrate_rk4(rhs, y, t0, t1, opts.fixed_step);
    else
        integrate_adaptive(rhs, y, t0, t1, opts);
}

}  // namespace spinsweep
