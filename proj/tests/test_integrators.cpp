#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "spinsweep/ode.hpp"

using namespace spinsweep;
using Eigen::Vector2cd;

namespace {

// i dpsi/dt = H psi with constant H = sigma_x has the closed solution
// psi(t) = cos(t) psi0 - i sin(t) sx psi0.
struct ConstSigmaX {
    void operator()(double, const Vector2cd& y, Vector2cd& dydt) const {
        dydt[0] = std::complex<double>(0.0, -1.0) * y[1];
        dydt[1] = std::complex<double>(0.0, -1.0) * y[0];
    }
};

}  // namespace

TEST_CASE("adaptive integrator reproduces a closed-form rotation") {
    Vector2cd psi(1.0, 0.0);
    integrate_adaptive(ConstSigmaX{}, psi, 0.0, 5.0, IntegratorOptions::adaptive(1e-11, 1e-13));
    CHECK(std::abs(psi[0] - std::cos(5.0)) < 1e-9);
    CHECK(std::abs(psi[1] - std::complex<double>(0.0, -std::sin(5.0))) < 1e-9);
    CHECK(std::abs(psi.squaredNorm() - 1.0) < 1e-10);
}

TEST_CASE("rk4 converges at fourth order") {
    auto run = [](double step) {
        Vector2cd psi(1.0, 0.0);
        integrate_rk4(ConstSigmaX{}, psi, 0.0, 3.0, step);
        return psi;
    };
    const Vector2cd exact(std::cos(3.0), std::complex<double>(0.0, -std::sin(3.0)));
    const double e1 = (run(0.02) - exact).norm();
    const double e2 = (run(0.01) - exact).norm();
    CHECK(e1 / e2 == doctest::Approx(16.0).epsilon(0.15));
}

TEST_CASE("adaptive integrator handles a driven system") {
    // i dpsi/dt = (t sx) psi; compare against a very fine rk4 reference.
    auto rhs = [](double t, const Vector2cd& y, Vector2cd& dydt) {
        dydt[0] = std::complex<double>(0.0, -t) * y[1];
        dydt[1] = std::complex<double>(0.0, -t) * y[0];
    };
    Vector2cd ref(1.0, 0.0);
    integrate_rk4(rhs, ref, 0.0, 4.0, 1e-5);
    Vector2cd psi(1.0, 0.0);
    integrate_adaptive(rhs, psi, 0.0, 4.0, IntegratorOptions::adaptive(1e-10, 1e-13));
    CHECK((psi - ref).norm() < 1e-8);
}

TEST_CASE("integrator failure surfaces as NumericalError") {
    auto rhs = [](double, const Vector2cd& y, Vector2cd& dydt) { dydt = y; };
    Vector2cd psi(1.0, 0.0);
    IntegratorOptions opts = IntegratorOptions::adaptive(1e-12, 1e-14);
    opts.max_steps = 3;
    CHECK_THROWS_AS(integrate_adaptive(rhs, psi, 0.0, 100.0, opts), NumericalError);
}
