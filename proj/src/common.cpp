#include "spinsweep/common.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdlib>

namespace spinsweep {

const char* to_string(Validity v) {
    switch (v) {
        case Validity::valid: return "valid";
        case Validity::marginal: return "marginal";
        case Validity::invalid: return "invalid";
    }
    return "?";
}

int default_threads() {
    if (const char* env = std::getenv("SPINSWEEP_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    return omp_get_max_threads();
}

int resolve_threads(int requested) {
    return requested > 0 ? requested : default_threads();
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw ValidationError("fit_slope: need >= 2 points");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= double(x.size());
    my /= double(x.size());
    double num = 0, den = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        num += (x[i] - mx) * (y[i] - my);
        den += (x[i] - mx) * (x[i] - mx);
    }
    return num / den;
}

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> lx(x.size()), ly(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] <= 0 || y[i] <= 0)
            throw ValidationError("fit_loglog_slope: nonpositive entry");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }
    return fit_slope(lx, ly);
}

double golden_max(const std::function<double(double)>& f, double a, double b,
                  double tol) {
    constexpr double invphi = 0.6180339887498949;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        }
    }
    return f(0.5 * (a + b));
}

std::vector<double> make_grid(double a, double step, double b) {
    if (step <= 0 || b < a) throw ValidationError("make_grid: need step > 0 and b >= a");
    std::vector<double> g;
    long n = std::lround((b - a) / step);
    for (long i = 0; i <= n; ++i) {
        double v = a + double(i) * step;
        if (v > b + 0.5 * step) break;
        g.push_back(std::min(v, b));
    }
    if (g.empty() || g.back() < b - 1e-9 * std::max(1.0, std::abs(b))) g.push_back(b);
    return g;
}

}  // namespace spinsweep
