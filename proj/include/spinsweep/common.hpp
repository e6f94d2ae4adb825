#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace spinsweep {

inline constexpr const char* kVersion = "spinsweep 0.1.0";

/// Energy/time conventions. Energies are expressed in units of the chain
/// coupling J; times in units of hbar/J unless hbar is overridden.
struct Units {
    double hbar = 1.0;
};

/// Soft validity of closed-form estimates ("much greater/less than"
/// predicates are graded, not binary).
enum class Validity { valid, marginal, invalid };

const char* to_string(Validity v);

/// Parameter or precondition violations (CLI maps these to exit code 2).
class ValidationError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Numerical failures: integrator underflow, norm drift, missing brackets
/// (CLI maps these to exit code 3).
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Integrator failure tagged with the mode/channel that produced it.
class SweepError : public NumericalError {
  public:
    SweepError(const std::string& what, int mode)
        : NumericalError(what + " (mode " + std::to_string(mode) + ")"), mode_(mode) {}
    int mode() const { return mode_; }

  private:
    int mode_ = -1;
};

/// Worker-count resolution: 0 picks the default, which is the
/// SPINSWEEP_THREADS environment variable if set, else all hardware threads.
int default_threads();
int resolve_threads(int requested);

/// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Slope of log(y) vs log(x); all entries must be positive.
double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Maximize a smooth scalar function on [a, b] by golden-section search.
double golden_max(const std::function<double(double)>& f, double a, double b,
                  double tol = 1e-12);

/// Inclusive numeric grid a, a+step, ..., b (tolerant of roundoff at b).
std::vector<double> make_grid(double a, double step, double b);

}  // namespace spinsweep
