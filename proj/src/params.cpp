#include "spinsweep/params.hpp"

#include <string>

namespace spinsweep {

void IsingParams::validate() const {
    if (n_sites < 3 || n_sites % 2 == 0)
        throw ValidationError("n_sites must be odd and >= 3, got " +
                              std::to_string(n_sites));
    if (!(coupling > 0)) throw ValidationError("coupling J must be > 0");
    if (field < 0) throw ValidationError("field g must be >= 0");
}

void HeisenbergParams::validate(int dense_cap) const {
    if (n_sites < 3 || n_sites % 2 == 0)
        throw ValidationError("n_sites must be odd and >= 3, got " +
                              std::to_string(n_sites));
    if (n_sites > dense_cap)
        throw ValidationError("n_sites " + std::to_string(n_sites) +
                              " exceeds dense cap " + std::to_string(dense_cap));
    if (!(coupling > 0)) throw ValidationError("coupling J must be > 0");
    if (field < 0) throw ValidationError("field g must be >= 0");
}

double HeisenbergParams::max_anisotropy() const {
    return std::max({std::abs(delta_x), std::abs(delta_y), std::abs(delta_z)});
}

FieldSchedule FieldSchedule::from_duration(double g0, double g1, double T) {
    FieldSchedule s{g0, g1, T};
    s.validate();
    return s;
}

FieldSchedule FieldSchedule::from_rate(double g0, double g1, double rate) {
    if (rate == 0) throw ValidationError("schedule rate must be nonzero");
    double T = (g1 - g0) / rate;
    if (!(T > 0))
        throw ValidationError("schedule rate has the wrong sign for g0 -> g1");
    FieldSchedule s{g0, g1, T};
    s.validate();
    return s;
}

void FieldSchedule::validate() const {
    if (!(duration > 0)) throw ValidationError("schedule duration must be > 0");
    if (g_start < 0 || g_end < 0) throw ValidationError("field must stay >= 0");
}

}  // namespace spinsweep
