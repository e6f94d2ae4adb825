#pragma once

#include "spinsweep/heisenberg.hpp"
#include "spinsweep/io.hpp"
#include "spinsweep/ising_dynamics.hpp"

namespace spinsweep {

Json to_json(const FieldSchedule& schedule);
Json to_json(const ExcitationReport& report);
Json to_json(const HeisenbergSweepResult& result, const FieldSchedule& schedule);

}  // namespace spinsweep
