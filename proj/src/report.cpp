#include "spinsweep/report.hpp"

namespace spinsweep {

Json to_json(const FieldSchedule& schedule) {
    return Json{{"g_start", schedule.g_start},
                {"g_end", schedule.g_end},
                {"duration", schedule.duration},
                {"rate", schedule.rate()}};
}

Json to_json(const ExcitationReport& report) {
    Json channels = Json::array();
    for (const ChannelReport& ch : report.channels)
        channels.push_back(Json{{"rank", ch.rank},
                                {"mode", ch.mode},
                                {"excitation_energy", ch.energy},
                                {"p", ch.p}});
    return Json{{"schedule", to_json(report.schedule)},
                {"channels", channels},
                {"p_total", report.p_total},
                {"p_exact", report.p_exact},
                {"p_total_clamped", report.p_total_clamped},
                {"mean_energy_above_ground", report.energy.mean_above_ground},
                {"energy_variance", report.energy.variance},
                {"spectrum_width", report.energy.width},
                {"norm_error", report.norm_error}};
}

Json to_json(const HeisenbergSweepResult& result, const FieldSchedule& schedule) {
    Json p0d = Json::array();
    for (std::size_t d = 0; d < result.p0d.size(); ++d)
        p0d.push_back(Json{{"d", d + 1}, {"p", result.p0d[d]}});
    return Json{{"schedule", to_json(schedule)},
                {"p_e", result.p_e},
                {"p0d", p0d},
                {"group2_weight", result.group2_weight},
                {"other_excited_weight", result.other_excited_weight},
                {"norm_error", result.norm_error}};
}

}  // namespace spinsweep
