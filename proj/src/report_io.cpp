#include "iftt/report_io.hpp"

namespace iftt {

using nlohmann::json;

json sweep_report_to_json(const SweepReport& report)
{
    json cells = json::array();
    for (const CellReport& c : report.cells) {
        json episodes = json::array();
        for (const EpisodeStats& e : c.per_episode)
            episodes.push_back({{"episode", e.episode}, {"meanPresses", e.mean}, {"medianPresses", e.median},
                                {"maxPresses", e.max}});
        json cell;
        cell["nButtons"] = c.cell.n_buttons;
        cell["strategy"] = to_string(c.cell.strategy);
        cell["trials"] = c.trials;
        cell["successes"] = c.successes;
        cell["successRate"] = c.success_rate;
        cell["nonConvergence"] = c.non_convergence;
        cell["soundnessViolations"] = c.soundness_violations;
        cell["transferMismatches"] = c.transfer_mismatches;
        cell["meanTotalPresses"] = c.mean_total_presses;
        cell["maxEpisodePresses"] = c.max_episode_presses;
        cell["episodes"] = std::move(episodes);
        cells.push_back(std::move(cell));
    }
    json doc;
    doc["version"] = 1;
    doc["seed"] = report.spec.seed;
    doc["trials"] = report.spec.trials;
    doc["pinLength"] = report.spec.pin_length;
    doc["cells"] = std::move(cells);
    return doc;
}

std::string serialize_sweep_report(const SweepReport& report)
{
    return sweep_report_to_json(report).dump(2) + "\n";
}

} // namespace iftt
