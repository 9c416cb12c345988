// report_io.hpp -- machine-readable sweep reports.

#pragma once

#include "iftt/simulator.hpp"

#include "json.hpp"

#include <string>

namespace iftt {

nlohmann::json sweep_report_to_json(const SweepReport& report);

/// Pretty-printed, newline-terminated, byte-identical for identical reports.
std::string serialize_sweep_report(const SweepReport& report);

} // namespace iftt
