#pragma once

#include <string>
#include <vector>

#include "cdsim/config.hpp"
#include "cdsim/runner.hpp"

namespace cdsim::harness {

// One preset per figure of the reproduced study.
const std::vector<std::string>& preset_ids();
bool is_preset(const std::string& id);

// Materialized parameter sets (also used directly by tests).
SystemConfig fig1_config(bool imag_only);
SystemConfig fig2_config(char which);           // 'a', 'b', 'c'
SystemConfig fig3_config(bool matched_cd);      // false: RWA CD, true: projector CD
ScanSpec fig4_spec(char which);                 // 'a'..'d'
SystemConfig fig5_effective_config(effective::Variant v);
SystemConfig fig5_three_level_config();

// Runs a preset, writing its CSV output(s) under out_dir. dt_override > 0
// replaces the preset's fixed step count.
RunSummary run_preset(const std::string& id, const std::string& out_dir, int threads,
                      double dt_override = 0);

}  // namespace cdsim::harness
