// SPDX-License-Identifier: Apache-2.0
#pragma once

// Named run configurations, one per figure panel of the reference study.

#include <string>
#include <string_view>
#include <vector>

#include "qbrain/dynamics.hpp"

namespace qbrain {

struct Preset {
  std::string name;
  SimulationConfig config;
  std::string note;  ///< figure/panel the preset reproduces
};

/// The whole catalog in a fixed order.
const std::vector<Preset>& preset_catalog();

/// Throws std::out_of_range listing the catalog for an unknown name.
const Preset& find_preset(std::string_view name);

SimulationConfig preset(std::string_view name);

std::vector<std::string> preset_names();

struct PanelReference {
  std::string panel;   ///< e.g. "fig4-A-tau10"
  std::string preset;  ///< preset reproducing it
};

/// Every figure panel with the preset that reproduces it.
const std::vector<PanelReference>& panel_manifest();

}  // namespace qbrain
