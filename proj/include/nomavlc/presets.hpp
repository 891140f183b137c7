#pragma once

#include <string>
#include <vector>

#include "nomavlc/config.hpp"

namespace nomavlc {

std::vector<std::string> preset_names();

// primary verb a preset belongs to
Verb preset_verb(const std::string& name);

// true when the preset may also drive the given verb (fig10/fig11 carry a
// power budget so `allocate` can reuse them)
bool preset_allows(const std::string& name, Verb verb);

ExperimentConfig preset_config(const std::string& name);

// normalized LOS gains for receivers at the given lateral radii, strongest = 1
std::vector<double> gains_from_radii(const std::vector<double>& radii,
                                     double led_height, double half_angle_deg);

}  // namespace nomavlc
