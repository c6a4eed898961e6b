// mgms — joint group scheduling and multicast beamforming simulator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mgms/config.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mgms {

void PsaSettings::validate() const {
    if (max_iterations < 1) {
        throw std::invalid_argument("psa: max_iterations must be at least 1");
    }
    if (!(initial_step > 0.0) || !std::isfinite(initial_step)) {
        throw std::invalid_argument("psa: initial_step must be positive");
    }
    if (!(improvement_tol > 0.0) || !std::isfinite(improvement_tol)) {
        throw std::invalid_argument("psa: improvement_tol must be positive");
    }
    if (improvement_window < 1) {
        throw std::invalid_argument("psa: improvement_window must be at least 1");
    }
}

void SystemConfig::validate() const {
    if (num_antennas < 1) {
        throw std::invalid_argument("system: num_antennas must be at least 1");
    }
    if (num_groups < 1) {
        throw std::invalid_argument("system: num_groups must be at least 1");
    }
    if (static_cast<int>(users_per_group.size()) != num_groups) {
        throw std::invalid_argument(
            "system: users_per_group must list exactly num_groups entries, got " +
            std::to_string(users_per_group.size()));
    }
    for (int k : users_per_group) {
        if (k < 1) {
            throw std::invalid_argument("system: every group needs at least one user");
        }
    }
    if (!(power_budget > 0.0) || !std::isfinite(power_budget)) {
        throw std::invalid_argument("system: power_budget must be positive");
    }
    if (!(noise_variance > 0.0) || !std::isfinite(noise_variance)) {
        throw std::invalid_argument("system: noise_variance must be positive");
    }
    if (!(cell_radius > 0.0) || !std::isfinite(cell_radius)) {
        throw std::invalid_argument("system: cell_radius must be positive");
    }
    if (!(pathloss_exponent > 0.0) || !std::isfinite(pathloss_exponent)) {
        throw std::invalid_argument("system: pathloss_exponent must be positive");
    }
    if (!std::isfinite(boundary_snr_db)) {
        throw std::invalid_argument("system: boundary_snr_db must be finite");
    }
    if (!(min_distance > 0.0) || min_distance > max_distance ||
        max_distance > cell_radius) {
        throw std::invalid_argument(
            "system: need 0 < min_distance <= max_distance <= cell_radius");
    }
}

} // namespace mgms
