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

#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace mgms {

// Settings shared by the projected-subgradient solvers (group-direction and
// per-slot max-min beamforming).  The step at iteration l is
// initial_step / sqrt(l), applied along the normalized ascent direction and
// scaled by the current iterate norm, followed by radial projection back to
// the power boundary.
struct PsaSettings {
    int max_iterations = 300;
    double initial_step = 1.0;
    // Stop early when the best objective improves by less than
    // improvement_tol (relative) over improvement_window iterations.
    double improvement_tol = 1e-6;
    int improvement_window = 50;

    void validate() const;

    bool operator==(const PsaSettings&) const = default;
};

// Static description of one downlink cell: an N-antenna transmitter serving G
// multicast groups with K_i single-antenna users each.  Distances are in km;
// power and noise are linear (not dB).  boundary_snr_db is the single-antenna
// receive SNR at the cell boundary used to calibrate the pathloss constant.
struct SystemConfig {
    int num_antennas = 8;
    int num_groups = 1;
    std::vector<int> users_per_group;
    double power_budget = 10.0;
    double noise_variance = 1.0;
    double cell_radius = 1.0;
    double pathloss_exponent = 3.0;
    double boundary_snr_db = -5.0;
    double min_distance = 0.02;
    double max_distance = 1.0;
    std::uint64_t rng_seed = 1;

    int total_users() const {
        return std::accumulate(users_per_group.begin(), users_per_group.end(), 0);
    }

    void validate() const;

    bool operator==(const SystemConfig&) const = default;
};

} // namespace mgms
