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

#include <Eigen/Core>
#include <vector>

#include "mgms/config.hpp"
#include "mgms/rng.hpp"

namespace mgms {

// User positions for one cell realization: per-group distances from the
// transmitter (km) plus the pathloss calibration constant in effect.
struct UserDrop {
    std::vector<Eigen::VectorXd> distances;
    double xi = 1.0;
};

// One channel realization.  For group i, user k:
//   h_ik = sqrt(beta_ik) * g_ik
// where beta_ik is the large-scale gain and g_ik has i.i.d. unit-variance
// circularly-symmetric complex Gaussian entries.  channels[i] stores the h_ik
// as columns of an N x K_i matrix; fading[i] stores the matching g_ik, so the
// identity above holds exactly by construction.
struct ChannelSet {
    std::vector<Eigen::MatrixXcd> channels;
    std::vector<Eigen::VectorXd> beta;
    std::vector<Eigen::MatrixXcd> fading;

    int num_groups() const { return static_cast<int>(channels.size()); }
    int num_antennas() const {
        return channels.empty() ? 0 : static_cast<int>(channels[0].rows());
    }
    int users_in(int group) const {
        return static_cast<int>(channels[group].cols());
    }
    int total_users() const;
};

// Distance-based large-scale gain beta = xi * d^(-exponent).
// Errors: d <= 0 or xi <= 0 -> std::invalid_argument.
double pathloss_variance(double distance, double xi, double exponent);

// Pathloss constant xi chosen so that a user at the cell boundary sees the
// configured single-antenna SNR: xi = noise * 10^(snr_db/10) * radius^exponent.
double calibrate_pathloss_constant(const SystemConfig& config);

// Draws per-user distances uniformly from [min_distance, max_distance), in a
// fixed order (groups ascending, users ascending), and records the calibrated
// pathloss constant.
UserDrop generate_drop(const SystemConfig& config, RngStream& stream);

// Draws the small-scale fading on top of a drop and forms h = sqrt(beta) g.
// Entry order is fixed (groups, then users, then antennas) so equal seeds give
// bit-identical channels.
ChannelSet generate_channels(const UserDrop& drop, const SystemConfig& config,
                             RngStream& stream);

} // namespace mgms
