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

#include "mgms/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace mgms {

int ChannelSet::total_users() const {
    int n = 0;
    for (const auto& h : channels) {
        n += static_cast<int>(h.cols());
    }
    return n;
}

double pathloss_variance(double distance, double xi, double exponent) {
    if (!(distance > 0.0) || !std::isfinite(distance)) {
        throw std::invalid_argument("pathloss_variance: distance must be positive");
    }
    if (!(xi > 0.0) || !std::isfinite(xi)) {
        throw std::invalid_argument("pathloss_variance: xi must be positive");
    }
    return xi * std::pow(distance, -exponent);
}

double calibrate_pathloss_constant(const SystemConfig& config) {
    config.validate();
    // beta(radius) = xi * radius^(-exponent) must equal the boundary SNR times
    // the noise power, which pins xi.
    double snr = std::pow(10.0, config.boundary_snr_db / 10.0);
    return config.noise_variance * snr *
           std::pow(config.cell_radius, config.pathloss_exponent);
}

UserDrop generate_drop(const SystemConfig& config, RngStream& stream) {
    config.validate();
    UserDrop drop;
    drop.xi = calibrate_pathloss_constant(config);
    drop.distances.reserve(config.num_groups);
    for (int i = 0; i < config.num_groups; ++i) {
        Eigen::VectorXd d(config.users_per_group[i]);
        for (int k = 0; k < config.users_per_group[i]; ++k) {
            d(k) = stream.uniform(config.min_distance, config.max_distance);
        }
        drop.distances.push_back(std::move(d));
    }
    return drop;
}

ChannelSet generate_channels(const UserDrop& drop, const SystemConfig& config,
                             RngStream& stream) {
    config.validate();
    if (static_cast<int>(drop.distances.size()) != config.num_groups) {
        throw std::invalid_argument("generate_channels: drop does not match config");
    }
    ChannelSet set;
    set.channels.reserve(config.num_groups);
    set.beta.reserve(config.num_groups);
    set.fading.reserve(config.num_groups);
    for (int i = 0; i < config.num_groups; ++i) {
        int users = config.users_per_group[i];
        if (drop.distances[i].size() != users) {
            throw std::invalid_argument("generate_channels: drop does not match config");
        }
        Eigen::VectorXd beta(users);
        Eigen::MatrixXcd g(config.num_antennas, users);
        Eigen::MatrixXcd h(config.num_antennas, users);
        for (int k = 0; k < users; ++k) {
            beta(k) = pathloss_variance(drop.distances[i](k), drop.xi,
                                        config.pathloss_exponent);
            for (int n = 0; n < config.num_antennas; ++n) {
                g(n, k) = stream.complex_normal();
            }
            h.col(k) = std::sqrt(beta(k)) * g.col(k);
        }
        set.beta.push_back(std::move(beta));
        set.fading.push_back(std::move(g));
        set.channels.push_back(std::move(h));
    }
    return set;
}

} // namespace mgms
