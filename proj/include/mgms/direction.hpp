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

#include "mgms/channel.hpp"
#include "mgms/config.hpp"

namespace mgms {

// Representative direction for one multicast group: the weighted combination
// hat_h = H * weights of the group's user channels that maximizes the worst
// user's whitened beamforming gain.  min_gain is the achieved objective.
struct GroupDirection {
    int group = 0;
    Eigen::VectorXcd weights;
    Eigen::VectorXcd direction;
    double min_gain = 0.0;
};

// Best-objective value per iteration of a projected-subgradient solve,
// for convergence diagnostics.
struct PsaTrace {
    std::vector<double> best_objective;
};

// Closed-form approximate interference-plus-noise covariance for one group:
//   I + (P * beta_h / (noise * K)) * sum_k g_k g_k^H
// where beta_h is the harmonic mean of the group's large-scale gains and the
// g_k are the normalized fading vectors.
Eigen::MatrixXcd approx_group_covariance(const Eigen::MatrixXcd& fading,
                                         const Eigen::VectorXd& beta,
                                         double power, double noise);

// Solves the single-group max-min whitened-gain problem
//   max_a min_k |a^H b_k|^2   s.t.  ||Rt^{-1} H a||^2 <= P,
// with b_k = H^H Rt^{-1} h_k, by projected subgradient ascent over the
// combining weights, keeping the best feasible iterate.  Deterministic
// restarts (harmonic-weighted start plus each canonical basis vector) guard
// against the nonconvex objective's local optima.
GroupDirection solve_group_direction(int group, const ChannelSet& channels,
                                     double power, double noise,
                                     const PsaSettings& settings,
                                     PsaTrace* trace = nullptr);

// Group directions for all groups, in group order.  Groups are independent
// solves over immutable inputs, so results do not depend on evaluation order.
std::vector<GroupDirection> all_group_directions(const ChannelSet& channels,
                                                 double power, double noise,
                                                 const PsaSettings& settings);

} // namespace mgms
