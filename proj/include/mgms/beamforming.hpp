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
#include "mgms/direction.hpp"
#include "mgms/numerics.hpp"

namespace mgms {

// Beamformers and achieved rates for the groups served together in one slot.
// beamformers holds one column per entry of `groups` (same order); sinr and
// rates are per group, per user; min_rate is the slot's worst user rate.
struct SlotBeamformers {
    int slot = 0;
    std::vector<int> groups;
    Eigen::MatrixXcd beamformers;
    std::vector<std::vector<double>> sinr;
    std::vector<std::vector<double>> rates;
    double min_rate = 0.0;
};

// Per-user SINR when the listed groups are served simultaneously with the
// given beamformer columns:
//   |w_i^H h_ik|^2 / (sum_{j != i} |w_j^H h_ik|^2 + noise).
// Errors: column count differing from groups.size() -> std::invalid_argument.
std::vector<std::vector<double>> evaluate_sinr(const Eigen::MatrixXcd& beamformers,
                                               const std::vector<int>& groups,
                                               const ChannelSet& channels,
                                               double noise);

// Pooled closed-form covariance over the groups of one slot:
//   I + (P * beta_h / (noise * K_total)) * sum_{i,k} g_ik g_ik^H
// with beta_h the harmonic mean over all served users' large-scale gains.
HpdMatrix pooled_covariance(const ChannelSet& channels,
                            const std::vector<int>& groups,
                            double power, double noise);

// Closed-form multi-group beamformers: w_j = c_j * Rb^{-1} H_j q_j with
// q_j = (1/beta_j1, ..., 1/beta_jK)^T and the scalars c_j chosen so the worst
// users balance in the vanishing-interference regime and total power is
// exactly P.  Used as the scheduling-time rate proxy and as the solver
// initializer.
Eigen::MatrixXcd asymptotic_beamformers(const ChannelSet& channels,
                                        const std::vector<int>& groups,
                                        double power, double noise);

// Worst-user SINR of the closed-form beamformers for a candidate co-scheduled
// set; the quantity scheduling decisions are ranked by.
double asymptotic_min_sinr(const ChannelSet& channels,
                           const std::vector<int>& groups,
                           double power, double noise);

// Max-min fair beamformers for one slot.  Runs projected subgradient ascent
// over the combining weights of the structured family w_j = Rb^{-1} H_j a_j
// (initialized from the closed-form solution), then refines the stacked
// beamformers directly in full space to recover directions the structured
// family cannot express when N is small.  Total power equals P exactly after
// the final radial projection; the best feasible iterate is returned.
SlotBeamformers solve_slot_beamformers(const ChannelSet& channels,
                                       const std::vector<int>& groups, int slot,
                                       double power, double noise,
                                       const PsaSettings& settings,
                                       PsaTrace* trace = nullptr);

// Worst per-user rate across slots divided by the number of slots; the
// max-min throughput of a schedule once every slot is solved.
// Errors: empty slot list -> std::invalid_argument.
double min_throughput(const std::vector<SlotBeamformers>& slots);

} // namespace mgms
