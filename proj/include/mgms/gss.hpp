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

#include "mgms/beamforming.hpp"
#include "mgms/direction.hpp"
#include "mgms/schedule.hpp"

namespace mgms {

// Alignment of a group direction with a unit basis vector: |<dir, f>| / ||dir||.
// 0 for orthogonal vectors, 1 for collinear ones.  A group may join a slot
// only while its metric against every basis vector stays below the threshold.
double semiorth_metric(const Eigen::VectorXcd& direction,
                       const Eigen::VectorXcd& basis_vector);

// Diagnostic record of one slot's greedy construction.
struct GssSelection {
    // Groups in the order they were selected.
    std::vector<int> order;
    // Orthonormal basis vectors appended per selection (one column each;
    // fewer columns than selections if the last append was degenerate).
    Eigen::MatrixXcd basis;
    struct Step {
        int iteration = 0;
        int candidates = 0;
        int chosen = 0;
        double min_sinr = 0.0;
    };
    std::vector<Step> steps;
};

// Builds one slot greedily from the unscheduled groups: repeatedly add the
// candidate whose co-scheduling keeps the closed-form worst-user SINR highest
// (ties to the lowest group index), extend the orthonormal basis with the
// chosen group's direction, and drop candidates whose metric against the new
// basis vector reaches alpha.  Returns the slot's groups in ascending order.
std::vector<int> select_slot_groups(const std::vector<int>& unscheduled,
                                    const std::vector<GroupDirection>& directions,
                                    const ChannelSet& channels, double alpha,
                                    double power, double noise,
                                    GssSelection* selection = nullptr);

struct GssTrace {
    std::vector<GssSelection> slots;
};

// Semi-orthogonality group scheduling: fills slots with select_slot_groups
// until every group is scheduled.  Deterministic for fixed inputs.
Schedule schedule_semi_orthogonal(const std::vector<GroupDirection>& directions,
                                  const ChannelSet& channels, double alpha,
                                  double power, double noise,
                                  GssTrace* trace = nullptr);

} // namespace mgms
