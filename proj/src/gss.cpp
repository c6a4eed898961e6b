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

#include "mgms/gss.hpp"

#include <algorithm>
#include <stdexcept>

#include "mgms/errors.hpp"
#include "mgms/numerics.hpp"

namespace mgms {

double semiorth_metric(const Eigen::VectorXcd& direction,
                       const Eigen::VectorXcd& basis_vector) {
    double dnorm = direction.norm();
    if (!(dnorm > 0.0)) {
        throw DegenerateDirectionError("semiorth_metric: zero direction");
    }
    return std::abs(basis_vector.dot(direction)) / dnorm;
}

std::vector<int> select_slot_groups(const std::vector<int>& unscheduled,
                                    const std::vector<GroupDirection>& directions,
                                    const ChannelSet& channels, double alpha,
                                    double power, double noise,
                                    GssSelection* selection) {
    if (unscheduled.empty()) {
        throw std::invalid_argument("select_slot_groups: no unscheduled groups");
    }
    if (!(alpha > 0.0)) {
        throw std::invalid_argument("select_slot_groups: alpha must be positive");
    }
    std::vector<int> slot;
    std::vector<int> candidates = unscheduled;
    std::sort(candidates.begin(), candidates.end());
    OrthonormalBasis basis(channels.num_antennas());

    int iteration = 0;
    while (!candidates.empty()) {
        ++iteration;
        // Choose the candidate whose addition keeps the worst co-scheduled
        // user's closed-form SINR highest; ties go to the lowest group index
        // (candidates are kept sorted, so the first strict improvement wins).
        int chosen = -1;
        double chosen_sinr = 0.0;
        for (int cand : candidates) {
            std::vector<int> trial = slot;
            trial.push_back(cand);
            std::sort(trial.begin(), trial.end());
            double s = asymptotic_min_sinr(channels, trial, power, noise);
            if (chosen < 0 || s > chosen_sinr) {
                chosen = cand;
                chosen_sinr = s;
            }
        }
        if (selection != nullptr) {
            selection->steps.push_back({iteration, static_cast<int>(candidates.size()),
                                        chosen, chosen_sinr});
            selection->order.push_back(chosen);
        }
        slot.push_back(chosen);
        candidates.erase(std::find(candidates.begin(), candidates.end(), chosen));

        // Extend the basis with the chosen direction; if that direction is
        // numerically inside the span already, the slot cannot separate
        // further groups, so it closes here.
        Eigen::VectorXcd f;
        try {
            f = basis.append(directions[chosen].direction);
        } catch (const DegenerateDirectionError&) {
            break;
        }
        // Keep only candidates still semi-orthogonal to the new basis vector;
        // earlier basis vectors were already enforced when they appeared.
        std::vector<int> kept;
        kept.reserve(candidates.size());
        for (int cand : candidates) {
            if (semiorth_metric(directions[cand].direction, f) < alpha) {
                kept.push_back(cand);
            }
        }
        candidates = std::move(kept);
    }

    if (selection != nullptr) {
        selection->basis = basis.vectors();
    }
    std::sort(slot.begin(), slot.end());
    return slot;
}

Schedule schedule_semi_orthogonal(const std::vector<GroupDirection>& directions,
                                  const ChannelSet& channels, double alpha,
                                  double power, double noise, GssTrace* trace) {
    if (static_cast<int>(directions.size()) != channels.num_groups()) {
        throw std::invalid_argument(
            "schedule_semi_orthogonal: one direction per group required");
    }
    std::vector<int> unscheduled(channels.num_groups());
    for (int g = 0; g < channels.num_groups(); ++g) {
        unscheduled[g] = g;
    }
    Schedule schedule;
    while (!unscheduled.empty()) {
        GssSelection selection;
        std::vector<int> slot =
            select_slot_groups(unscheduled, directions, channels, alpha, power,
                               noise, trace != nullptr ? &selection : nullptr);
        if (trace != nullptr) {
            trace->slots.push_back(std::move(selection));
        }
        std::vector<int> remaining;
        remaining.reserve(unscheduled.size() - slot.size());
        for (int g : unscheduled) {
            if (!std::binary_search(slot.begin(), slot.end(), g)) {
                remaining.push_back(g);
            }
        }
        schedule.slots.push_back(std::move(slot));
        unscheduled = std::move(remaining);
    }
    return schedule;
}

} // namespace mgms
