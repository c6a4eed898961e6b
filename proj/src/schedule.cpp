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

#include "mgms/schedule.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace mgms {

void Schedule::validate(int num_groups) const {
    std::vector<bool> seen(num_groups, false);
    if (slots.empty()) {
        throw std::invalid_argument("schedule: no slots");
    }
    for (const auto& slot : slots) {
        if (slot.empty()) {
            throw std::invalid_argument("schedule: empty slot");
        }
        int prev = -1;
        for (int g : slot) {
            if (g < 0 || g >= num_groups) {
                throw std::invalid_argument("schedule: group index " +
                                            std::to_string(g) + " out of range");
            }
            if (g <= prev) {
                throw std::invalid_argument("schedule: slot not sorted ascending");
            }
            if (seen[g]) {
                throw std::invalid_argument("schedule: group " + std::to_string(g) +
                                            " scheduled twice");
            }
            seen[g] = true;
            prev = g;
        }
    }
    for (int g = 0; g < num_groups; ++g) {
        if (!seen[g]) {
            throw std::invalid_argument("schedule: group " + std::to_string(g) +
                                        " never scheduled");
        }
    }
}

Schedule single_slot_schedule(int num_groups) {
    Schedule s;
    s.slots.emplace_back(num_groups);
    std::iota(s.slots[0].begin(), s.slots[0].end(), 0);
    return s;
}

Schedule per_group_schedule(int num_groups) {
    Schedule s;
    for (int g = 0; g < num_groups; ++g) {
        s.slots.push_back({g});
    }
    return s;
}

} // namespace mgms
