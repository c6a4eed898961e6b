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

#include <vector>

namespace mgms {

// Assignment of every group to exactly one time slot.  Each slot lists its
// group indices in ascending order; slots are served sequentially, so a
// schedule with T slots divides every user's per-slot rate by T.
struct Schedule {
    std::vector<std::vector<int>> slots;

    int num_slots() const { return static_cast<int>(slots.size()); }

    // Verifies the slots form a partition of {0, ..., num_groups-1} with no
    // empty slot.  Errors: std::invalid_argument describing the violation.
    void validate(int num_groups) const;

    bool operator==(const Schedule&) const = default;
};

// All groups in one slot.
Schedule single_slot_schedule(int num_groups);

// One group per slot, in index order.
Schedule per_group_schedule(int num_groups);

} // namespace mgms
