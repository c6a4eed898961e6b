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

#include <optional>
#include <string>
#include <vector>

#include "mgms/beamforming.hpp"
#include "mgms/channel.hpp"
#include "mgms/config.hpp"
#include "mgms/gsc.hpp"
#include "mgms/gss.hpp"
#include "mgms/schedule.hpp"

namespace mgms {

enum class SchedulerKind {
    Gss,          // greedy semi-orthogonal selection (threshold = alpha)
    Gsc,          // mean-shift clustering (threshold = tau)
    SingleSlot,   // baseline: all groups in one slot
    PerGroupSlots // baseline: one group per slot
};

// Parses "gss" | "gsc" | "single-slot" | "g-slots".
// Errors: unknown name -> std::invalid_argument.
SchedulerKind scheduler_from_string(const std::string& name);
std::string to_string(SchedulerKind kind);

struct PipelineResult {
    Schedule schedule;
    std::vector<SlotBeamformers> slots;
    double min_throughput = 0.0;
    // Wall time of the scheduling stage alone (group directions and per-slot
    // beamformer solves excluded).
    double sched_seconds = 0.0;
};

// Optional per-stage diagnostics collected during run_pipeline: solver
// convergence traces for every group direction and every slot solve, and the
// clustering when the clustered scheduler ran.
struct PipelineTrace {
    std::vector<PsaTrace> direction_traces;
    std::vector<PsaTrace> slot_traces;
    std::optional<Clustering> clustering;
};

// Full pipeline on one channel realization: group directions, scheduling with
// the requested scheduler and threshold, then per-slot max-min beamforming.
// `stream` drives only the clustered scheduler's random picks; every other
// stage is deterministic.
PipelineResult run_pipeline(const ChannelSet& channels,
                            const SystemConfig& config, SchedulerKind kind,
                            double threshold, const PsaSettings& settings,
                            RngStream& stream, PipelineTrace* trace = nullptr);

} // namespace mgms
