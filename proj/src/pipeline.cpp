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

#include "mgms/pipeline.hpp"

#include <chrono>
#include <stdexcept>

namespace mgms {

SchedulerKind scheduler_from_string(const std::string& name) {
    if (name == "gss") return SchedulerKind::Gss;
    if (name == "gsc") return SchedulerKind::Gsc;
    if (name == "single-slot") return SchedulerKind::SingleSlot;
    if (name == "g-slots") return SchedulerKind::PerGroupSlots;
    throw std::invalid_argument("unknown scheduler '" + name +
                                "' (expected gss, gsc, single-slot, or g-slots)");
}

std::string to_string(SchedulerKind kind) {
    switch (kind) {
    case SchedulerKind::Gss: return "gss";
    case SchedulerKind::Gsc: return "gsc";
    case SchedulerKind::SingleSlot: return "single-slot";
    case SchedulerKind::PerGroupSlots: return "g-slots";
    }
    throw std::invalid_argument("unknown scheduler kind");
}

PipelineResult run_pipeline(const ChannelSet& channels,
                            const SystemConfig& config, SchedulerKind kind,
                            double threshold, const PsaSettings& settings,
                            RngStream& stream, PipelineTrace* trace) {
    config.validate();
    settings.validate();
    if (channels.num_groups() != config.num_groups) {
        throw std::invalid_argument("run_pipeline: channels do not match config");
    }
    const double power = config.power_budget;
    const double noise = config.noise_variance;

    // Stage 1: group directions (needed by both content-aware schedulers;
    // baselines skip them).
    std::vector<GroupDirection> directions;
    if (kind == SchedulerKind::Gss || kind == SchedulerKind::Gsc) {
        if (trace != nullptr) {
            directions.reserve(channels.num_groups());
            trace->direction_traces.resize(channels.num_groups());
            for (int i = 0; i < channels.num_groups(); ++i) {
                directions.push_back(solve_group_direction(
                    i, channels, power, noise, settings,
                    &trace->direction_traces[i]));
            }
        } else {
            directions = all_group_directions(channels, power, noise, settings);
        }
    }

    // Stage 2: scheduling, timed on its own.
    PipelineResult result;
    auto start = std::chrono::steady_clock::now();
    switch (kind) {
    case SchedulerKind::Gss:
        result.schedule =
            schedule_semi_orthogonal(directions, channels, threshold, power, noise);
        break;
    case SchedulerKind::Gsc: {
        FeatureSpace space = build_feature_space(directions);
        Clustering clustering = mean_shift_cluster(space, threshold);
        result.schedule = schedule_clustered(clustering, channels, power, noise, stream);
        if (trace != nullptr) {
            trace->clustering = std::move(clustering);
        }
        break;
    }
    case SchedulerKind::SingleSlot:
        result.schedule = single_slot_schedule(config.num_groups);
        break;
    case SchedulerKind::PerGroupSlots:
        result.schedule = per_group_schedule(config.num_groups);
        break;
    }
    auto stop = std::chrono::steady_clock::now();
    result.sched_seconds =
        std::chrono::duration<double>(stop - start).count();
    result.schedule.validate(config.num_groups);

    // Stage 3: per-slot max-min beamforming.
    result.slots.reserve(result.schedule.slots.size());
    if (trace != nullptr) {
        trace->slot_traces.resize(result.schedule.num_slots());
    }
    for (int t = 0; t < result.schedule.num_slots(); ++t) {
        PsaTrace* slot_trace =
            trace != nullptr ? &trace->slot_traces[t] : nullptr;
        result.slots.push_back(solve_slot_beamformers(
            channels, result.schedule.slots[t], t, power, noise, settings,
            slot_trace));
    }
    result.min_throughput = min_throughput(result.slots);
    return result;
}

} // namespace mgms
