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

#include <functional>
#include <string>
#include <vector>

#include "mgms/config.hpp"
#include "mgms/pipeline.hpp"

namespace mgms {

// A sweep: for every antenna count and every threshold, run
// num_drops x num_realizations_per_drop independent channel realizations through the
// pipeline and aggregate.  Distances are redrawn per drop and shared by that
// drop's realizations; fading is redrawn per realization.
struct ExperimentConfig {
    SystemConfig system;
    SchedulerKind scheduler = SchedulerKind::Gss;
    std::vector<double> thresholds;
    // Antenna counts to sweep; defaults to {system.num_antennas} when empty
    // after normalize().
    std::vector<int> antenna_grid;
    int num_drops = 20;
    int num_realizations_per_drop = 20;
    PsaSettings psa;
    std::string output_dir = "out";

    void normalize();
    void validate() const;

    bool operator==(const ExperimentConfig&) const = default;
};

struct RunRecord {
    int drop = 0;
    int realization = 0;
    int num_slots = 0;
    double min_throughput = 0.0;
    double sched_seconds = 0.0;
    std::vector<int> slot_sizes;
    bool ok = true;
    std::string error;

    bool operator==(const RunRecord&) const = default;
};

struct CdfPoint {
    int value = 0;
    double probability = 0.0;

    bool operator==(const CdfPoint&) const = default;
};

// Aggregates for one (antenna count, threshold) grid cell.
struct CellResult {
    int num_antennas = 0;
    int threshold_index = 0;
    double threshold = 0.0;
    double mean_slots = 0.0;
    double mean_min_throughput = 0.0;
    double mean_sched_seconds = 0.0;
    int runs_ok = 0;
    int runs_failed = 0;
    std::vector<CdfPoint> slot_size_cdf;
    std::vector<RunRecord> runs;

    bool operator==(const CellResult&) const = default;
};

struct ExperimentResult {
    ExperimentConfig config;
    std::vector<CellResult> cells;

    bool operator==(const ExperimentResult&) const = default;
};

// Right-continuous empirical CDF of integer samples: one point per distinct
// value, ascending, with cumulative probability; the last probability is 1.
// Errors: empty input -> std::invalid_argument.
std::vector<CdfPoint> empirical_cdf(const std::vector<int>& samples);

// Rounds to 9 significant digits; the precision all emitted floating-point
// values carry, so serialized results parse back to equal structs.
double round_sig(double x);

// Runs the full grid.  Failed runs are recorded with their error and excluded
// from the means; runs_ok + runs_failed always equals
// num_drops * num_realizations_per_drop.  `jobs` > 1 distributes runs of a cell over
// worker threads without changing any numeric output.  `on_cell` (optional)
// observes each finished cell in grid order.
ExperimentResult sweep(const ExperimentConfig& config, int jobs = 1,
                       const std::function<void(const CellResult&)>& on_cell = {});

// Writes summary.csv, one cdf_<N>_<threshold>.csv per cell, and result.json
// under `dir` (created if needed).  All floats carry 9 significant digits.
void emit(const ExperimentResult& result, const std::string& dir);

} // namespace mgms
