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

#include "mgms/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>
#include <thread>

#include "mgms/json_io.hpp"

namespace mgms {

namespace {

// Tags for independent random streams derived from one run seed.
constexpr std::uint64_t kTagDrop = 0xD0;
constexpr std::uint64_t kTagRun = 0x52;
constexpr std::uint64_t kTagFading = 0xFA;
constexpr std::uint64_t kTagScheduler = 0x5C;

std::string format_sig(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", x);
    return buf;
}

} // namespace

void ExperimentConfig::normalize() {
    if (antenna_grid.empty()) {
        antenna_grid = {system.num_antennas};
    }
}

void ExperimentConfig::validate() const {
    system.validate();
    psa.validate();
    if (thresholds.empty()) {
        throw std::invalid_argument("experiment: threshold grid must not be empty");
    }
    if (antenna_grid.empty()) {
        throw std::invalid_argument("experiment: antenna grid must not be empty");
    }
    for (int n : antenna_grid) {
        if (n < 1) {
            throw std::invalid_argument("experiment: antenna counts must be positive");
        }
    }
    if (num_drops < 1 || num_realizations_per_drop < 1) {
        throw std::invalid_argument("experiment: need at least one drop and realization");
    }
    if (output_dir.empty()) {
        throw std::invalid_argument("experiment: output_dir must not be empty");
    }
}

std::vector<CdfPoint> empirical_cdf(const std::vector<int>& samples) {
    if (samples.empty()) {
        throw std::invalid_argument("empirical_cdf: empty input");
    }
    std::map<int, int> counts;
    for (int s : samples) {
        ++counts[s];
    }
    std::vector<CdfPoint> cdf;
    cdf.reserve(counts.size());
    double cum = 0.0;
    const double total = static_cast<double>(samples.size());
    for (const auto& [value, count] : counts) {
        cum += static_cast<double>(count);
        cdf.push_back({value, cum / total});
    }
    cdf.back().probability = 1.0; // exact despite accumulation rounding
    return cdf;
}

double round_sig(double x) {
    if (!std::isfinite(x)) {
        return x;
    }
    return std::strtod(format_sig(x).c_str(), nullptr);
}

ExperimentResult sweep(const ExperimentConfig& raw_config, int jobs,
                       const std::function<void(const CellResult&)>& on_cell) {
    ExperimentConfig config = raw_config;
    config.normalize();
    config.validate();
    if (jobs < 1) {
        throw std::invalid_argument("sweep: jobs must be at least 1");
    }

    ExperimentResult result;
    result.config = config;
    const int runs_per_cell = config.num_drops * config.num_realizations_per_drop;

    for (std::size_t ni = 0; ni < config.antenna_grid.size(); ++ni) {
        for (std::size_t ti = 0; ti < config.thresholds.size(); ++ti) {
            const int antennas = config.antenna_grid[ni];
            const double threshold = config.thresholds[ti];
            SystemConfig system = config.system;
            system.num_antennas = antennas;

            std::vector<RunRecord> records(runs_per_cell);
            auto execute_run = [&](int ridx) {
                const int drop_idx = ridx / config.num_realizations_per_drop;
                const int realization = ridx % config.num_realizations_per_drop;
                RunRecord rec;
                rec.drop = drop_idx;
                rec.realization = realization;
                try {
                    // Distances depend on the drop only, so all realizations
                    // of a drop share user positions; fading and scheduler
                    // randomness are per realization.  The leading tag keeps
                    // the two derivation paths disjoint.
                    std::uint64_t drop_seed = derive_seed(
                        system.rng_seed,
                        {kTagDrop, static_cast<std::uint64_t>(antennas),
                         static_cast<std::uint64_t>(ti),
                         static_cast<std::uint64_t>(drop_idx)});
                    std::uint64_t run_seed = derive_seed(
                        system.rng_seed,
                        {kTagRun, static_cast<std::uint64_t>(antennas),
                         static_cast<std::uint64_t>(ti),
                         static_cast<std::uint64_t>(drop_idx),
                         static_cast<std::uint64_t>(realization)});
                    RngStream drop_stream(drop_seed);
                    UserDrop drop = generate_drop(system, drop_stream);
                    RngStream fading_stream(derive_seed(run_seed, {kTagFading}));
                    ChannelSet channels = generate_channels(drop, system, fading_stream);
                    RngStream sched_stream(derive_seed(run_seed, {kTagScheduler}));
                    PipelineResult pr =
                        run_pipeline(channels, system, config.scheduler, threshold,
                                     config.psa, sched_stream);
                    rec.num_slots = pr.schedule.num_slots();
                    rec.min_throughput = round_sig(pr.min_throughput);
                    rec.sched_seconds = round_sig(pr.sched_seconds);
                    for (const auto& slot : pr.schedule.slots) {
                        rec.slot_sizes.push_back(static_cast<int>(slot.size()));
                    }
                    rec.ok = true;
                } catch (const std::exception& e) {
                    rec.ok = false;
                    rec.error = e.what();
                }
                records[ridx] = std::move(rec);
            };

            if (jobs == 1) {
                for (int r = 0; r < runs_per_cell; ++r) {
                    execute_run(r);
                }
            } else {
                std::atomic<int> next{0};
                auto worker = [&] {
                    for (int r = next.fetch_add(1); r < runs_per_cell;
                         r = next.fetch_add(1)) {
                        execute_run(r);
                    }
                };
                std::vector<std::thread> pool;
                int workers = std::min(jobs, runs_per_cell);
                pool.reserve(workers);
                for (int t = 0; t < workers; ++t) {
                    pool.emplace_back(worker);
                }
                for (auto& t : pool) {
                    t.join();
                }
            }

            CellResult cell;
            cell.num_antennas = antennas;
            cell.threshold_index = static_cast<int>(ti);
            cell.threshold = threshold;
            double sum_slots = 0.0;
            double sum_tp = 0.0;
            double sum_time = 0.0;
            std::vector<int> slot_sizes;
            for (const auto& rec : records) {
                if (rec.ok) {
                    ++cell.runs_ok;
                    sum_slots += rec.num_slots;
                    sum_tp += rec.min_throughput;
                    sum_time += rec.sched_seconds;
                    slot_sizes.insert(slot_sizes.end(), rec.slot_sizes.begin(),
                                      rec.slot_sizes.end());
                } else {
                    ++cell.runs_failed;
                }
            }
            if (cell.runs_ok > 0) {
                cell.mean_slots = round_sig(sum_slots / cell.runs_ok);
                cell.mean_min_throughput = round_sig(sum_tp / cell.runs_ok);
                cell.mean_sched_seconds = round_sig(sum_time / cell.runs_ok);
                cell.slot_size_cdf = empirical_cdf(slot_sizes);
                for (auto& point : cell.slot_size_cdf) {
                    point.probability = round_sig(point.probability);
                }
            }
            cell.runs = std::move(records);
            if (on_cell) {
                on_cell(cell);
            }
            result.cells.push_back(std::move(cell));
        }
    }
    return result;
}

void emit(const ExperimentResult& result, const std::string& dir) {
    if (result.cells.empty()) {
        throw std::invalid_argument("emit: result has no cells");
    }
    namespace fs = std::filesystem;
    fs::create_directories(dir);

    const std::string scheduler = to_string(result.config.scheduler);
    std::ofstream summary(fs::path(dir) / "summary.csv");
    if (!summary) {
        throw std::runtime_error("emit: cannot write summary.csv under " + dir);
    }
    summary << "scheduler,N,threshold,mean_T,mean_min_throughput,"
               "mean_sched_time_s,runs_ok,runs_failed\n";
    for (const auto& cell : result.cells) {
        summary << scheduler << ',' << cell.num_antennas << ','
                << format_sig(cell.threshold) << ',' << format_sig(cell.mean_slots)
                << ',' << format_sig(cell.mean_min_throughput) << ','
                << format_sig(cell.mean_sched_seconds) << ',' << cell.runs_ok << ','
                << cell.runs_failed << '\n';
        // One CDF file per grid cell, named by antenna count and threshold.
        std::string name = "cdf_" + std::to_string(cell.num_antennas) + "_" +
                           format_sig(cell.threshold) + ".csv";
        std::ofstream cdf(fs::path(dir) / name);
        if (!cdf) {
            throw std::runtime_error("emit: cannot write " + name);
        }
        cdf << "g_t,cdf\n";
        for (const auto& point : cell.slot_size_cdf) {
            cdf << point.value << ',' << format_sig(point.probability) << '\n';
        }
    }
    summary.close();

    write_json_file(to_json(result), (fs::path(dir) / "result.json").string());
}

} // namespace mgms
