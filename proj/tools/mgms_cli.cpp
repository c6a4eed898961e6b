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
//
// Command-line front end.  Subcommands:
//   schedule   run one realization end to end and print the schedule as JSON
//   sweep      run a threshold/antenna grid and write summary/CDF/result files
//   calibrate  print the pathloss constant implied by a system config

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "mgms/channel.hpp"
#include "mgms/errors.hpp"
#include "mgms/experiment.hpp"
#include "mgms/json_io.hpp"
#include "mgms/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitRuntimeError = 2;

// The schedule subcommand accepts either a bare system config or a full
// experiment config (whose "system" and "psa" blocks are then used).
void load_schedule_config(const std::string& path, mgms::SystemConfig& system,
                          mgms::PsaSettings& psa) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open " + path);
    }
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
    if (j.contains("system")) {
        system = mgms::system_config_from_json(j.at("system"));
    } else {
        system = mgms::system_config_from_json(j);
    }
    if (j.contains("psa")) {
        psa = mgms::psa_settings_from_json(j.at("psa"));
    }
}

void write_objective_trace(const std::string& path,
                           const mgms::PsaTrace& trace) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    out << "iteration,best_objective\n";
    for (size_t i = 0; i < trace.best_objective.size(); ++i) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%zu,%.9g\n", i + 1,
                      trace.best_objective[i]);
        out << buf;
    }
}

int run_schedule(const std::string& config_path, const std::string& scheduler_name,
                 std::optional<double> alpha, std::optional<double> tau,
                 std::optional<std::uint64_t> seed_override,
                 const std::string& out_path, const std::string& trace_dir) {
    mgms::SystemConfig system;
    mgms::PsaSettings psa;
    load_schedule_config(config_path, system, psa);
    if (seed_override) {
        system.rng_seed = *seed_override;
    }
    mgms::SchedulerKind kind = mgms::scheduler_from_string(scheduler_name);

    double threshold = 0.0;
    if (kind == mgms::SchedulerKind::Gss) {
        if (!alpha) {
            throw std::invalid_argument("scheduler gss requires --alpha");
        }
        threshold = *alpha;
    } else if (kind == mgms::SchedulerKind::Gsc) {
        if (!tau) {
            throw std::invalid_argument("scheduler gsc requires --tau");
        }
        threshold = *tau;
    }

    mgms::RngStream drop_stream(mgms::derive_seed(system.rng_seed, {0xD0}));
    mgms::UserDrop drop = mgms::generate_drop(system, drop_stream);
    mgms::RngStream fading_stream(mgms::derive_seed(system.rng_seed, {0xFA}));
    mgms::ChannelSet channels = mgms::generate_channels(drop, system, fading_stream);
    mgms::RngStream sched_stream(mgms::derive_seed(system.rng_seed, {0x5C}));
    mgms::PipelineTrace trace;
    mgms::PipelineTrace* trace_ptr = trace_dir.empty() ? nullptr : &trace;
    mgms::PipelineResult result = mgms::run_pipeline(
        channels, system, kind, threshold, psa, sched_stream, trace_ptr);

    if (trace_ptr != nullptr) {
        std::filesystem::create_directories(trace_dir);
        for (size_t i = 0; i < trace.direction_traces.size(); ++i) {
            write_objective_trace(trace_dir + "/direction_trace_" +
                                      std::to_string(i) + ".csv",
                                  trace.direction_traces[i]);
        }
        for (size_t t = 0; t < trace.slot_traces.size(); ++t) {
            write_objective_trace(trace_dir + "/slot_trace_" +
                                      std::to_string(t) + ".csv",
                                  trace.slot_traces[t]);
        }
        if (trace.clustering) {
            mgms::write_json_file(mgms::to_json(*trace.clustering),
                                  trace_dir + "/clustering.json");
        }
    }

    nlohmann::json out = {
        {"scheduler", mgms::to_string(kind)},
        {"threshold", mgms::round_sig(threshold)},
        {"schedule", mgms::to_json(result.schedule)},
        {"min_throughput", mgms::round_sig(result.min_throughput)},
        {"sched_time_s", mgms::round_sig(result.sched_seconds)},
    };
    nlohmann::json slots = nlohmann::json::array();
    for (const auto& slot : result.slots) {
        nlohmann::json rates = nlohmann::json::array();
        for (size_t gi = 0; gi < slot.rates.size(); ++gi) {
            nlohmann::json per_user = nlohmann::json::array();
            for (double r : slot.rates[gi]) {
                per_user.push_back(mgms::round_sig(r));
            }
            rates.push_back({{"group", slot.groups[gi]}, {"rates", per_user}});
        }
        slots.push_back({{"slot", slot.slot},
                         {"min_rate", mgms::round_sig(slot.min_rate)},
                         {"groups", std::move(rates)}});
    }
    out["slots"] = std::move(slots);

    if (out_path.empty()) {
        std::cout << out.dump(2) << '\n';
    } else {
        mgms::write_json_file(out, out_path);
    }
    return kExitOk;
}

int run_sweep(const std::string& config_path, const std::string& scheduler_name,
              std::optional<std::uint64_t> seed_override, const std::string& out_dir,
              int jobs) {
    mgms::ExperimentConfig config = mgms::load_experiment_config(config_path);
    if (!scheduler_name.empty()) {
        config.scheduler = mgms::scheduler_from_string(scheduler_name);
    }
    if (seed_override) {
        config.system.rng_seed = *seed_override;
    }
    if (!out_dir.empty()) {
        config.output_dir = out_dir;
    }
    mgms::ExperimentResult result =
        mgms::sweep(config, jobs, [&](const mgms::CellResult& cell) {
            std::fprintf(stderr, "cell N=%d threshold=%g: mean_T=%g ok=%d failed=%d\n",
                         cell.num_antennas, cell.threshold, cell.mean_slots,
                         cell.runs_ok, cell.runs_failed);
        });
    mgms::emit(result, config.output_dir);
    std::cout << "wrote " << config.output_dir << "/summary.csv\n";
    return kExitOk;
}

int run_calibrate(const std::string& config_path) {
    mgms::SystemConfig system;
    mgms::PsaSettings psa;
    load_schedule_config(config_path, system, psa);
    double xi = mgms::calibrate_pathloss_constant(system);
    std::printf("%.9g\n", xi);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"multi-group multicast scheduling and beamforming simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string scheduler_name;
    std::string out_path;
    std::optional<double> alpha;
    std::optional<double> tau;
    std::optional<std::uint64_t> seed;
    int jobs = 1;

    CLI::App* schedule = app.add_subcommand(
        "schedule", "schedule one realization and print the result");
    schedule->add_option("--config", config_path, "system (or experiment) config JSON")
        ->required();
    schedule->add_option("--scheduler", scheduler_name,
                         "gss | gsc | single-slot | g-slots")
        ->required();
    schedule->add_option("--alpha", alpha, "semi-orthogonality threshold (gss)");
    schedule->add_option("--tau", tau, "clustering bandwidth (gsc)");
    schedule->add_option("--seed", seed, "override the config rng_seed");
    schedule->add_option("--out", out_path, "write the JSON result here instead of stdout");
    std::string trace_dir;
    schedule->add_option("--trace-dir", trace_dir,
                         "write solver traces (and the clustering, for gsc) here");

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "run a full experiment grid");
    sweep_cmd->add_option("--config", config_path, "experiment config JSON")->required();
    sweep_cmd->add_option("--scheduler", scheduler_name, "override the config scheduler");
    sweep_cmd->add_option("--seed", seed, "override the config rng_seed");
    sweep_cmd->add_option("--out", out_path, "override the config output_dir");
    sweep_cmd->add_option("--jobs", jobs, "worker threads for runs")
        ->check(CLI::PositiveNumber);

    CLI::App* calibrate = app.add_subcommand(
        "calibrate", "print the calibrated pathloss constant");
    calibrate->add_option("--config", config_path, "system config JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e); // --help and friends
        }
        std::cerr << e.what() << '\n';
        return kExitConfigError;
    }

    try {
        if (schedule->parsed()) {
            return run_schedule(config_path, scheduler_name, alpha, tau, seed,
                                out_path, trace_dir);
        }
        if (sweep_cmd->parsed()) {
            return run_sweep(config_path, scheduler_name, seed, out_path, jobs);
        }
        return run_calibrate(config_path);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntimeError;
    }
}
