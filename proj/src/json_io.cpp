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

#include "mgms/json_io.hpp"

#include <cmath>
#include <complex>
#include <fstream>
#include <stdexcept>

namespace mgms {

using nlohmann::json;

namespace {

// Read helpers that turn missing/mistyped fields into config errors with the
// offending key in the message.
template <typename T>
T require(const json& j, const char* key) {
    if (!j.contains(key)) {
        throw std::invalid_argument(std::string("config: missing field '") + key + "'");
    }
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw std::invalid_argument(std::string("config: bad value for '") + key + "'");
    }
}

template <typename T>
T optional(const json& j, const char* key, T fallback) {
    if (!j.contains(key)) {
        return fallback;
    }
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw std::invalid_argument(std::string("config: bad value for '") + key + "'");
    }
}

json complex_to_json(const std::complex<double>& z) {
    return json::array({z.real(), z.imag()});
}

std::complex<double> complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) {
        throw std::invalid_argument("config: complex values must be [re, im] pairs");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

} // namespace

json to_json(const PsaSettings& s) {
    return {{"max_iterations", s.max_iterations},
            {"initial_step", s.initial_step},
            {"improvement_tol", s.improvement_tol},
            {"improvement_window", s.improvement_window}};
}

PsaSettings psa_settings_from_json(const json& j) {
    PsaSettings def;
    PsaSettings s;
    s.max_iterations = optional(j, "max_iterations", def.max_iterations);
    s.initial_step = optional(j, "initial_step", def.initial_step);
    s.improvement_tol = optional(j, "improvement_tol", def.improvement_tol);
    s.improvement_window = optional(j, "improvement_window", def.improvement_window);
    s.validate();
    return s;
}

json to_json(const SystemConfig& c) {
    return {{"num_antennas", c.num_antennas},
            {"num_groups", c.num_groups},
            {"users_per_group", c.users_per_group},
            {"power_budget", c.power_budget},
            {"noise_variance", c.noise_variance},
            {"cell_radius", c.cell_radius},
            {"pathloss_exponent", c.pathloss_exponent},
            {"boundary_snr_db", c.boundary_snr_db},
            {"min_distance", c.min_distance},
            {"max_distance", c.max_distance},
            {"rng_seed", c.rng_seed}};
}

SystemConfig system_config_from_json(const json& j) {
    SystemConfig def;
    SystemConfig c;
    c.num_antennas = require<int>(j, "num_antennas");
    c.num_groups = require<int>(j, "num_groups");
    c.users_per_group = require<std::vector<int>>(j, "users_per_group");
    c.power_budget = optional(j, "power_budget", def.power_budget);
    c.noise_variance = optional(j, "noise_variance", def.noise_variance);
    c.cell_radius = optional(j, "cell_radius", def.cell_radius);
    c.pathloss_exponent = optional(j, "pathloss_exponent", def.pathloss_exponent);
    c.boundary_snr_db = optional(j, "boundary_snr_db", def.boundary_snr_db);
    c.min_distance = optional(j, "min_distance", def.min_distance);
    c.max_distance = optional(j, "max_distance", def.max_distance);
    c.rng_seed = optional(j, "rng_seed", def.rng_seed);
    c.validate();
    return c;
}

json to_json(const ExperimentConfig& c) {
    return {{"system", to_json(c.system)},
            {"scheduler", to_string(c.scheduler)},
            {"thresholds", c.thresholds},
            {"antenna_grid", c.antenna_grid},
            {"num_drops", c.num_drops},
            {"num_realizations_per_drop", c.num_realizations_per_drop},
            {"psa", to_json(c.psa)},
            {"output_dir", c.output_dir}};
}

ExperimentConfig experiment_config_from_json(const json& j) {
    ExperimentConfig def;
    ExperimentConfig c;
    c.system = system_config_from_json(
        j.contains("system") ? j.at("system")
                             : throw std::invalid_argument("config: missing field 'system'"));
    c.scheduler = scheduler_from_string(require<std::string>(j, "scheduler"));
    c.thresholds = require<std::vector<double>>(j, "thresholds");
    c.antenna_grid = optional(j, "antenna_grid", std::vector<int>{});
    c.num_drops = optional(j, "num_drops", def.num_drops);
    c.num_realizations_per_drop = optional(j, "num_realizations_per_drop", def.num_realizations_per_drop);
    if (j.contains("psa")) {
        c.psa = psa_settings_from_json(j.at("psa"));
    }
    c.output_dir = optional(j, "output_dir", def.output_dir);
    c.normalize();
    c.validate();
    return c;
}

json to_json(const Schedule& s) {
    return {{"T", s.num_slots()}, {"slots", s.slots}};
}

json to_json(const ChannelSet& c) {
    json groups = json::array();
    for (int i = 0; i < c.num_groups(); ++i) {
        json fading = json::array();
        for (Eigen::Index k = 0; k < c.fading[i].cols(); ++k) {
            json column = json::array();
            for (Eigen::Index n = 0; n < c.fading[i].rows(); ++n) {
                column.push_back(complex_to_json(c.fading[i](n, k)));
            }
            fading.push_back(std::move(column));
        }
        groups.push_back({{"beta", std::vector<double>(c.beta[i].data(),
                                                       c.beta[i].data() + c.beta[i].size())},
                          {"fading", std::move(fading)}});
    }
    return {{"num_antennas", c.num_antennas()}, {"groups", std::move(groups)}};
}

ChannelSet channel_set_from_json(const json& j) {
    ChannelSet c;
    int antennas = require<int>(j, "num_antennas");
    if (!j.contains("groups") || !j.at("groups").is_array()) {
        throw std::invalid_argument("config: channel set needs a 'groups' array");
    }
    for (const auto& jg : j.at("groups")) {
        auto beta_vec = require<std::vector<double>>(jg, "beta");
        const auto& jf = jg.at("fading");
        if (!jf.is_array() || jf.size() != beta_vec.size()) {
            throw std::invalid_argument("config: fading shape does not match beta");
        }
        int users = static_cast<int>(beta_vec.size());
        Eigen::VectorXd beta(users);
        Eigen::MatrixXcd g(antennas, users);
        Eigen::MatrixXcd h(antennas, users);
        for (int k = 0; k < users; ++k) {
            beta(k) = beta_vec[k];
            const auto& column = jf[k];
            if (!column.is_array() || static_cast<int>(column.size()) != antennas) {
                throw std::invalid_argument("config: fading column has wrong length");
            }
            for (int n = 0; n < antennas; ++n) {
                g(n, k) = complex_from_json(column[n]);
            }
            h.col(k) = std::sqrt(beta(k)) * g.col(k);
        }
        c.beta.push_back(std::move(beta));
        c.fading.push_back(std::move(g));
        c.channels.push_back(std::move(h));
    }
    return c;
}

json to_json(const Clustering& c) {
    json clusters = json::array();
    for (const auto& cl : c.clusters) {
        json centroid = json::array();
        for (Eigen::Index n = 0; n < cl.centroid.size(); ++n) {
            centroid.push_back(complex_to_json(cl.centroid(n)));
        }
        clusters.push_back({{"centroid", std::move(centroid)},
                            {"members", cl.members},
                            {"iterations", cl.iterations},
                            {"converged", cl.converged}});
    }
    return {{"bandwidth", c.bandwidth},
            {"num_clusters", c.num_clusters()},
            {"clusters", std::move(clusters)}};
}

namespace {

json to_json(const RunRecord& r) {
    return {{"drop", r.drop},
            {"realization", r.realization},
            {"T", r.num_slots},
            {"min_throughput", r.min_throughput},
            {"sched_time_s", r.sched_seconds},
            {"slot_sizes", r.slot_sizes},
            {"ok", r.ok},
            {"error", r.error}};
}

RunRecord run_record_from_json(const json& j) {
    RunRecord r;
    r.drop = require<int>(j, "drop");
    r.realization = require<int>(j, "realization");
    r.num_slots = require<int>(j, "T");
    r.min_throughput = require<double>(j, "min_throughput");
    r.sched_seconds = require<double>(j, "sched_time_s");
    r.slot_sizes = require<std::vector<int>>(j, "slot_sizes");
    r.ok = require<bool>(j, "ok");
    r.error = require<std::string>(j, "error");
    return r;
}

json to_json(const CellResult& c) {
    json cdf = json::array();
    for (const auto& point : c.slot_size_cdf) {
        cdf.push_back(json::array({point.value, point.probability}));
    }
    json runs = json::array();
    for (const auto& r : c.runs) {
        runs.push_back(to_json(r));
    }
    return {{"N", c.num_antennas},
            {"threshold_index", c.threshold_index},
            {"threshold", c.threshold},
            {"mean_T", c.mean_slots},
            {"mean_min_throughput", c.mean_min_throughput},
            {"mean_sched_time_s", c.mean_sched_seconds},
            {"runs_ok", c.runs_ok},
            {"runs_failed", c.runs_failed},
            {"gt_cdf", std::move(cdf)},
            {"runs", std::move(runs)}};
}

CellResult cell_result_from_json(const json& j) {
    CellResult c;
    c.num_antennas = require<int>(j, "N");
    c.threshold_index = require<int>(j, "threshold_index");
    c.threshold = require<double>(j, "threshold");
    c.mean_slots = require<double>(j, "mean_T");
    c.mean_min_throughput = require<double>(j, "mean_min_throughput");
    c.mean_sched_seconds = require<double>(j, "mean_sched_time_s");
    c.runs_ok = require<int>(j, "runs_ok");
    c.runs_failed = require<int>(j, "runs_failed");
    for (const auto& point : j.at("gt_cdf")) {
        c.slot_size_cdf.push_back({point.at(0).get<int>(), point.at(1).get<double>()});
    }
    for (const auto& r : j.at("runs")) {
        c.runs.push_back(run_record_from_json(r));
    }
    return c;
}

} // namespace

json to_json(const ExperimentResult& r) {
    json cells = json::array();
    for (const auto& cell : r.cells) {
        cells.push_back(to_json(cell));
    }
    return {{"config", to_json(r.config)}, {"cells", std::move(cells)}};
}

ExperimentResult experiment_result_from_json(const json& j) {
    ExperimentResult r;
    if (!j.contains("config")) {
        throw std::invalid_argument("result: missing field 'config'");
    }
    r.config = experiment_config_from_json(j.at("config"));
    for (const auto& cell : j.at("cells")) {
        r.cells.push_back(cell_result_from_json(cell));
    }
    return r;
}

namespace {

json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open " + path);
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

} // namespace

SystemConfig load_system_config(const std::string& path) {
    return system_config_from_json(parse_file(path));
}

ExperimentConfig load_experiment_config(const std::string& path) {
    return experiment_config_from_json(parse_file(path));
}

ExperimentResult load_experiment_result(const std::string& path) {
    return experiment_result_from_json(parse_file(path));
}

void write_json_file(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    out << j.dump(2) << '\n';
}

} // namespace mgms
