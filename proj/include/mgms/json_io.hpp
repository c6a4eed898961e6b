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

#include <json.hpp>
#include <string>

#include "mgms/channel.hpp"
#include "mgms/config.hpp"
#include "mgms/experiment.hpp"
#include "mgms/gsc.hpp"
#include "mgms/schedule.hpp"

// JSON mirrors of the public structs.  Field names match the struct members;
// complex values are [re, im] pairs, so every fixture and result file is
// plain text.

namespace mgms {

nlohmann::json to_json(const PsaSettings& s);
nlohmann::json to_json(const SystemConfig& c);
nlohmann::json to_json(const ExperimentConfig& c);
nlohmann::json to_json(const ExperimentResult& r);
nlohmann::json to_json(const Schedule& s);
nlohmann::json to_json(const ChannelSet& c);
nlohmann::json to_json(const Clustering& c);

PsaSettings psa_settings_from_json(const nlohmann::json& j);
SystemConfig system_config_from_json(const nlohmann::json& j);
ExperimentConfig experiment_config_from_json(const nlohmann::json& j);
ExperimentResult experiment_result_from_json(const nlohmann::json& j);
ChannelSet channel_set_from_json(const nlohmann::json& j);

// File loaders; parse or validation failures -> std::invalid_argument.
SystemConfig load_system_config(const std::string& path);
ExperimentConfig load_experiment_config(const std::string& path);
ExperimentResult load_experiment_result(const std::string& path);

void write_json_file(const nlohmann::json& j, const std::string& path);

} // namespace mgms
