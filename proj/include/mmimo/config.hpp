// SPDX-License-Identifier: Apache-2.0
//
// mmimo-interference: uplink interference simulator for multi-cell massive MIMO
// Copyright (C) 2026 The mmimo-interference authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef MMIMO_CONFIG_HPP
#define MMIMO_CONFIG_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace mmimo
{
    // Physical and simulation parameters of one typical cell.
    // All power quantities are linear; dB values are converted at the CLI boundary.
    struct SystemConfig
    {
        double cell_radius = 500.0;           // m
        double ref_distance = 100.0;          // close-in reference distance, m
        double ref_gain = 1.0e-3;             // path loss inside the reference distance (-30 dB)
        double pathloss_exponent = 3.76;      //
        double shadowing_db = 0.0;            // log-normal shadowing std, dB
        int antennas = 128;                   // BS antennas
        int pilots = 30;                      // orthogonal pilots = intra-cell UEs
        double pilot_power = 1.0;             // training power (0 dB)
        double data_power = 1.0;              // data power (0 dB)
        bool interference_limited = true;     // drop 1/pilot_power and 1/data_power everywhere
        double trunc_factor = 51.0;           // outer radius of the simulated PPP window, in cell radii
        std::int64_t spatial_trials = 10000;  //
        std::int64_t fading_trials = 100000;  //
        std::uint64_t seed = 20151201;        //

        bool operator==(const SystemConfig &) const = default;
    };

    struct DerivedConstants
    {
        double intensity = 0.0;      // PPP intensity 1/(pi R^2), 1/m^2
        double distance_ratio = 0.0; // d0 / R
        double db_per_neper = 0.0;   // 10 / ln 10
        double shadow_factor = 0.0;  // exp(sigma^2 / xi^2)

        bool operator==(const DerivedConstants &) const = default;
    };

    // Thrown by validate(); field() names the offending config key.
    class ConfigError : public std::invalid_argument
    {
    public:
        ConfigError(std::string field, const std::string &what);
        const std::string &field() const noexcept { return field_; }

    private:
        std::string field_;
    };

    double db_per_neper();
    double shadow_factor(double shadowing_db);

    DerivedConstants validate(const SystemConfig &config);

    SystemConfig reference_config();

    double db_to_linear(double db);
    double linear_to_db(double linear);

    // Config documents use the short field names R, d0, A0, gamma, sigma_dB, M, K,
    // rho_p, rho_r, interference_limited, trunc_factor, n_spatial_trials,
    // n_fading_trials and seed. Missing keys keep the values of `base`.
    nlohmann::json to_json(const SystemConfig &config);
    SystemConfig config_from_json(const nlohmann::json &doc, SystemConfig base = {});
    SystemConfig load_config(const std::string &path, SystemConfig base = {});
    nlohmann::json to_json(const DerivedConstants &derived);

    // FNV-1a over the canonical JSON dump; stamped on every output file.
    std::string config_hash(const SystemConfig &config);
}

#endif
