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

#include "mmimo/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

namespace mmimo
{
    ConfigError::ConfigError(std::string field, const std::string &what)
        : std::invalid_argument("invalid config field '" + field + "': " + what), field_(std::move(field))
    {
    }

    double db_per_neper()
    {
        return 10.0 / std::numbers::ln10;
    }

    double shadow_factor(double shadowing_db)
    {
        const double s = shadowing_db / db_per_neper();
        return std::exp(s * s);
    }

    double db_to_linear(double db)
    {
        return std::pow(10.0, db / 10.0);
    }

    double linear_to_db(double linear)
    {
        return 10.0 * std::log10(linear);
    }

    DerivedConstants validate(const SystemConfig &c)
    {
        auto positive_finite = [](double v)
        { return std::isfinite(v) && v > 0.0; };

        if (!positive_finite(c.ref_distance))
            throw ConfigError("d0", "close-in reference distance must be positive");
        if (!positive_finite(c.cell_radius) || c.cell_radius <= c.ref_distance)
            throw ConfigError("R", "cell radius must exceed the reference distance d0");
        if (!positive_finite(c.ref_gain))
            throw ConfigError("A0", "close-in path loss must be positive");
        if (!std::isfinite(c.pathloss_exponent) || c.pathloss_exponent <= 2.0)
            throw ConfigError("gamma", "path loss exponent must be > 2 for the outer integrals to converge");
        if (!std::isfinite(c.shadowing_db) || c.shadowing_db < 0.0)
            throw ConfigError("sigma_dB", "shadowing standard deviation must be >= 0");
        if (c.pilots < 1)
            throw ConfigError("K", "at least one pilot is required");
        if (c.antennas <= c.pilots)
            throw ConfigError("M", "antenna count must exceed the pilot count (ZF needs M > K)");
        if (!positive_finite(c.pilot_power))
            throw ConfigError("rho_p", "training power must be positive");
        if (!positive_finite(c.data_power))
            throw ConfigError("rho_r", "data power must be positive");
        if (!std::isfinite(c.trunc_factor) || c.trunc_factor <= 1.0)
            throw ConfigError("trunc_factor", "window factor must be > 1");
        if (c.spatial_trials < 1)
            throw ConfigError("n_spatial_trials", "must be >= 1");
        if (c.fading_trials < 1)
            throw ConfigError("n_fading_trials", "must be >= 1");

        DerivedConstants d;
        d.intensity = 1.0 / (std::numbers::pi * c.cell_radius * c.cell_radius);
        d.distance_ratio = c.ref_distance / c.cell_radius;
        d.db_per_neper = db_per_neper();
        d.shadow_factor = shadow_factor(c.shadowing_db);
        return d;
    }

    SystemConfig reference_config()
    {
        SystemConfig c;
        c.cell_radius = 500.0;
        c.ref_distance = 100.0;
        c.ref_gain = db_to_linear(-30.0);
        c.pathloss_exponent = 3.76;
        c.shadowing_db = 0.0;
        c.antennas = 128;
        c.pilots = 30;
        c.pilot_power = 1.0;
        c.data_power = 1.0;
        return c;
    }

    nlohmann::json to_json(const SystemConfig &c)
    {
        return nlohmann::json{
            {"R", c.cell_radius},
            {"d0", c.ref_distance},
            {"A0", c.ref_gain},
            {"gamma", c.pathloss_exponent},
            {"sigma_dB", c.shadowing_db},
            {"M", c.antennas},
            {"K", c.pilots},
            {"rho_p", c.pilot_power},
            {"rho_r", c.data_power},
            {"interference_limited", c.interference_limited},
            {"trunc_factor", c.trunc_factor},
            {"n_spatial_trials", c.spatial_trials},
            {"n_fading_trials", c.fading_trials},
            {"seed", c.seed},
        };
    }

    nlohmann::json to_json(const DerivedConstants &d)
    {
        return nlohmann::json{
            {"lambda", d.intensity},
            {"l", d.distance_ratio},
            {"xi", d.db_per_neper},
            {"mu", d.shadow_factor},
        };
    }

    namespace
    {
        template <class T>
        void read_key(const nlohmann::json &doc, const char *key, T &out)
        {
            auto it = doc.find(key);
            if (it == doc.end())
                return;
            try
            {
                out = it->get<T>();
            }
            catch (const nlohmann::json::exception &e)
            {
                throw ConfigError(key, std::string("wrong value type: ") + e.what());
            }
        }

        const char *const known_keys[] = {"R", "d0", "A0", "gamma", "sigma_dB", "M", "K", "rho_p", "rho_r",
                                          "interference_limited", "trunc_factor", "n_spatial_trials",
                                          "n_fading_trials", "seed"};
    }

    SystemConfig config_from_json(const nlohmann::json &doc, SystemConfig c)
    {
        if (!doc.is_object())
            throw ConfigError("<document>", "config must be a flat key/value object");
        for (const auto &item : doc.items())
        {
            bool known = false;
            for (const char *k : known_keys)
                known = known || item.key() == k;
            if (!known)
                throw ConfigError(item.key(), "unknown key");
        }
        read_key(doc, "R", c.cell_radius);
        read_key(doc, "d0", c.ref_distance);
        read_key(doc, "A0", c.ref_gain);
        read_key(doc, "gamma", c.pathloss_exponent);
        read_key(doc, "sigma_dB", c.shadowing_db);
        read_key(doc, "M", c.antennas);
        read_key(doc, "K", c.pilots);
        read_key(doc, "rho_p", c.pilot_power);
        read_key(doc, "rho_r", c.data_power);
        read_key(doc, "interference_limited", c.interference_limited);
        read_key(doc, "trunc_factor", c.trunc_factor);
        read_key(doc, "n_spatial_trials", c.spatial_trials);
        read_key(doc, "n_fading_trials", c.fading_trials);
        read_key(doc, "seed", c.seed);
        return c;
    }

    SystemConfig load_config(const std::string &path, SystemConfig base)
    {
        std::ifstream in(path);
        if (!in)
            throw std::runtime_error("cannot open config file '" + path + "'");
        nlohmann::json doc;
        try
        {
            doc = nlohmann::json::parse(in, nullptr, true, true);
        }
        catch (const nlohmann::json::parse_error &e)
        {
            throw std::runtime_error("cannot parse config file '" + path + "': " + e.what());
        }
        return config_from_json(doc, base);
    }

    std::string config_hash(const SystemConfig &config)
    {
        const std::string text = to_json(config).dump();
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (unsigned char ch : text)
        {
            h ^= ch;
            h *= 0x100000001b3ULL;
        }
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
        return buf;
    }
}
