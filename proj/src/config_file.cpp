// SPDX-License-Identifier: Apache-2.0
//
// pencil-doa: matrix-pencil direction-of-arrival estimation for fully-digital
// and hybrid analog/digital uniform linear arrays.
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

#include "pencil_doa/config_file.hpp"

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

namespace pencil_doa
{
    namespace
    {
        std::string trim(const std::string &s)
        {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos)
                return {};
            const auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        }

        std::string normalize_key(std::string key)
        {
            std::replace(key.begin(), key.end(), '-', '_');
            return key;
        }

        std::vector<std::string> split_list(const std::string &key, std::string v)
        {
            v = trim(v);
            if (!v.empty() && v.front() == '[')
            {
                if (v.back() != ']')
                    throw ConfigError(key + ": unterminated list");
                v = v.substr(1, v.size() - 2);
            }
            std::vector<std::string> out;
            std::stringstream ss(v);
            std::string item;
            while (std::getline(ss, item, ','))
            {
                item = trim(item);
                if (item.empty())
                    throw ConfigError(key + ": empty list element");
                out.push_back(item);
            }
            return out;
        }

        double to_double(const std::string &key, const std::string &v)
        {
            try
            {
                std::size_t pos = 0;
                const double d = std::stod(v, &pos);
                if (pos == v.size())
                    return d;
            }
            catch (const std::exception &)
            {
            }
            throw ConfigError(key + ": '" + v + "' is not a number");
        }

        long long to_integer(const std::string &key, const std::string &v)
        {
            try
            {
                std::size_t pos = 0;
                const long long i = std::stoll(v, &pos);
                if (pos == v.size())
                    return i;
            }
            catch (const std::exception &)
            {
            }
            throw ConfigError(key + ": '" + v + "' is not an integer");
        }

        bool to_bool(const std::string &key, const std::string &v)
        {
            if (v == "true" || v == "1" || v == "yes" || v == "on")
                return true;
            if (v == "false" || v == "0" || v == "no" || v == "off")
                return false;
            throw ConfigError(key + ": '" + v + "' is not a boolean");
        }

        std::vector<double> to_doubles(const std::string &key, const std::string &v)
        {
            std::vector<double> out;
            for (const auto &item : split_list(key, v))
                out.push_back(to_double(key, item));
            return out;
        }

        template <class T>
        std::string join(const std::vector<T> &v)
        {
            std::string out;
            for (std::size_t i = 0; i < v.size(); ++i)
            {
                if (i)
                    out += ", ";
                if constexpr (std::is_same_v<T, double>)
                    out += format_fixed(v[i]);
                else
                    out += to_string(v[i]);
            }
            return out;
        }
    } // namespace

    KeyValues parse_key_values(std::istream &is, const std::string &source)
    {
        KeyValues out;
        std::string line;
        int lineno = 0;
        while (std::getline(is, line))
        {
            ++lineno;
            if (const auto hash = line.find('#'); hash != std::string::npos)
                line.resize(hash);
            line = trim(line);
            if (line.empty())
                continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError(source + ":" + std::to_string(lineno) + ": expected 'key = value'");
            const std::string key = trim(line.substr(0, eq));
            if (key.empty())
                throw ConfigError(source + ":" + std::to_string(lineno) + ": missing key");
            out.emplace_back(normalize_key(key), trim(line.substr(eq + 1)));
        }
        return out;
    }

    std::vector<std::string> config_keys()
    {
        return {"scenarios",   "num_antennas", "spacing_ratio",     "num_rf_chains", "angles",
                "powers",      "snr_db",       "noiseless",         "snapshots",     "disambiguation_divisor",
                "pencil_parameter", "sweep_axis", "sweep_grid",     "trials",        "seed",
                "theta_random", "theta_margin_deg", "threads",      "record_timing"};
    }

    void apply_setting(ExperimentConfig &cfg, const std::string &raw_key, const std::string &raw_value)
    {
        const std::string key = normalize_key(trim(raw_key));
        const std::string v = trim(raw_value);
        if (key == "scenarios")
        {
            cfg.scenarios.clear();
            for (const auto &s : split_list(key, v))
                cfg.scenarios.push_back(parse_scenario(s));
        }
        else if (key == "num_antennas")
            cfg.num_antennas = to_integer(key, v);
        else if (key == "spacing_ratio")
            cfg.spacing_ratio = to_double(key, v);
        else if (key == "num_rf_chains")
            cfg.num_rf_chains = to_integer(key, v);
        else if (key == "angles")
            cfg.angles = to_doubles(key, v);
        else if (key == "powers")
            cfg.powers = v.empty() ? std::vector<double>{} : to_doubles(key, v);
        else if (key == "snr_db")
            cfg.snr_db = to_double(key, v);
        else if (key == "noiseless")
            cfg.noiseless = to_bool(key, v);
        else if (key == "snapshots")
            cfg.snapshots = to_integer(key, v);
        else if (key == "disambiguation_divisor")
            cfg.disambiguation_divisor = to_integer(key, v);
        else if (key == "pencil_parameter")
            cfg.pencil_parameter = to_integer(key, v);
        else if (key == "sweep_axis")
            cfg.sweep_axis = parse_sweep_axis(v);
        else if (key == "sweep_grid")
            cfg.sweep_grid = to_doubles(key, v);
        else if (key == "trials")
            cfg.trials = to_integer(key, v);
        else if (key == "seed")
        {
            const long long s = to_integer(key, v);
            if (s < 0)
                throw ConfigError("seed: must be non-negative");
            cfg.seed = static_cast<std::uint64_t>(s);
        }
        else if (key == "theta_random")
            cfg.theta_random = to_bool(key, v);
        else if (key == "theta_margin_deg")
            cfg.theta_margin_deg = to_double(key, v);
        else if (key == "threads")
        {
            const long long t = to_integer(key, v);
            if (t < 0)
                throw ConfigError("threads: must be non-negative");
            cfg.threads = static_cast<unsigned>(t);
        }
        else if (key == "record_timing")
            cfg.record_timing = to_bool(key, v);
        else
            throw ConfigError("unknown key '" + key + "'");
    }

    ExperimentConfig load_config(const std::string &path, ExperimentConfig base)
    {
        std::ifstream is(path);
        if (!is)
            throw ConfigError("cannot open config '" + path + "': " + std::strerror(errno));
        for (const auto &[k, v] : parse_key_values(is, path))
            apply_setting(base, k, v);
        return base;
    }

    std::string to_config_text(const ExperimentConfig &c)
    {
        std::ostringstream os;
        os << "scenarios = " << join(c.scenarios) << '\n'
           << "num_antennas = " << c.num_antennas << '\n'
           << "spacing_ratio = " << format_fixed(c.spacing_ratio) << '\n'
           << "num_rf_chains = " << c.num_rf_chains << '\n'
           << "angles = " << join(c.angles) << '\n'
           << "powers = " << join(c.powers) << '\n'
           << "snr_db = " << format_fixed(c.snr_db) << '\n'
           << "noiseless = " << (c.noiseless ? "true" : "false") << '\n'
           << "snapshots = " << c.snapshots << '\n'
           << "disambiguation_divisor = " << c.disambiguation_divisor << '\n'
           << "pencil_parameter = " << c.pencil_parameter << '\n'
           << "sweep_axis = " << to_string(c.sweep_axis) << '\n'
           << "sweep_grid = " << join(c.sweep_grid) << '\n'
           << "trials = " << c.trials << '\n'
           << "seed = " << c.seed << '\n'
           << "theta_random = " << (c.theta_random ? "true" : "false") << '\n'
           << "theta_margin_deg = " << format_fixed(c.theta_margin_deg) << '\n'
           << "threads = " << c.threads << '\n'
           << "record_timing = " << (c.record_timing ? "true" : "false") << '\n';
        return os.str();
    }

} // namespace pencil_doa
