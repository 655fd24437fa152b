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

#include <algorithm>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "pencil_doa/config_file.hpp"
#include "pencil_doa/harness.hpp"

using namespace pencil_doa;

namespace
{
    struct Overrides
    {
        std::map<std::string, std::string> values;
        bool no_timing = false;
        std::string out;
        bool print_config = false;
    };

    std::string kebab(std::string s)
    {
        std::replace(s.begin(), s.end(), '_', '-');
        return s;
    }

    void add_overrides(CLI::App *cmd, Overrides &ov)
    {
        for (const auto &key : config_keys())
            cmd->add_option("--" + kebab(key), ov.values[key], "override '" + key + "'");
        cmd->add_flag("--no-timing", ov.no_timing, "write wall_ms = 0 so repeated runs are byte-identical");
        cmd->add_option("--out,-o", ov.out, "CSV output path (default: stdout)");
        cmd->add_flag("--print-config", ov.print_config, "print the effective configuration and exit");
    }

    void apply_overrides(ExperimentConfig &cfg, const CLI::App *cmd, const Overrides &ov)
    {
        for (const auto &[key, value] : ov.values)
            if (cmd->count("--" + kebab(key)) > 0)
                apply_setting(cfg, key, value);
        if (ov.no_timing)
            cfg.record_timing = false;
    }

    int execute(const ExperimentConfig &cfg, const Overrides &ov)
    {
        if (ov.print_config)
        {
            std::cout << to_config_text(cfg);
            return 0;
        }
        const auto records = run_experiment(cfg);
        if (ov.out.empty() || ov.out == "-")
            write_csv(records, std::cout);
        else
            emit_csv(records, ov.out);
        return 0;
    }
} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Matrix-pencil DoA Monte-Carlo simulator"};
    app.require_subcommand(1);

    Overrides run_ov, preset_ov, crlb_ov;
    std::string run_config, crlb_config, preset_name;

    auto *run = app.add_subcommand("run", "run an experiment from a config file and/or flags");
    run->add_option("--config,-c", run_config, "key = value config file");
    add_overrides(run, run_ov);

    auto *pre = app.add_subcommand("preset", "run a built-in experiment");
    pre->add_option("name", preset_name, "preset name (see list-presets)")->required();
    add_overrides(pre, preset_ov);

    auto *crlb = app.add_subcommand("crlb", "evaluate only the CRLB scenarios of a config");
    crlb->add_option("--config,-c", crlb_config, "key = value config file");
    add_overrides(crlb, crlb_ov);

    auto *list = app.add_subcommand("list-presets", "list built-in experiments");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*list)
        {
            for (const auto &name : preset_names())
            {
                const auto c = preset(name);
                std::cout << name << ": M=" << c.num_antennas << " L=" << c.num_rf_chains
                          << " snapshots=" << c.snapshots << " sweep=" << to_string(c.sweep_axis) << '\n';
            }
            return 0;
        }
        if (*run)
        {
            ExperimentConfig cfg = run_config.empty() ? ExperimentConfig{} : load_config(run_config);
            apply_overrides(cfg, run, run_ov);
            return execute(cfg, run_ov);
        }
        if (*pre)
        {
            ExperimentConfig cfg = preset(preset_name);
            apply_overrides(cfg, pre, preset_ov);
            return execute(cfg, preset_ov);
        }
        if (*crlb)
        {
            ExperimentConfig cfg = crlb_config.empty() ? ExperimentConfig{} : load_config(crlb_config);
            apply_overrides(cfg, crlb, crlb_ov);
            std::erase_if(cfg.scenarios, [](Scenario s) { return s != Scenario::crlb_fd && s != Scenario::crlb_spc; });
            if (cfg.scenarios.empty())
                cfg.scenarios = {Scenario::crlb_fd, Scenario::crlb_spc};
            return execute(cfg, crlb_ov);
        }
    }
    catch (const Error &e)
    {
        std::cerr << "error (" << e.kind() << "): " << e.what() << '\n';
        return 2;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
